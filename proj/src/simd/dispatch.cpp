#include <stdexcept>
#include <vector>

#include "kolchin/simd/undominated_count.hpp"

namespace kolchin::simd {

#if !defined(KOLCHIN_HAVE_AVX2)
std::uint64_t count_undominated_avx2(std::span<const std::uint32_t>, std::size_t, std::uint32_t)
{
    throw std::logic_error("AVX2 kernel not compiled into this build");
}
#endif

namespace {

bool cpu_has_avx2()
{
#if defined(KOLCHIN_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::vector<Isa> detect()
{
    std::vector<Isa> out{Isa::Scalar};
    if (cpu_has_avx2())
        out.push_back(Isa::Avx2);
    return out;
}

} // namespace

std::string_view name(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

std::span<const Isa> available_isas()
{
    static const std::vector<Isa> isas = detect();
    return isas;
}

Isa best_isa()
{
    return available_isas().back();
}

std::uint64_t count_undominated(Isa isa, std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s)
{
    switch (isa) {
    case Isa::Avx2:
        return count_undominated_avx2(gens, m, s);
    case Isa::Scalar:
        break;
    }
    return count_undominated_scalar(gens, m, s);
}

std::uint64_t count_undominated(std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s)
{
    static const Isa isa = best_isa();
    return count_undominated(isa, gens, m, s);
}

} // namespace kolchin::simd
