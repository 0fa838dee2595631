#include <doctest.h>

#include "generators.hpp"
#include "kolchin/simd/undominated_count.hpp"

using namespace kolchin;

namespace {

std::vector<std::uint32_t> flatten(const ExponentSet& e)
{
    std::vector<std::uint32_t> out;
    for (const auto& g : e.generators())
        out.insert(out.end(), g.entries().begin(), g.entries().end());
    return out;
}

} // namespace

TEST_CASE("isa list")
{
    const auto isas = simd::available_isas();
    REQUIRE(!isas.empty());
    CHECK(isas.front() == simd::Isa::Scalar);
    CHECK(simd::name(simd::Isa::Scalar) == "scalar");
    MESSAGE("best kernel: " << simd::name(simd::best_isa()));
}

TEST_CASE("every kernel agrees with the scalar reference")
{
    testing::Rng rng(31);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t m = testing::uniform(rng, 1, 5);
        const ExponentSet e = testing::random_exponent_set(rng, m, 8, 12, trial % 17 == 0);
        const auto gens = flatten(e);
        const std::uint32_t s = static_cast<std::uint32_t>(testing::uniform(rng, 0, m <= 2 ? 40 : 14));
        const std::uint64_t reference = simd::count_undominated_scalar(gens, m, s);
        for (const auto isa : simd::available_isas())
            CHECK(simd::count_undominated(isa, gens, m, s) == reference);
    }
}

TEST_CASE("kernels on edge shapes")
{
    // no generators, long last coordinate runs, generators beyond s
    const std::vector<std::uint32_t> none;
    const std::vector<std::uint32_t> far{100, 100};
    const std::vector<std::uint32_t> last_axis{0, 5};
    for (const auto isa : simd::available_isas()) {
        CHECK(simd::count_undominated(isa, none, 1, 0) == 1);
        CHECK(simd::count_undominated(isa, none, 1, 37) == 38);
        CHECK(simd::count_undominated(isa, none, 2, 20) == 231);
        CHECK(simd::count_undominated(isa, far, 2, 20) == 231);
        CHECK(simd::count_undominated(isa, last_axis, 2, 20) == 5 * 21 - 10);
    }
}
