#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Brute-force lattice counting kernels behind ExponentSet volumes.
//
// count_undominated(gens, m, s) counts the points xi of N^m with
// ord(xi) <= s such that no generator g satisfies g <= xi componentwise.
// `gens` is row-major: generator k occupies gens[k*m .. k*m+m).
//
// Every variant enumerates the same points; the vector variants only batch
// the domination test across consecutive values of the last coordinate.

namespace kolchin::simd {

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa);

/// Variants usable on this machine, Scalar first.
std::span<const Isa> available_isas();
/// The widest available variant.
Isa best_isa();

std::uint64_t count_undominated_scalar(std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s);
std::uint64_t count_undominated_avx2(std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s);

std::uint64_t count_undominated(Isa isa, std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s);
/// Dispatches to best_isa().
std::uint64_t count_undominated(std::span<const std::uint32_t> gens, std::size_t m, std::uint32_t s);

} // namespace kolchin::simd
