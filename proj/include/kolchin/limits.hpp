#pragma once

#include <cstdint>

namespace kolchin {

/// Caps shared by every operation that could blow up.
struct Limits {
    /// Candidate points a brute-force volume count may visit.
    std::uint64_t enumeration_cap = 10'000'000;
    /// rows * columns of a prolongation matrix.
    std::uint64_t matrix_cell_cap = 100'000'000;
    /// Decimal digits any bound value may reach.
    std::uint64_t bound_digits_cap = 100'000;
    /// Explicit-stack steps for the Ackermann machine, and iterations of the
    /// order-bound recursion.
    std::uint64_t recursion_step_cap = 10'000'000;
    /// Largest level probed while looking for a stabilized prolongation window.
    std::uint64_t stabilization_ceiling = 64;
    /// Generators of an antichain the inclusion-exclusion count may expand (2^k terms).
    std::uint64_t inclusion_exclusion_cap = 24;
};

} // namespace kolchin
