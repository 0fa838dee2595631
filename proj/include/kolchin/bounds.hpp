#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "kolchin/limits.hpp"

namespace kolchin {

struct BoundInputs {
    std::uint64_t r = 0;
    std::uint64_t m = 1;
    std::uint64_t n = 1;
    /// Degree of the system; reported only.
    std::uint64_t d = 0;
};

struct BoundReport {
    mpz_class C;
    mpz_class D;
    mpz_class s0;
    mpz_class s1;
    /// n * D^m, the bound on the standard coefficients.
    mpz_class coeff_bound;
};

/// Ackermann-Peter function: A(0,x)=x+1, A(i+1,0)=A(i,1), A(i+1,x+1)=A(i,A(i+1,x)).
/// Evaluated with an explicit stack; rows 0..3 use their closed forms. Throws
/// ResourceLimit once an intermediate value would exceed limits.bound_digits_cap digits.
mpz_class ackermann(std::uint64_t i, const mpz_class& x, const Limits& limits = {});

/// Same recursion without the row shortcuts; only practical for tiny inputs.
mpz_class ackermann_unshortcut(std::uint64_t i, const mpz_class& x, std::uint64_t step_cap = 50'000'000);

/// Order bound for characteristic sets: C^1_{0,m}=0, C^1_{r,m}=A(m-1, C^1_{r-1,m}),
/// C^n_{r,m}=C^1_{C^{n-1}_{r,m}, m}.
mpz_class characteristic_order_bound(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits = {});

/// D = C * binom(C+m-1, C).
mpz_class leader_weight_bound(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits = {});

/// Regularity bound max(0, m*C*binom(C+m-1, C) - m).
mpz_class s0(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits = {});

/// D, C, s0, the domination bound s1 = n*2^(m+1)*m!*D^m + 1 and n*D^m.
BoundReport s1(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits = {});

inline BoundReport bounds(const BoundInputs& in, const Limits& limits = {}) { return s1(in.r, in.m, in.n, limits); }

} // namespace kolchin
