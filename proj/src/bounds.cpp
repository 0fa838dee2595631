#include "kolchin/bounds.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "kolchin/errors.hpp"
#include "kolchin/numpoly.hpp"

namespace kolchin {

namespace {

std::string ack_label(std::uint64_t i, const mpz_class& x)
{
    const std::string xs = mpz_sizeinbase(x.get_mpz_t(), 10) > 40 ? "<" + std::to_string(mpz_sizeinbase(x.get_mpz_t(), 10)) + "-digit value>" : x.get_str();
    return "A(" + std::to_string(i) + ", " + xs + ")";
}

void check_digits(const mpz_class& v, const Limits& limits, const std::string& what)
{
    if (mpz_sizeinbase(v.get_mpz_t(), 10) > limits.bound_digits_cap)
        throw ResourceLimit(what + " exceeds " + std::to_string(limits.bound_digits_cap) + " decimal digits");
}

// Rows of the Ackermann-Peter function with elementary closed forms.
mpz_class ackermann_row(std::uint64_t i, const mpz_class& x, const Limits& limits)
{
    switch (i) {
    case 0:
        return x + 1;
    case 1:
        return x + 2;
    case 2:
        return 2 * x + 3;
    default: {
        // A(3, x) = 2^(x+3) - 3
        const mpz_class e = x + 3;
        const double digits = e.get_d() * std::log10(2.0);
        if (!(digits <= static_cast<double>(limits.bound_digits_cap)))
            throw ResourceLimit(ack_label(3, x) + " = 2^(" + e.get_str() + ") - 3 exceeds "
                                + std::to_string(limits.bound_digits_cap) + " decimal digits");
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, e.get_ui());
        return p - 3;
    }
    }
}

template <typename Row>
mpz_class run_machine(std::uint64_t i, const mpz_class& x0, std::uint64_t step_cap, Row&& closed_row,
                      std::uint64_t shortcut_rows, const Limits* limits)
{
    if (x0 < 0)
        throw DomainError("Ackermann argument must be >= 0");
    // Pending outer rows; x is the value flowing between frames.
    std::vector<std::uint64_t> stack{i};
    mpz_class x = x0;
    std::uint64_t steps = 0;
    while (!stack.empty()) {
        if (++steps > step_cap)
            throw ResourceLimit(ack_label(i, x0) + " needs more than " + std::to_string(step_cap) + " evaluation steps");
        const std::uint64_t row = stack.back();
        stack.pop_back();
        if (row < shortcut_rows) {
            x = closed_row(row, x);
        } else if (row == 0) {
            x += 1;
        } else if (x == 0) {
            stack.push_back(row - 1);
            x = 1;
        } else {
            stack.push_back(row - 1);
            stack.push_back(row);
            x -= 1;
        }
        if (limits)
            check_digits(x, *limits, "intermediate value of " + ack_label(i, x0));
    }
    return x;
}

} // namespace

mpz_class ackermann(std::uint64_t i, const mpz_class& x, const Limits& limits)
{
    return run_machine(
        i, x, limits.recursion_step_cap,
        [&](std::uint64_t row, const mpz_class& v) { return ackermann_row(row, v, limits); }, 4, &limits);
}

mpz_class ackermann_unshortcut(std::uint64_t i, const mpz_class& x, std::uint64_t step_cap)
{
    return run_machine(
        i, x, step_cap, [](std::uint64_t, const mpz_class& v) { return v; }, 0, nullptr);
}

namespace {

void check_ambient(std::uint64_t m, std::uint64_t n)
{
    if (m < 1)
        throw DomainError("bounds need m >= 1 (number of derivations)");
    if (n < 1)
        throw DomainError("bounds need n >= 1 (number of unknowns)");
}

mpz_class single_unknown_bound(const mpz_class& r, std::uint64_t m, const Limits& limits)
{
    if (r > static_cast<unsigned long>(limits.recursion_step_cap))
        throw ResourceLimit("C^1_{r," + std::to_string(m) + "} with r = "
                            + (mpz_sizeinbase(r.get_mpz_t(), 10) > 40
                                   ? "<" + std::to_string(mpz_sizeinbase(r.get_mpz_t(), 10)) + "-digit value>"
                                   : r.get_str())
                            + " needs more than " + std::to_string(limits.recursion_step_cap) + " recursion steps");
    mpz_class c = 0;
    const unsigned long steps = r.get_ui();
    for (unsigned long k = 0; k < steps; ++k)
        c = ackermann(m - 1, c, limits);
    return c;
}

} // namespace

mpz_class characteristic_order_bound(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits)
{
    check_ambient(m, n);
    mpz_class c = static_cast<unsigned long>(r);
    for (std::uint64_t k = 0; k < n; ++k)
        c = single_unknown_bound(c, m, limits);
    return c;
}

mpz_class leader_weight_bound(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits)
{
    const mpz_class c = characteristic_order_bound(r, m, n, limits);
    const double est = static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 10)) * static_cast<double>(m);
    if (est > static_cast<double>(limits.bound_digits_cap))
        throw ResourceLimit("D = C*binom(C+m-1, C) with C of " + std::to_string(mpz_sizeinbase(c.get_mpz_t(), 10))
                            + " digits and m = " + std::to_string(m) + " exceeds the digit cap");
    // binom(C+m-1, C) = binom(C+m-1, m-1)
    const mpz_class d = c * binomial(c + (m - 1), m - 1);
    check_digits(d, limits, "D = C*binom(C+m-1, C)");
    return d;
}

mpz_class s0(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits)
{
    const mpz_class value = leader_weight_bound(r, m, n, limits) * m - m;
    return value < 0 ? mpz_class(0) : value;
}

BoundReport s1(std::uint64_t r, std::uint64_t m, std::uint64_t n, const Limits& limits)
{
    BoundReport rep;
    rep.C = characteristic_order_bound(r, m, n, limits);
    rep.D = leader_weight_bound(r, m, n, limits);
    {
        const mpz_class v = rep.D * m - m;
        rep.s0 = v < 0 ? mpz_class(0) : v;
    }

    const double d_digits = static_cast<double>(mpz_sizeinbase(rep.D.get_mpz_t(), 10));
    const double md = static_cast<double>(m);
    const double est = d_digits * md + md * std::log10(md + 1.0) + (md + 1.0) * std::log10(2.0)
                       + static_cast<double>(mpz_sizeinbase(mpz_class(static_cast<unsigned long>(n)).get_mpz_t(), 10));
    if (est > static_cast<double>(limits.bound_digits_cap))
        throw ResourceLimit("s1 = n*2^(m+1)*m!*D^m + 1 would have about " + std::to_string(static_cast<long long>(est))
                            + " digits, above the cap of " + std::to_string(limits.bound_digits_cap));

    mpz_class d_pow;
    mpz_pow_ui(d_pow.get_mpz_t(), rep.D.get_mpz_t(), m);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), m);
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, m + 1);

    rep.coeff_bound = d_pow * static_cast<unsigned long>(n);
    rep.s1 = rep.coeff_bound * two_pow * fact + 1;
    return rep;
}

} // namespace kolchin
