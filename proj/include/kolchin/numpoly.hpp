#pragma once

#include <cstddef>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kolchin {

/// A numerical polynomial p(t) = sum_i a_i * binom(t+i, i), stored by its
/// standard coefficients (a_m, ..., a_0). The degree bound m may exceed the
/// true degree; equality and ordering ignore leading zeros.
class NumericalPolynomial {
public:
    /// The zero polynomial with degree bound m.
    explicit NumericalPolynomial(std::size_t m = 0);
    /// Coefficients listed from a_m down to a_0; must be non-empty.
    explicit NumericalPolynomial(std::vector<mpz_class> standard_coeffs);

    static NumericalPolynomial from_ints(std::initializer_list<long> standard_coeffs);
    /// binom(t+m, m) scaled by `scale`.
    static NumericalPolynomial binomial_basis(std::size_t m, const mpz_class& scale = 1);

    std::size_t degree_bound() const noexcept { return coeffs_.size() - 1; }
    /// Descending: [0] is a_m.
    const std::vector<mpz_class>& standard_coeffs() const noexcept { return coeffs_; }
    /// a_i, zero past the degree bound.
    mpz_class coeff(std::size_t i) const;

    bool is_zero() const;
    NumericalPolynomial padded(std::size_t m) const;

    friend bool operator==(const NumericalPolynomial& a, const NumericalPolynomial& b);

private:
    std::vector<mpz_class> coeffs_;
};

/// sum_j b_j t^j, coefficients listed from b_m down to b_0.
struct MonomialForm {
    std::vector<mpq_class> coeffs;
    friend bool operator==(const MonomialForm&, const MonomialForm&) = default;
};

mpz_class evaluate(const NumericalPolynomial& p, const mpz_class& s);
inline mpz_class evaluate(const NumericalPolynomial& p, long s) { return evaluate(p, mpz_class(s)); }

NumericalPolynomial add(const NumericalPolynomial& p, const NumericalPolynomial& q);
NumericalPolynomial subtract(const NumericalPolynomial& p, const NumericalPolynomial& q);
/// p(t - k).
NumericalPolynomial shift(const NumericalPolynomial& p, std::size_t k);

/// Eventual domination, which is the lexicographic order on standard
/// coefficients after padding to a common degree bound.
std::strong_ordering compare_eventual(const NumericalPolynomial& p, const NumericalPolynomial& q);

/// Recovers p of degree <= m from p(start), p(start+1), ... . At least m+1
/// values are needed; any further values must agree with the interpolant.
NumericalPolynomial interpolate(std::span<const mpz_class> values, std::size_t start, std::size_t m);

MonomialForm to_monomial_form(const NumericalPolynomial& p);
/// Inverse of to_monomial_form; throws InputNotNumericalPolynomial when the
/// polynomial is not integer valued.
NumericalPolynomial from_monomial_form(const MonomialForm& f);

/// Index of the leading nonzero standard coefficient; 0 for the zero polynomial.
std::size_t differential_type(const NumericalPolynomial& p);

/// Human rendering in powers of t, e.g. "2*t + 1" or "1/2*t^2 + 3/2*t + 1".
std::string render(const NumericalPolynomial& p);

/// {"m": m, "standard_coeffs": ["a_m", ..., "a_0"]}
std::string to_json(const NumericalPolynomial& p);
/// Accepts the JSON form above (extra keys ignored; coefficients may be
/// strings or integers) or a bare comma-separated list "a_m,...,a_0".
NumericalPolynomial parse_numerical_polynomial(const std::string& text);

mpz_class binomial(const mpz_class& top, unsigned long k);

} // namespace kolchin
