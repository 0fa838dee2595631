#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kolchin/diffrank.hpp"
#include "kolchin/limits.hpp"
#include "kolchin/numpoly.hpp"

namespace kolchin {

struct Term {
    mpq_class coeff;
    DifferentialMonomial mono;
};

/// sum coeff * delta^xi x_i = 0, terms kept highest-ranked first.
struct LinearEquation {
    std::vector<Term> terms;

    /// Order of the leading term; 0 for an empty equation.
    std::uint64_t order() const;
    const DifferentialMonomial& lead() const { return terms.front().mono; }
};

/// Homogeneous linear system with constant rational coefficients in n
/// unknowns and m commuting derivations.
class LinearDiffSystem {
public:
    LinearDiffSystem(std::size_t m, std::size_t n);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    const std::vector<LinearEquation>& equations() const noexcept { return equations_; }

    /// Validates the terms, sorts them by rank and drops zero coefficients.
    /// Throws on ambient mismatch or repeated monomials. An equation whose
    /// terms all vanish is dropped.
    void add_equation(std::vector<Term> terms);

    /// Largest equation order, 0 without equations.
    std::uint64_t order() const;

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<LinearEquation> equations_;
};

/// Line format:
///   m = <nat>
///   n = <nat>
///   eq: <term> (+|- <term>)*
/// term := [<p>[/<q>]*]d[u1,...,um]x<i>  |  [<p>[/<q>]*]x<i>
LinearDiffSystem parse_system(const std::string& text);
std::string format_system(const LinearDiffSystem& sys);

/// Reduced Groebner basis of the generated submodule of K[d_1..d_m]^n under
/// the canonical orderly ranking, plus for every element the largest order
/// of a prolonged input equation used to build it.
struct GroebnerBasis {
    LinearDiffSystem basis;
    std::vector<std::uint64_t> certificate_orders;
};

GroebnerBasis module_groebner_certified(const LinearDiffSystem& sys);
LinearDiffSystem module_groebner(const LinearDiffSystem& sys);

/// E_i = minimal exponents of the leaders on x_i. Expects a reduced basis.
LeaderProfile leader_profile(const LinearDiffSystem& gb);

/// Groebner basis -> leaders -> sum of omega_{E_i}.
NumericalPolynomial kolchin_polynomial(const LinearDiffSystem& sys);

/// Prolongation margin after which projections of the prolonged system are
/// exact: the larger of the basis order and the extra order any basis
/// element needed beyond its own order.
std::uint64_t completion_margin(const GroebnerBasis& gb);

/// Coefficient matrix of every delta^theta(eq) of order <= level + margin,
/// columns sorted highest rank first so all columns of order > level come
/// before those of order <= level.
struct ProlongationMatrix {
    std::uint64_t level = 0;
    std::uint64_t margin = 0;
    std::vector<DifferentialMonomial> columns;
    /// Sparse rows: (column index, coefficient), column indices ascending.
    std::vector<std::vector<std::pair<std::size_t, mpq_class>>> rows;
    /// Index of the first column of order <= level.
    std::size_t low_begin = 0;
};

ProlongationMatrix build_prolongation_matrix(const LinearDiffSystem& sys, std::uint64_t level, std::uint64_t margin,
                                             const Limits& limits = {});

/// Number of pivots that land in columns of order <= level after
/// fraction-free elimination with highest-ranked pivot columns.
std::size_t low_pivot_count(const ProlongationMatrix& mat);

/// Dimension of the projection onto order-<=s coordinates of the solution
/// space of the (s+margin)-prolonged system.
std::uint64_t prolongation_dimension(const LinearDiffSystem& sys, std::uint64_t s, std::uint64_t margin,
                                     const Limits& limits = {});

struct ProlongationReport {
    std::uint64_t margin = 0;
    /// First s with margin and margin+1 agreeing on s..s+m.
    std::uint64_t stable_from = 0;
    /// First sample point: max(stable_from, stability bound of the leader profile).
    std::uint64_t sample_start = 0;
    std::vector<mpz_class> values;
    NumericalPolynomial polynomial;
};

ProlongationReport kolchin_via_prolongation_report(const LinearDiffSystem& sys, const Limits& limits = {});
NumericalPolynomial kolchin_via_prolongation(const LinearDiffSystem& sys, const Limits& limits = {});

/// omega >= p (resp. omega == p) under eventual domination.
bool omega_at_least(const LinearDiffSystem& sys, const NumericalPolynomial& p);
bool omega_equals(const LinearDiffSystem& sys, const NumericalPolynomial& p);

/// Every exponent vector of N^m with order <= max_order, lowest order first.
std::vector<ExponentVector> exponents_up_to(std::size_t m, std::uint64_t max_order);

} // namespace kolchin
