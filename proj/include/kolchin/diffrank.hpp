#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kolchin/expsets.hpp"
#include "kolchin/numpoly.hpp"

namespace kolchin {

/// delta^xi x_var, with var counted from 1.
struct DifferentialMonomial {
    ExponentVector xi;
    std::size_t var = 1;

    std::uint64_t order() const noexcept { return xi.order(); }
    friend bool operator==(const DifferentialMonomial&, const DifferentialMonomial&) = default;
};

/// (ord xi, var, u_1, ..., u_m), compared left-lexicographically.
struct RankKey {
    std::uint64_t order;
    std::size_t var;
    std::vector<std::uint32_t> exponents;

    friend auto operator<=>(const RankKey&, const RankKey&) = default;
};

RankKey rank_key(const DifferentialMonomial& a);

/// Canonical orderly ranking. Throws AmbientMismatch when the two monomials
/// have different numbers of derivations.
std::strong_ordering compare_rank(const DifferentialMonomial& a, const DifferentialMonomial& b);

/// Strict-weak "ranks lower" predicate for ordered containers; no ambient check.
struct RankLess {
    bool operator()(const DifferentialMonomial& a, const DifferentialMonomial& b) const;
};
/// Highest-ranked first.
struct RankGreater {
    bool operator()(const DifferentialMonomial& a, const DifferentialMonomial& b) const { return RankLess{}(b, a); }
};

/// Highest-ranked monomial; EmptySupport for an empty support.
DifferentialMonomial leader(std::span<const DifferentialMonomial> monomials);

/// delta^theta applied to a.
DifferentialMonomial prolong(const DifferentialMonomial& a, const ExponentVector& theta);

/// Checks that a fits the ambient (m derivations, n unknowns).
void check_ambient(const DifferentialMonomial& a, std::size_t m, std::size_t n);

/// Term syntax "d[u1,...,um]x<i>" or "x<i>" for the zero operator.
DifferentialMonomial parse_monomial(const std::string& text, std::size_t m);
std::string to_string(const DifferentialMonomial& a);

/// One exponent set per unknown, all in N^m.
class LeaderProfile {
public:
    LeaderProfile(std::size_t m, std::size_t n);

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return sets_.size(); }
    /// var counted from 1.
    const ExponentSet& set(std::size_t var) const { return sets_.at(var - 1); }
    const std::vector<ExponentSet>& sets() const noexcept { return sets_; }

    void add(std::size_t var, ExponentVector xi);
    /// Reduces every set to its antichain of minimal elements.
    void canonicalize();

    friend bool operator==(const LeaderProfile&, const LeaderProfile&) = default;

private:
    std::size_t m_;
    std::vector<ExponentSet> sets_;
};

/// sum_i omega_{E_i}.
NumericalPolynomial kolchin_from_leaders(const LeaderProfile& profile);

/// Largest order of a minimal generator; 0 when every set is empty.
std::uint64_t profile_order(const LeaderProfile& profile);

/// Largest stability_bound over the sets of the profile.
std::uint64_t profile_stability_bound(const LeaderProfile& profile);

/// sum_i |V_{E_i}(s)| by inclusion-exclusion.
mpz_class profile_volume(const LeaderProfile& profile, const mpz_class& s, const Limits& limits = {});

/// Lines "i: u1,...,um". When n is zero it is taken as the largest index seen.
LeaderProfile parse_leader_profile(const std::string& text, std::size_t m, std::size_t n = 0);
std::string format_leader_profile(const LeaderProfile& profile);

} // namespace kolchin
