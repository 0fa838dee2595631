#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kolchin/limits.hpp"
#include "kolchin/numpoly.hpp"

namespace kolchin {

/// A point of N^m.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {}
    ExponentVector(std::initializer_list<std::uint32_t> entries) : entries_(entries) {}
    static ExponentVector zero(std::size_t m) { return ExponentVector(std::vector<std::uint32_t>(m, 0)); }

    std::size_t dim() const noexcept { return entries_.size(); }
    std::uint64_t order() const noexcept;
    const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }
    std::uint32_t operator[](std::size_t k) const { return entries_[k]; }
    std::uint32_t& operator[](std::size_t k) { return entries_[k]; }

    /// Product order: every entry of *this is <= the matching entry of other.
    bool divides(const ExponentVector& other) const;
    /// Componentwise max.
    ExponentVector join(const ExponentVector& other) const;
    ExponentVector operator+(const ExponentVector& other) const;
    bool is_zero() const;

    friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<std::uint32_t> entries_;
};

std::string to_string(const ExponentVector& v);

/// Upward closure in N^m of a finite list of generators.
class ExponentSet {
public:
    explicit ExponentSet(std::size_t m) : m_{m} {}
    ExponentSet(std::size_t m, std::vector<ExponentVector> generators);

    std::size_t m() const noexcept { return m_; }
    const std::vector<ExponentVector>& generators() const noexcept { return generators_; }
    void add(ExponentVector v);
    bool contains(const ExponentVector& v) const;

    friend bool operator==(const ExponentSet&, const ExponentSet&) = default;

private:
    std::size_t m_;
    std::vector<ExponentVector> generators_;
};

/// The minimal generators, sorted ascending; idempotent.
ExponentSet minimal_elements(const ExponentSet& e);

/// |V_E(s)| by visiting every point of order <= s. Throws ResourceLimit when
/// binom(s+m, m) exceeds limits.enumeration_cap.
std::uint64_t volume(const ExponentSet& e, std::uint64_t s, const Limits& limits = {});
/// Scalar-only variant of volume, used as the reference for the vector kernels.
std::uint64_t volume_scalar(const ExponentSet& e, std::uint64_t s, const Limits& limits = {});

/// |V_E(s)| by inclusion-exclusion over joins of subsets of the minimal elements.
mpz_class volume_ie(const ExponentSet& e, const mpz_class& s, const Limits& limits = {});

/// omega_E with degree bound m.
NumericalPolynomial dimension_polynomial(const ExponentSet& e);

/// max(0, m*(D-1)) with D the total order of the minimal elements.
std::uint64_t stability_bound(const ExponentSet& e);

/// One generator per line ("0,2"); blank lines and '#' comments ignored.
/// When expected_m is nonzero every line must have that width, and it is
/// also the m of an empty file.
ExponentSet parse_exponent_set(const std::string& text, std::size_t expected_m = 0);
std::string format_exponent_set(const ExponentSet& e);

} // namespace kolchin
