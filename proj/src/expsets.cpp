#include "kolchin/expsets.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "kolchin/errors.hpp"
#include "kolchin/simd/undominated_count.hpp"

namespace kolchin {

std::uint64_t ExponentVector::order() const noexcept
{
    return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

bool ExponentVector::divides(const ExponentVector& other) const
{
    if (dim() != other.dim())
        return false;
    for (std::size_t k = 0; k < dim(); ++k)
        if (entries_[k] > other.entries_[k])
            return false;
    return true;
}

ExponentVector ExponentVector::join(const ExponentVector& other) const
{
    ExponentVector out = *this;
    for (std::size_t k = 0; k < dim(); ++k)
        out.entries_[k] = std::max(out.entries_[k], other.entries_[k]);
    return out;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const
{
    ExponentVector out = *this;
    for (std::size_t k = 0; k < dim(); ++k)
        out.entries_[k] += other.entries_[k];
    return out;
}

bool ExponentVector::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](std::uint32_t u) { return u == 0; });
}

std::string to_string(const ExponentVector& v)
{
    std::string out = "(";
    for (std::size_t k = 0; k < v.dim(); ++k) {
        if (k)
            out += ",";
        out += std::to_string(v[k]);
    }
    return out + ")";
}

ExponentSet::ExponentSet(std::size_t m, std::vector<ExponentVector> generators) : m_{m}
{
    for (auto& g : generators)
        add(std::move(g));
}

void ExponentSet::add(ExponentVector v)
{
    if (v.dim() != m_)
        throw AmbientMismatch("exponent vector " + to_string(v) + " does not live in N^" + std::to_string(m_));
    generators_.push_back(std::move(v));
}

bool ExponentSet::contains(const ExponentVector& v) const
{
    return std::any_of(generators_.begin(), generators_.end(), [&](const ExponentVector& g) { return g.divides(v); });
}

ExponentSet minimal_elements(const ExponentSet& e)
{
    std::vector<ExponentVector> gens = e.generators();
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    // A divisor of g is lexicographically <= g, so scanning in sorted order
    // only needs to test against already-kept elements.
    std::vector<ExponentVector> kept;
    for (auto& g : gens) {
        const bool covered = std::any_of(kept.begin(), kept.end(), [&](const ExponentVector& k) { return k.divides(g); });
        if (!covered)
            kept.push_back(std::move(g));
    }
    ExponentSet out(e.m());
    for (auto& g : kept)
        out.add(std::move(g));
    return out;
}

namespace {

std::vector<std::uint32_t> flatten(const ExponentSet& minimal)
{
    std::vector<std::uint32_t> flat;
    flat.reserve(minimal.generators().size() * minimal.m());
    for (const auto& g : minimal.generators())
        flat.insert(flat.end(), g.entries().begin(), g.entries().end());
    return flat;
}

std::uint32_t checked_level(const ExponentSet& e, std::uint64_t s, const Limits& limits)
{
    const mpz_class candidates = binomial(mpz_class(static_cast<unsigned long>(s + e.m())), e.m());
    if (candidates > static_cast<unsigned long>(limits.enumeration_cap))
        throw ResourceLimit("volume enumeration at s=" + std::to_string(s) + ", m=" + std::to_string(e.m())
                            + " visits binom(s+m,m) = " + candidates.get_str() + " points, above the cap of "
                            + std::to_string(limits.enumeration_cap));
    return static_cast<std::uint32_t>(s);
}

} // namespace

std::uint64_t volume(const ExponentSet& e, std::uint64_t s, const Limits& limits)
{
    const std::uint32_t level = checked_level(e, s, limits);
    const auto flat = flatten(minimal_elements(e));
    return simd::count_undominated(flat, e.m(), level);
}

std::uint64_t volume_scalar(const ExponentSet& e, std::uint64_t s, const Limits& limits)
{
    const std::uint32_t level = checked_level(e, s, limits);
    const auto flat = flatten(minimal_elements(e));
    return simd::count_undominated_scalar(flat, e.m(), level);
}

namespace {

// Points of order <= s lying above a fixed eta number binom(s - ord(eta) + m, m).
// Subsets of size one are subtracted, so add_next starts false.
void inclusion_exclusion(const std::vector<ExponentVector>& gens, std::size_t next, const ExponentVector& join,
                         bool add_next, const mpz_class& s, std::size_t m, mpz_class& total)
{
    for (std::size_t k = next; k < gens.size(); ++k) {
        const ExponentVector j = join.join(gens[k]);
        const mpz_class ord(static_cast<unsigned long>(j.order()));
        // Joins only grow, so supersets of this subset are out of range too.
        if (ord > s)
            continue;
        const mpz_class term = binomial(s - ord + m, m);
        if (add_next)
            total += term;
        else
            total -= term;
        inclusion_exclusion(gens, k + 1, j, !add_next, s, m, total);
    }
}

} // namespace

mpz_class volume_ie(const ExponentSet& e, const mpz_class& s, const Limits& limits)
{
    if (s < 0)
        throw DomainError("volume: level must be >= 0");
    const ExponentSet minimal = minimal_elements(e);
    if (minimal.generators().size() > limits.inclusion_exclusion_cap)
        throw ResourceLimit("inclusion-exclusion over " + std::to_string(minimal.generators().size())
                            + " minimal generators exceeds the cap of "
                            + std::to_string(limits.inclusion_exclusion_cap));
    mpz_class total = binomial(s + e.m(), e.m());
    inclusion_exclusion(minimal.generators(), 0, ExponentVector::zero(e.m()), false, s, e.m(), total);
    return total;
}

namespace {

using Memo = std::map<std::pair<std::size_t, std::vector<ExponentVector>>, NumericalPolynomial>;

NumericalPolynomial omega_minimal(const ExponentSet& minimal, Memo& memo)
{
    const std::size_t m = minimal.m();
    const auto& gens = minimal.generators();
    if (gens.empty())
        return NumericalPolynomial::binomial_basis(m);
    if (gens.front().is_zero())
        return NumericalPolynomial(m);
    if (m == 1)
        return NumericalPolynomial(std::vector<mpz_class>{0, gens.front()[0]});

    auto key = std::make_pair(m, gens);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;

    // Pivot on the lexicographically smallest minimal element and its last
    // nonzero coordinate j. E1 keeps the generators flat in direction j (with
    // j dropped); E2 is E stepped back once along j.
    const ExponentVector& pivot = gens.front();
    std::size_t j = m;
    while (pivot[--j] == 0) {}

    ExponentSet flat(m - 1);
    ExponentSet stepped(m);
    for (const auto& g : gens) {
        if (g[j] == 0) {
            std::vector<std::uint32_t> dropped;
            dropped.reserve(m - 1);
            for (std::size_t k = 0; k < m; ++k)
                if (k != j)
                    dropped.push_back(g[k]);
            flat.add(ExponentVector(std::move(dropped)));
        }
        ExponentVector back = g;
        if (back[j] > 0)
            --back[j];
        stepped.add(std::move(back));
    }

    NumericalPolynomial result = add(omega_minimal(minimal_elements(flat), memo).padded(m),
                                     shift(omega_minimal(minimal_elements(stepped), memo), 1));
    memo.emplace(std::move(key), result);
    return result;
}

} // namespace

NumericalPolynomial dimension_polynomial(const ExponentSet& e)
{
    if (e.m() == 0)
        throw DomainError("dimension polynomial needs m >= 1");
    Memo memo;
    return omega_minimal(minimal_elements(e), memo);
}

std::uint64_t stability_bound(const ExponentSet& e)
{
    std::uint64_t d = 0;
    const ExponentSet minimal = minimal_elements(e);
    for (const auto& g : minimal.generators())
        d += g.order();
    if (d == 0)
        return 0;
    return e.m() * (d - 1);
}

namespace {

std::uint32_t parse_entry(std::string_view token, std::size_t line, std::size_t column)
{
    const auto begin = token.find_first_not_of(" \t");
    const auto end = token.find_last_not_of(" \t");
    if (begin == std::string_view::npos)
        throw ParseError(line, column, "empty exponent entry");
    const std::string_view digits = token.substr(begin, end - begin + 1);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw ParseError(line, column + begin, "expected a natural number, got '" + std::string(digits) + "'");
    return value;
}

} // namespace

ExponentSet parse_exponent_set(const std::string& text, std::size_t expected_m)
{
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::size_t m = expected_m;
    std::vector<ExponentVector> gens;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string_view::npos)
            continue;
        if (line.back() == '\r')
            line.remove_suffix(1);

        std::vector<std::uint32_t> entries;
        std::size_t pos = 0;
        for (;;) {
            const auto comma = line.find(',', pos);
            const auto token = line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            entries.push_back(parse_entry(token, line_no, pos + 1));
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
        if (m == 0)
            m = entries.size();
        else if (entries.size() != m)
            throw ParseError(line_no, 1, "expected " + std::to_string(m) + " entries, got " + std::to_string(entries.size()));
        gens.emplace_back(std::move(entries));
    }
    if (m == 0)
        throw DomainError("empty exponent set file: pass m explicitly");
    return ExponentSet(m, std::move(gens));
}

std::string format_exponent_set(const ExponentSet& e)
{
    std::string out;
    for (const auto& g : e.generators()) {
        for (std::size_t k = 0; k < g.dim(); ++k) {
            if (k)
                out += ",";
            out += std::to_string(g[k]);
        }
        out += "\n";
    }
    return out;
}

} // namespace kolchin
