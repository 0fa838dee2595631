#include "kolchin/diffrank.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "kolchin/errors.hpp"

namespace kolchin {

RankKey rank_key(const DifferentialMonomial& a)
{
    return RankKey{a.order(), a.var, a.xi.entries()};
}

bool RankLess::operator()(const DifferentialMonomial& a, const DifferentialMonomial& b) const
{
    if (a.order() != b.order())
        return a.order() < b.order();
    if (a.var != b.var)
        return a.var < b.var;
    return a.xi < b.xi;
}

std::strong_ordering compare_rank(const DifferentialMonomial& a, const DifferentialMonomial& b)
{
    if (a.xi.dim() != b.xi.dim())
        throw AmbientMismatch("cannot rank " + to_string(a) + " against " + to_string(b)
                              + ": different numbers of derivations");
    return rank_key(a) <=> rank_key(b);
}

DifferentialMonomial leader(std::span<const DifferentialMonomial> monomials)
{
    if (monomials.empty())
        throw EmptySupport("a differential polynomial with empty support (a constant) has no leader");
    const DifferentialMonomial* best = &monomials.front();
    for (const auto& mono : monomials.subspan(1))
        if (compare_rank(mono, *best) == std::strong_ordering::greater)
            best = &mono;
    return *best;
}

DifferentialMonomial prolong(const DifferentialMonomial& a, const ExponentVector& theta)
{
    return DifferentialMonomial{a.xi + theta, a.var};
}

void check_ambient(const DifferentialMonomial& a, std::size_t m, std::size_t n)
{
    if (a.xi.dim() != m)
        throw AmbientMismatch(to_string(a) + " has " + std::to_string(a.xi.dim()) + " derivation exponents, expected "
                              + std::to_string(m));
    if (a.var < 1 || a.var > n)
        throw AmbientMismatch(to_string(a) + " names unknown x" + std::to_string(a.var) + " outside x1..x"
                              + std::to_string(n));
}

std::string to_string(const DifferentialMonomial& a)
{
    std::string out = "d[";
    for (std::size_t k = 0; k < a.xi.dim(); ++k) {
        if (k)
            out += ",";
        out += std::to_string(a.xi[k]);
    }
    return out + "]x" + std::to_string(a.var);
}

namespace {

std::size_t parse_index(std::string_view digits, const std::string& whole)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
        throw DomainError("malformed differential monomial '" + whole + "'");
    return v;
}

} // namespace

DifferentialMonomial parse_monomial(const std::string& text, std::size_t m)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(c);
    std::string_view rest(t);
    ExponentVector xi = ExponentVector::zero(m);
    if (rest.starts_with("d[")) {
        const auto close = rest.find(']');
        if (close == std::string_view::npos)
            throw DomainError("malformed differential monomial '" + text + "': missing ']'");
        std::vector<std::uint32_t> entries;
        std::string_view body = rest.substr(2, close - 2);
        std::size_t pos = 0;
        for (;;) {
            const auto comma = body.find(',', pos);
            const auto tok = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            entries.push_back(static_cast<std::uint32_t>(parse_index(tok, text)));
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
        if (entries.size() != m)
            throw AmbientMismatch("'" + text + "' has " + std::to_string(entries.size())
                                  + " derivation exponents, expected " + std::to_string(m));
        xi = ExponentVector(std::move(entries));
        rest.remove_prefix(close + 1);
    }
    if (!rest.starts_with("x"))
        throw DomainError("malformed differential monomial '" + text + "': expected x<i>");
    rest.remove_prefix(1);
    const std::size_t var = parse_index(rest, text);
    if (var == 0)
        throw DomainError("malformed differential monomial '" + text + "': unknowns are numbered from x1");
    return DifferentialMonomial{std::move(xi), var};
}

LeaderProfile::LeaderProfile(std::size_t m, std::size_t n) : m_{m}, sets_(n, ExponentSet(m)) {}

void LeaderProfile::add(std::size_t var, ExponentVector xi)
{
    if (var < 1 || var > sets_.size())
        throw AmbientMismatch("leader on x" + std::to_string(var) + " outside x1..x" + std::to_string(sets_.size()));
    sets_[var - 1].add(std::move(xi));
}

void LeaderProfile::canonicalize()
{
    for (auto& s : sets_)
        s = minimal_elements(s);
}

NumericalPolynomial kolchin_from_leaders(const LeaderProfile& profile)
{
    NumericalPolynomial total(profile.m());
    for (const auto& e : profile.sets())
        total = add(total, dimension_polynomial(e));
    return total;
}

std::uint64_t profile_order(const LeaderProfile& profile)
{
    std::uint64_t best = 0;
    for (const auto& e : profile.sets()) {
        const ExponentSet minimal = minimal_elements(e);
        for (const auto& g : minimal.generators())
            best = std::max(best, g.order());
    }
    return best;
}

std::uint64_t profile_stability_bound(const LeaderProfile& profile)
{
    std::uint64_t best = 0;
    for (const auto& e : profile.sets())
        best = std::max(best, stability_bound(e));
    return best;
}

mpz_class profile_volume(const LeaderProfile& profile, const mpz_class& s, const Limits& limits)
{
    mpz_class total = 0;
    for (const auto& e : profile.sets())
        total += volume_ie(e, s, limits);
    return total;
}

LeaderProfile parse_leader_profile(const std::string& text, std::size_t m, std::size_t n)
{
    if (m == 0)
        throw DomainError("leader profile needs m >= 1");
    struct Entry {
        std::size_t line;
        std::size_t var;
        ExponentVector xi;
    };
    std::vector<Entry> entries;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(line_no, 1, "expected '<i>: u1,...,um'");
        std::string var_text = line.substr(0, colon);
        var_text.erase(std::remove_if(var_text.begin(), var_text.end(), [](unsigned char c) { return std::isspace(c); }),
                       var_text.end());
        std::size_t var = 0;
        auto [ptr, ec] = std::from_chars(var_text.data(), var_text.data() + var_text.size(), var);
        if (var_text.empty() || ec != std::errc{} || ptr != var_text.data() + var_text.size() || var == 0)
            throw ParseError(line_no, 1, "expected a variable index >= 1 before ':'");
        if (n != 0 && var > n)
            throw ParseError(line_no, 1, "leader on x" + std::to_string(var) + " outside x1..x" + std::to_string(n));
        ExponentSet one(m);
        try {
            one = parse_exponent_set(line.substr(colon + 1), m);
        } catch (const ParseError& e) {
            throw ParseError(line_no, colon + 1 + e.column(), e.detail());
        } catch (const DomainError& e) {
            throw ParseError(line_no, colon + 2, e.what());
        }
        for (const auto& g : one.generators())
            entries.push_back(Entry{line_no, var, g});
    }
    std::size_t max_var = 0;
    for (const auto& e : entries)
        max_var = std::max(max_var, e.var);
    if (n == 0)
        n = std::max<std::size_t>(max_var, 1);
    LeaderProfile profile(m, n);
    for (auto& e : entries)
        profile.add(e.var, std::move(e.xi));
    return profile;
}

std::string format_leader_profile(const LeaderProfile& profile)
{
    std::string out;
    for (std::size_t i = 1; i <= profile.n(); ++i)
        for (const auto& g : profile.set(i).generators()) {
            out += std::to_string(i) + ": ";
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
