#include <algorithm>
#include <map>

#include "kolchin/lindiff.hpp"

// Buchberger completion for submodules of the free module K[d_1..d_m]^n.
// A term c * delta^xi x_i is the module monomial d^xi e_i; the canonical
// orderly ranking is a module monomial order (it is compatible with
// multiplication by every d^theta), and d^a e_i divides d^b e_j iff i = j and
// a <= b componentwise.

namespace kolchin {

namespace {

using WorkPoly = std::map<DifferentialMonomial, mpq_class, RankGreater>;

struct Element {
    std::vector<Term> terms; // monic, highest-ranked first
    std::uint64_t certificate = 0;

    const DifferentialMonomial& lead() const { return terms.front().mono; }
};

WorkPoly to_work(const std::vector<Term>& terms)
{
    WorkPoly f;
    for (const auto& t : terms)
        f.emplace(t.mono, t.coeff);
    return f;
}

ExponentVector difference(const ExponentVector& big, const ExponentVector& small)
{
    std::vector<std::uint32_t> d(big.dim());
    for (std::size_t k = 0; k < big.dim(); ++k)
        d[k] = big[k] - small[k];
    return ExponentVector(std::move(d));
}

// f -= c * d^theta g
void subtract_multiple(WorkPoly& f, const mpq_class& c, const Element& g, const ExponentVector& theta)
{
    for (const auto& t : g.terms) {
        auto [it, inserted] = f.try_emplace(prolong(t.mono, theta), 0);
        it->second -= c * t.coeff;
        if (it->second == 0)
            f.erase(it);
    }
}

const Element* find_reducer(const std::vector<Element>& basis, const DifferentialMonomial& mono, std::size_t skip)
{
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k == skip)
            continue;
        const auto& lead = basis[k].lead();
        if (lead.var == mono.var && lead.xi.divides(mono.xi))
            return &basis[k];
    }
    return nullptr;
}

// Full reduction: no term of the result is divisible by a leading monomial
// of the basis (element `skip` excluded).
std::uint64_t reduce(WorkPoly& f, std::uint64_t certificate, const std::vector<Element>& basis,
                     std::size_t skip = static_cast<std::size_t>(-1))
{
    auto it = f.begin();
    while (it != f.end()) {
        const Element* g = find_reducer(basis, it->first, skip);
        if (!g) {
            ++it;
            continue;
        }
        const DifferentialMonomial key = it->first;
        const ExponentVector theta = difference(key.xi, g->lead().xi);
        certificate = std::max(certificate, g->certificate + theta.order());
        // Every term of d^theta g ranks at or below key, so earlier terms stay put.
        subtract_multiple(f, mpq_class(it->second), *g, theta);
        it = f.lower_bound(key);
    }
    return certificate;
}

Element make_monic(const WorkPoly& f, std::uint64_t certificate)
{
    Element e;
    e.certificate = certificate;
    const mpq_class lc = f.begin()->second;
    e.terms.reserve(f.size());
    for (const auto& [mono, c] : f) {
        mpq_class v = c / lc;
        v.canonicalize();
        e.terms.push_back(Term{std::move(v), mono});
    }
    return e;
}

bool coprime(const ExponentVector& a, const ExponentVector& b)
{
    for (std::size_t k = 0; k < a.dim(); ++k)
        if (a[k] != 0 && b[k] != 0)
            return false;
    return true;
}

struct Pair {
    std::size_t i;
    std::size_t j;
    DifferentialMonomial lcm;
};

} // namespace

GroebnerBasis module_groebner_certified(const LinearDiffSystem& sys)
{
    std::vector<Element> basis;
    std::vector<Pair> pairs;
    // The product criterion is only sound for ideals, i.e. a single unknown.
    const bool ideal_case = sys.n() == 1;

    auto insert = [&](WorkPoly f, std::uint64_t certificate) {
        certificate = reduce(f, certificate, basis);
        if (f.empty())
            return;
        basis.push_back(make_monic(f, certificate));
        const std::size_t fresh = basis.size() - 1;
        const auto& lead = basis[fresh].lead();
        for (std::size_t k = 0; k < fresh; ++k) {
            const auto& other = basis[k].lead();
            if (other.var != lead.var)
                continue;
            if (ideal_case && coprime(other.xi, lead.xi))
                continue;
            pairs.push_back(Pair{k, fresh, DifferentialMonomial{other.xi.join(lead.xi), lead.var}});
        }
    };

    for (const auto& eq : sys.equations())
        insert(to_work(eq.terms), eq.order());

    while (!pairs.empty()) {
        // Normal selection strategy: lowest-ranked lcm first.
        auto next = std::min_element(pairs.begin(), pairs.end(),
                                     [](const Pair& a, const Pair& b) { return RankLess{}(a.lcm, b.lcm); });
        const Pair p = *next;
        pairs.erase(next);

        const Element& gi = basis[p.i];
        const Element& gj = basis[p.j];
        const ExponentVector ti = difference(p.lcm.xi, gi.lead().xi);
        const ExponentVector tj = difference(p.lcm.xi, gj.lead().xi);
        WorkPoly s;
        for (const auto& t : gi.terms)
            s.emplace(prolong(t.mono, ti), t.coeff);
        subtract_multiple(s, 1, gj, tj);
        const std::uint64_t certificate = std::max(gi.certificate + ti.order(), gj.certificate + tj.order());
        insert(std::move(s), certificate);
    }

    // Keep elements whose leads are minimal, then reduce every tail.
    std::vector<Element> minimal;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        bool redundant = false;
        for (std::size_t o = 0; o < basis.size() && !redundant; ++o) {
            if (o == k)
                continue;
            const auto& a = basis[o].lead();
            const auto& b = basis[k].lead();
            if (a.var == b.var && a.xi.divides(b.xi) && (a.xi != b.xi || o < k))
                redundant = true;
        }
        if (!redundant)
            minimal.push_back(basis[k]);
    }
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        WorkPoly f = to_work(minimal[k].terms);
        const std::uint64_t certificate = reduce(f, minimal[k].certificate, minimal, k);
        minimal[k] = make_monic(f, certificate);
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const Element& a, const Element& b) { return RankLess{}(a.lead(), b.lead()); });

    GroebnerBasis out{LinearDiffSystem(sys.m(), sys.n()), {}};
    for (auto& e : minimal) {
        out.certificate_orders.push_back(e.certificate);
        out.basis.add_equation(std::move(e.terms));
    }
    return out;
}

LinearDiffSystem module_groebner(const LinearDiffSystem& sys)
{
    return module_groebner_certified(sys).basis;
}

LeaderProfile leader_profile(const LinearDiffSystem& gb)
{
    LeaderProfile profile(gb.m(), gb.n());
    for (const auto& eq : gb.equations())
        profile.add(eq.lead().var, eq.lead().xi);
    profile.canonicalize();
    return profile;
}

NumericalPolynomial kolchin_polynomial(const LinearDiffSystem& sys)
{
    return kolchin_from_leaders(leader_profile(module_groebner(sys)));
}

std::uint64_t completion_margin(const GroebnerBasis& gb)
{
    std::uint64_t margin = profile_order(leader_profile(gb.basis));
    const auto& eqs = gb.basis.equations();
    for (std::size_t k = 0; k < eqs.size(); ++k)
        margin = std::max(margin, gb.certificate_orders[k] - eqs[k].order());
    return margin;
}

bool omega_at_least(const LinearDiffSystem& sys, const NumericalPolynomial& p)
{
    return compare_eventual(kolchin_polynomial(sys), p) != std::strong_ordering::less;
}

bool omega_equals(const LinearDiffSystem& sys, const NumericalPolynomial& p)
{
    return compare_eventual(kolchin_polynomial(sys), p) == std::strong_ordering::equal;
}

} // namespace kolchin
