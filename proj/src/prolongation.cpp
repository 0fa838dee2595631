#include <algorithm>
#include <map>

#include "kolchin/errors.hpp"
#include "kolchin/lindiff.hpp"

namespace kolchin {

namespace {

void compositions(std::uint32_t total, std::size_t k, std::vector<std::uint32_t>& cur, std::vector<ExponentVector>& out)
{
    if (k + 1 == cur.size()) {
        cur[k] = total;
        out.emplace_back(cur);
        return;
    }
    for (std::uint32_t v = 0; v <= total; ++v) {
        cur[k] = v;
        compositions(total - v, k + 1, cur, out);
    }
}

} // namespace

std::vector<ExponentVector> exponents_up_to(std::size_t m, std::uint64_t max_order)
{
    std::vector<ExponentVector> out;
    if (m == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<std::uint32_t> cur(m, 0);
    for (std::uint64_t total = 0; total <= max_order; ++total)
        compositions(static_cast<std::uint32_t>(total), 0, cur, out);
    return out;
}

ProlongationMatrix build_prolongation_matrix(const LinearDiffSystem& sys, std::uint64_t level, std::uint64_t margin,
                                             const Limits& limits)
{
    const std::size_t m = sys.m();
    const std::size_t n = sys.n();
    const std::uint64_t top = level + margin;

    const auto count_up_to = [m](std::uint64_t order) {
        return binomial(mpz_class(static_cast<unsigned long>(order + m)), m);
    };
    const mpz_class num_cols = count_up_to(top) * static_cast<unsigned long>(n);
    mpz_class num_rows = 0;
    for (const auto& eq : sys.equations())
        if (eq.order() <= top)
            num_rows += count_up_to(top - eq.order());
    if (num_rows * num_cols > static_cast<unsigned long>(limits.matrix_cell_cap))
        throw ResourceLimit("prolongation matrix at level " + std::to_string(level) + " with margin "
                            + std::to_string(margin) + " has " + num_rows.get_str() + " x " + num_cols.get_str()
                            + " cells, above the cap of " + std::to_string(limits.matrix_cell_cap));

    ProlongationMatrix mat;
    mat.level = level;
    mat.margin = margin;
    const auto exps = exponents_up_to(m, top);
    mat.columns.reserve(num_cols.get_ui());
    for (std::size_t var = 1; var <= n; ++var)
        for (const auto& e : exps)
            mat.columns.push_back(DifferentialMonomial{e, var});
    std::sort(mat.columns.begin(), mat.columns.end(), RankGreater{});
    mat.low_begin = mat.columns.size() - n * count_up_to(level).get_ui();

    std::map<DifferentialMonomial, std::size_t, RankLess> index;
    for (std::size_t c = 0; c < mat.columns.size(); ++c)
        index.emplace(mat.columns[c], c);

    for (const auto& eq : sys.equations()) {
        if (eq.order() > top)
            continue;
        for (const auto& theta : exponents_up_to(m, top - eq.order())) {
            std::vector<std::pair<std::size_t, mpq_class>> row;
            row.reserve(eq.terms.size());
            for (const auto& t : eq.terms)
                row.emplace_back(index.at(prolong(t.mono, theta)), t.coeff);
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            mat.rows.push_back(std::move(row));
        }
    }
    return mat;
}

namespace {

using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

void make_primitive(IntRow& row)
{
    if (row.empty())
        return;
    mpz_class g = 0;
    for (const auto& [col, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            return;
    }
    for (auto& [col, v] : row)
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow clear_denominators(const std::vector<std::pair<std::size_t, mpq_class>>& row)
{
    mpz_class l = 1;
    for (const auto& [col, v] : row)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    IntRow out;
    out.reserve(row.size());
    for (const auto& [col, v] : row)
        out.emplace_back(col, v.get_num() * (l / v.get_den()));
    make_primitive(out);
    return out;
}

// a*row - b*pivot, dropping the cancelled leading entry.
IntRow combine(const IntRow& row, const mpz_class& a, const IntRow& pivot, const mpz_class& b)
{
    IntRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, a * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -b * pivot[j].second);
            ++j;
        } else {
            mpz_class v = a * row[i].second - b * pivot[j].second;
            if (v != 0)
                out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

std::size_t low_pivot_count(const ProlongationMatrix& mat)
{
    std::vector<IntRow> pivots;
    std::vector<std::ptrdiff_t> pivot_of_col(mat.columns.size(), -1);
    std::size_t low = 0;

    for (const auto& rational_row : mat.rows) {
        IntRow row = clear_denominators(rational_row);
        while (!row.empty()) {
            const std::ptrdiff_t p = pivot_of_col[row.front().first];
            if (p < 0)
                break;
            const IntRow& piv = pivots[static_cast<std::size_t>(p)];
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), piv.front().second.get_mpz_t(), row.front().second.get_mpz_t());
            const mpz_class a = piv.front().second / g;
            const mpz_class b = row.front().second / g;
            row = combine(row, a, piv, b);
            make_primitive(row);
        }
        if (row.empty())
            continue;
        const std::size_t lead = row.front().first;
        pivot_of_col[lead] = static_cast<std::ptrdiff_t>(pivots.size());
        if (lead >= mat.low_begin)
            ++low;
        pivots.push_back(std::move(row));
    }
    return low;
}

std::uint64_t prolongation_dimension(const LinearDiffSystem& sys, std::uint64_t s, std::uint64_t margin,
                                     const Limits& limits)
{
    const ProlongationMatrix mat = build_prolongation_matrix(sys, s, margin, limits);
    return (mat.columns.size() - mat.low_begin) - low_pivot_count(mat);
}

ProlongationReport kolchin_via_prolongation_report(const LinearDiffSystem& sys, const Limits& limits)
{
    const GroebnerBasis gb = module_groebner_certified(sys);
    const LeaderProfile profile = leader_profile(gb.basis);
    const std::size_t m = sys.m();

    ProlongationReport rep;
    rep.margin = completion_margin(gb);

    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cache;
    auto dim = [&](std::uint64_t s, std::uint64_t margin) {
        auto key = std::make_pair(s, margin);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
        const std::uint64_t d = prolongation_dimension(sys, s, margin, limits);
        cache.emplace(key, d);
        return d;
    };

    bool found = false;
    for (std::uint64_t s = 0; s <= limits.stabilization_ceiling && !found; ++s) {
        bool window_ok = true;
        for (std::uint64_t k = 0; k <= m && window_ok; ++k)
            window_ok = dim(s + k, rep.margin) == dim(s + k, rep.margin + 1);
        if (window_ok) {
            rep.stable_from = s;
            found = true;
        }
    }
    if (!found)
        throw ResourceLimit("prolongation dimensions with margins " + std::to_string(rep.margin) + " and "
                            + std::to_string(rep.margin + 1) + " never agreed on a window of "
                            + std::to_string(m + 1) + " levels up to s = "
                            + std::to_string(limits.stabilization_ceiling));

    // Below the stability bound of the leader profile the jet dimensions
    // need not follow the polynomial yet.
    rep.sample_start = std::max(rep.stable_from, profile_stability_bound(profile));
    for (std::uint64_t k = 0; k <= m; ++k)
        rep.values.emplace_back(static_cast<unsigned long>(dim(rep.sample_start + k, rep.margin)));
    rep.polynomial = interpolate(rep.values, rep.sample_start, m);
    return rep;
}

NumericalPolynomial kolchin_via_prolongation(const LinearDiffSystem& sys, const Limits& limits)
{
    return kolchin_via_prolongation_report(sys, limits).polynomial;
}

} // namespace kolchin
