#include <doctest.h>

#include "corpus.hpp"
#include "generators.hpp"
#include "kolchin/errors.hpp"
#include "kolchin/lindiff.hpp"

using namespace kolchin;
using P = NumericalPolynomial;

namespace {

const std::string heat_text = "m = 2\nn = 1\neq: 1*d[1,0]x1 - 1*d[0,2]x1\n";
const std::string cr_text = "m = 2\nn = 2\neq: d[0,1]x2 - d[1,0]x1\neq: d[1,0]x2 + d[0,1]x1\n";

DifferentialMonomial mono(std::vector<std::uint32_t> xi, std::size_t var)
{
    return DifferentialMonomial{ExponentVector(std::move(xi)), var};
}

bool has_equation(const LinearDiffSystem& sys, const std::vector<std::pair<DifferentialMonomial, mpq_class>>& want)
{
    for (const auto& eq : sys.equations()) {
        if (eq.terms.size() != want.size())
            continue;
        bool same = true;
        for (std::size_t k = 0; k < want.size() && same; ++k)
            same = eq.terms[k].mono == want[k].first && eq.terms[k].coeff == want[k].second;
        if (same)
            return true;
    }
    return false;
}

void check_parse_error(const std::string& text, std::size_t line, std::size_t column)
{
    try {
        parse_system(text);
        FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
    }
}

} // namespace

TEST_CASE("parse_system")
{
    const LinearDiffSystem heat = parse_system(heat_text);
    CHECK(heat.m() == 2);
    CHECK(heat.n() == 1);
    CHECK(heat.order() == 2);
    REQUIRE(heat.equations().size() == 1);
    CHECK(heat.equations()[0].lead() == mono({0, 2}, 1));
    CHECK(heat.equations()[0].terms[1].coeff == 1);

    const LinearDiffSystem empty = parse_system("m = 2\nn = 1\n");
    CHECK(empty.order() == 0);
    CHECK(empty.equations().empty());

    const LinearDiffSystem rational = parse_system("# comment\nn = 2\nm = 1\neq: 2/3*d[1]x1 - x2 # trailing\n");
    CHECK(rational.equations()[0].terms[0].coeff == mpq_class(2, 3));
    CHECK(rational.equations()[0].terms[1].coeff == -1);

    CHECK(parse_system(format_system(heat)).equations()[0].terms.size() == 2);
    CHECK(format_system(parse_system(format_system(rational))) == format_system(rational));
}

TEST_CASE("parse_system errors")
{
    check_parse_error("m = 2\nn = 1\neq: x1*x1\n", 3, 7);
    check_parse_error("m = 2\nn = 1\neq: d[1,0]x1 + 3\n", 3, 16);
    check_parse_error("m = 2\nn = 1\neq: d[1,0]x2\n", 3, 12);
    check_parse_error("m = 2\nn = 1\neq: d[1,0,0]x1\n", 3, 13);
    check_parse_error("m = 2\neq: x1\n", 2, 1);
    check_parse_error("n = 1\neq: x1\n", 2, 1);
    check_parse_error("m = 2\nm = 2\nn = 1\n", 2, 1);
    check_parse_error("m = 0\nn = 1\n", 1, 5);
    check_parse_error("m = 2\nn = 1\neq: 1/0*x1\n", 3, 5);
    check_parse_error("m = 2\nn = 1\neq: 0*x1\n", 3, 5);
    check_parse_error("m = 2\nn = 1\neq:\n", 3, 4);
    check_parse_error("m = 2\nn = 1\nfoo\n", 3, 1);
    check_parse_error("m = 2\nn = 1\neq: x1 x1\n", 3, 8);
    check_parse_error("m = 1\nn = 1\neq: d[1]x1^2\n", 3, 11);
    CHECK_THROWS_AS(parse_system("m = 1\nn = 1\neq: x1 + x1\n"), ParseError);
    CHECK_THROWS_AS(LinearDiffSystem(0, 1), DomainError);
    CHECK_THROWS_AS(LinearDiffSystem(1, 0), DomainError);
}

TEST_CASE("groebner examples")
{
    const LinearDiffSystem heat = parse_system(heat_text);
    const LinearDiffSystem heat_gb = module_groebner(heat);
    REQUIRE(heat_gb.equations().size() == 1);
    CHECK(has_equation(heat_gb, {{mono({0, 2}, 1), 1}, {mono({1, 0}, 1), -1}}));

    const LinearDiffSystem cr_gb = module_groebner(parse_system(cr_text));
    CHECK(has_equation(cr_gb, {{mono({2, 0}, 1), 1}, {mono({0, 2}, 1), 1}}));

    const LinearDiffSystem coprime = parse_system("m = 2\nn = 1\neq: d[1,0]x1\neq: d[0,1]x1\n");
    const LinearDiffSystem coprime_gb = module_groebner(coprime);
    CHECK(coprime_gb.equations().size() == 2);
    CHECK(leader_profile(coprime_gb).set(1).generators() == std::vector<ExponentVector>{{0, 1}, {1, 0}});
}

TEST_CASE("groebner basis is reduced and unique")
{
    testing::Rng rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        const LinearDiffSystem sys = testing::random_system(rng, testing::uniform(rng, 1, 2),
                                                            testing::uniform(rng, 1, 2), 2, 3);
        const LinearDiffSystem gb = module_groebner(sys);
        // idempotent and independent of input order
        CHECK(format_system(module_groebner(gb)) == format_system(gb));
        LinearDiffSystem reversed(sys.m(), sys.n());
        for (auto it = sys.equations().rbegin(); it != sys.equations().rend(); ++it)
            reversed.add_equation(it->terms);
        CHECK(format_system(module_groebner(reversed)) == format_system(gb));
        for (const auto& eq : gb.equations()) {
            CHECK(eq.terms.front().coeff == 1);
            for (const auto& other : gb.equations())
                for (const auto& t : eq.terms)
                    if (&other != &eq)
                        CHECK_FALSE((other.lead().var == t.mono.var && other.lead().xi.divides(t.mono.xi)));
        }
    }
}

TEST_CASE("leader profiles")
{
    const LeaderProfile heat = leader_profile(module_groebner(parse_system(heat_text)));
    CHECK(heat.set(1).generators() == std::vector<ExponentVector>{{0, 2}});
    const LeaderProfile cr = leader_profile(module_groebner(parse_system(cr_text)));
    CHECK(cr.set(1).generators() == std::vector<ExponentVector>{{2, 0}});
    CHECK(cr.set(2).generators() == std::vector<ExponentVector>{{0, 1}, {1, 0}});
    const LeaderProfile free = leader_profile(module_groebner(parse_system("m = 2\nn = 3\n")));
    for (const auto& e : free.sets())
        CHECK(e.generators().empty());
}

TEST_CASE("kolchin_polynomial and decisions")
{
    const LinearDiffSystem heat = parse_system(heat_text);
    CHECK(kolchin_polynomial(heat) == P::from_ints({0, 2, -1}));
    CHECK(kolchin_polynomial(parse_system(cr_text)) == P::from_ints({0, 2, 0}));
    CHECK(kolchin_polynomial(parse_system("m = 2\nn = 1\n")) == P::from_ints({1, 0, 0}));
    CHECK(omega_at_least(heat, P::from_ints({0, 2, -1})));
    CHECK(omega_equals(heat, P::from_ints({0, 2, -1})));
    CHECK_FALSE(omega_at_least(heat, P::from_ints({1, 0, 0})));
    CHECK_FALSE(omega_equals(heat, P::from_ints({1, 0, 0})));
    CHECK(omega_at_least(heat, P(2)));
    CHECK(omega_at_least(heat, P::from_ints({2, -1})));
    CHECK_FALSE(omega_at_least(heat, P::from_ints({2, 0})));
    CHECK(differential_type(kolchin_polynomial(heat)) == 1);
}

TEST_CASE("prolongation_dimension examples")
{
    const LinearDiffSystem heat = parse_system(heat_text);
    CHECK(prolongation_dimension(heat, 2, 0) == 5);
    for (std::uint64_t margin = 0; margin <= 4; ++margin)
        CHECK(prolongation_dimension(heat, 0, margin) == 1);
    CHECK(prolongation_dimension(parse_system(cr_text), 1, 0) == 4);

    const ProlongationMatrix mat = build_prolongation_matrix(heat, 2, 0);
    CHECK(mat.columns.size() == 6);
    CHECK(mat.rows.size() == 1);
    CHECK(mat.columns.size() - mat.low_begin == 6);

    Limits tight;
    tight.matrix_cell_cap = 50;
    CHECK_THROWS_AS(prolongation_dimension(heat, 5, 2, tight), ResourceLimit);
}

TEST_CASE("kolchin_via_prolongation examples")
{
    const ProlongationReport heat = kolchin_via_prolongation_report(parse_system(heat_text));
    CHECK(heat.polynomial == P::from_ints({0, 2, -1}));
    CHECK(heat.sample_start == 2);
    CHECK(heat.values == std::vector<mpz_class>{5, 7, 9});

    const ProlongationReport cr = kolchin_via_prolongation_report(parse_system(cr_text));
    CHECK(cr.polynomial == P::from_ints({0, 2, 0}));

    CHECK(kolchin_via_prolongation(parse_system("m = 1\nn = 2\n")) == P::from_ints({2, 0}));

    Limits tight;
    tight.stabilization_ceiling = 0;
    tight.matrix_cell_cap = 20;
    CHECK_THROWS_AS(kolchin_via_prolongation(parse_system(heat_text), tight), ResourceLimit);
}

TEST_CASE("margin certified by the completion")
{
    // x''' = 0 and x''' + x' = 0: the basis element x' = 0 has order 1 but
    // only appears after prolonging to order 3.
    const LinearDiffSystem sys = parse_system("m = 1\nn = 1\neq: d[3]x1\neq: d[3]x1 + d[1]x1\n");
    const GroebnerBasis gb = module_groebner_certified(sys);
    const LeaderProfile profile = leader_profile(gb.basis);
    CHECK(profile_order(profile) == 1);
    CHECK(completion_margin(gb) == 2);
    CHECK(prolongation_dimension(sys, 1, profile_order(profile)) == 2);
    CHECK(prolongation_dimension(sys, 1, completion_margin(gb)) == 1);
    CHECK(kolchin_via_prolongation(sys) == P::from_ints({0, 1}));
}

TEST_CASE("sampling waits for the stability bound")
{
    // dims 1, 3, 4, 4, ...: the window test passes at s = 0 already
    const LinearDiffSystem sys = parse_system("m = 2\nn = 1\neq: d[2,0]x1\neq: d[0,2]x1\n");
    const ProlongationReport rep = kolchin_via_prolongation_report(sys);
    CHECK(rep.stable_from == 0);
    CHECK(rep.sample_start == 6);
    CHECK(rep.polynomial == P::from_ints({0, 0, 4}));
}

TEST_CASE("corpus matches the frozen oracle")
{
    for (const auto& entry : testing::load_corpus(KOLCHIN_TEST_DATA_DIR)) {
        CAPTURE(entry.name);
        CHECK(kolchin_polynomial(entry.system) == entry.expected);
        const ProlongationReport rep = kolchin_via_prolongation_report(entry.system);
        CHECK(rep.polynomial == entry.expected);
        for (std::size_t s = 0; s < entry.values.size() && s <= 8; ++s)
            CHECK(prolongation_dimension(entry.system, s, rep.margin) == entry.values[s]);
    }
}

TEST_CASE("random systems: monotonicity and both pipelines")
{
    testing::Rng rng(52);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = testing::uniform(rng, 1, 2);
        const std::size_t n = testing::uniform(rng, 1, 2);
        const LinearDiffSystem sys = testing::random_system(rng, m, n, 2, 3);
        CAPTURE(format_system(sys));
        const P omega = kolchin_polynomial(sys);
        CHECK(kolchin_via_prolongation(sys) == omega);

        // more prolongation can only cut the projection down; once the margin
        // is certified the projections are those of one solution space
        const std::uint64_t mu = completion_margin(module_groebner_certified(sys));
        for (std::uint64_t s = 0; s <= 3; ++s) {
            for (std::uint64_t margin = 0; margin <= mu + 1; ++margin)
                CHECK(prolongation_dimension(sys, s, margin + 1) <= prolongation_dimension(sys, s, margin));
            CHECK(prolongation_dimension(sys, s, mu) <= prolongation_dimension(sys, s + 1, mu));
        }

        LinearDiffSystem more = sys;
        const LinearDiffSystem extra = testing::random_system(rng, m, n, 2, 1);
        more.add_equation(extra.equations().empty() ? std::vector<Term>{} : extra.equations().front().terms);
        CHECK(compare_eventual(omega, kolchin_polynomial(more)) != std::strong_ordering::less);
    }
}

TEST_CASE("random systems without order-zero terms")
{
    testing::Rng rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = testing::uniform(rng, 1, 3);
        const std::size_t n = testing::uniform(rng, 1, 2);
        const LinearDiffSystem sys = testing::random_system(rng, m, n, m == 3 ? 2 : 3, 3, 1);
        CAPTURE(format_system(sys));
        const P omega = kolchin_polynomial(sys);
        const ProlongationReport rep = kolchin_via_prolongation_report(sys);
        CHECK(rep.polynomial == omega);
        const LeaderProfile profile = leader_profile(module_groebner(sys));
        for (std::uint64_t s = rep.sample_start; s <= rep.sample_start + 2; ++s)
            CHECK(profile_volume(profile, s) == evaluate(omega, static_cast<long>(s)));
    }
}
