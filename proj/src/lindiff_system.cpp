#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "kolchin/errors.hpp"
#include "kolchin/lindiff.hpp"

namespace kolchin {

std::uint64_t LinearEquation::order() const
{
    return terms.empty() ? 0 : terms.front().mono.order();
}

LinearDiffSystem::LinearDiffSystem(std::size_t m, std::size_t n) : m_{m}, n_{n}
{
    if (m < 1)
        throw DomainError("a differential system needs m >= 1 derivations");
    if (n < 1)
        throw DomainError("a differential system needs n >= 1 unknowns");
}

void LinearDiffSystem::add_equation(std::vector<Term> terms)
{
    for (const auto& t : terms)
        check_ambient(t.mono, m_, n_);
    std::erase_if(terms, [](const Term& t) { return t.coeff == 0; });
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return RankGreater{}(a.mono, b.mono); });
    for (std::size_t k = 1; k < terms.size(); ++k)
        if (terms[k].mono == terms[k - 1].mono)
            throw DomainError("monomial " + to_string(terms[k].mono) + " appears twice in one equation");
    if (terms.empty())
        return;
    for (auto& t : terms)
        t.coeff.canonicalize();
    equations_.push_back(LinearEquation{std::move(terms)});
}

std::uint64_t LinearDiffSystem::order() const
{
    std::uint64_t r = 0;
    for (const auto& eq : equations_)
        r = std::max(r, eq.order());
    return r;
}

namespace {

class TermScanner {
public:
    TermScanner(std::string_view text, std::size_t line, std::size_t column_offset, std::size_t m, std::size_t n)
        : text_{text}, line_{line}, offset_{column_offset}, m_{m}, n_{n}
    {
    }

    std::vector<Term> parse()
    {
        std::vector<Term> terms;
        bool first = true;
        for (;;) {
            skip_space();
            if (at_end()) {
                if (first)
                    fail("equation has no terms");
                break;
            }
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_space();
            } else if (!first) {
                fail(std::string("expected '+' or '-' between terms, found '") + peek() + "'");
            }
            terms.push_back(parse_term(sign));
            first = false;
        }
        return terms;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, offset_ + pos_ + 1, what); }

    std::string digits()
    {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a natural number");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::size_t small_natural()
    {
        const std::size_t at = pos_;
        const std::string d = digits();
        if (d.size() > 9) {
            pos_ = at;
            fail("number '" + d + "' is too large here");
        }
        return std::stoul(d);
    }

    Term parse_term(int sign)
    {
        mpq_class coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const std::size_t coeff_pos = pos_;
            mpz_class num(digits());
            mpz_class den = 1;
            if (peek() == '/') {
                ++pos_;
                den = mpz_class(digits());
                if (den == 0) {
                    pos_ = coeff_pos;
                    fail("zero denominator");
                }
            }
            coeff = mpq_class(num, den);
            coeff.canonicalize();
            skip_space();
            if (peek() != '*') {
                pos_ = coeff_pos;
                fail("constant term: the system must be homogeneous");
            }
            ++pos_;
            skip_space();
            if (coeff == 0) {
                pos_ = coeff_pos;
                fail("zero coefficient");
            }
        }
        DifferentialMonomial mono = parse_monomial_here();
        skip_space();
        if (peek() == '*' || peek() == '^')
            fail("nonlinear term: only linear combinations of derivatives are allowed");
        if (sign < 0)
            coeff = -coeff;
        return Term{coeff, std::move(mono)};
    }

    DifferentialMonomial parse_monomial_here()
    {
        std::vector<std::uint32_t> exps(m_, 0);
        if (peek() == 'd') {
            ++pos_;
            if (peek() != '[')
                fail("expected '[' after 'd'");
            ++pos_;
            std::vector<std::uint32_t> read;
            for (;;) {
                skip_space();
                read.push_back(static_cast<std::uint32_t>(small_natural()));
                skip_space();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                if (peek() == ']') {
                    ++pos_;
                    break;
                }
                fail("expected ',' or ']' in derivative exponents");
            }
            if (read.size() != m_)
                fail("derivative has " + std::to_string(read.size()) + " exponents but m = " + std::to_string(m_));
            exps = std::move(read);
        }
        if (peek() != 'x')
            fail("expected an unknown x<i>");
        ++pos_;
        const std::size_t var_pos = pos_;
        const std::size_t var = small_natural();
        if (var < 1 || var > n_) {
            pos_ = var_pos;
            fail("unknown x" + std::to_string(var) + " outside x1..x" + std::to_string(n_));
        }
        return DifferentialMonomial{ExponentVector(std::move(exps)), var};
    }

    std::string_view text_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t m_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

LinearDiffSystem parse_system(const std::string& text)
{
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    struct PendingEq {
        std::size_t line;
        std::size_t column;
        std::string body;
    };
    std::vector<PendingEq> pending;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view full(raw);
        if (auto hash = full.find('#'); hash != std::string_view::npos)
            full = full.substr(0, hash);
        const std::string_view line = trim(full);
        if (line.empty())
            continue;
        const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());

        if (line.starts_with("eq:")) {
            pending.push_back(PendingEq{line_no, indent + 3, std::string(line.substr(3))});
            continue;
        }
        const auto eqsign = line.find('=');
        if (eqsign == std::string_view::npos)
            throw ParseError(line_no, indent + 1, "expected 'm = <nat>', 'n = <nat>' or 'eq: ...'");
        const std::string_view key = trim(line.substr(0, eqsign));
        const std::string_view value = trim(line.substr(eqsign + 1));
        std::size_t parsed = 0;
        const bool numeric = !value.empty() && value.size() <= 9
                             && std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        const std::size_t value_column = static_cast<std::size_t>(value.data() - raw.data()) + 1;
        if (!numeric)
            throw ParseError(line_no, value_column, "expected a natural number after '='");
        parsed = std::stoul(std::string(value));
        std::optional<std::size_t>* slot = nullptr;
        if (key == "m")
            slot = &m;
        else if (key == "n")
            slot = &n;
        else
            throw ParseError(line_no, indent + 1, "unknown header '" + std::string(key) + "'");
        if (slot->has_value())
            throw ParseError(line_no, indent + 1, "header '" + std::string(key) + "' given twice");
        if (parsed == 0)
            throw ParseError(line_no, value_column, std::string(key) + " must be >= 1");
        *slot = parsed;
    }
    if (!m)
        throw ParseError(line_no, 1, "missing 'm = <nat>' header");
    if (!n)
        throw ParseError(line_no, 1, "missing 'n = <nat>' header");

    LinearDiffSystem sys(*m, *n);
    for (const auto& eq : pending) {
        TermScanner scanner(eq.body, eq.line, eq.column, *m, *n);
        auto terms = scanner.parse();
        try {
            sys.add_equation(std::move(terms));
        } catch (const DomainError& e) {
            throw ParseError(eq.line, eq.column + 1, e.what());
        }
    }
    return sys;
}

std::string format_system(const LinearDiffSystem& sys)
{
    std::ostringstream os;
    os << "m = " << sys.m() << "\n"
       << "n = " << sys.n() << "\n";
    for (const auto& eq : sys.equations()) {
        os << "eq:";
        bool first = true;
        for (const auto& t : eq.terms) {
            const bool negative = t.coeff < 0;
            if (first)
                os << (negative ? " -" : " ");
            else
                os << (negative ? " - " : " + ");
            first = false;
            os << mpq_class(abs(t.coeff)).get_str() << "*" << to_string(t.mono);
        }
        os << "\n";
    }
    return os.str();
}

} // namespace kolchin
