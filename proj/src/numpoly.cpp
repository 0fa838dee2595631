#include "kolchin/numpoly.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "kolchin/errors.hpp"

namespace kolchin {

mpz_class binomial(const mpz_class& top, unsigned long k)
{
    mpz_class out;
    mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), k);
    return out;
}

NumericalPolynomial::NumericalPolynomial(std::size_t m) : coeffs_(m + 1, mpz_class(0)) {}

NumericalPolynomial::NumericalPolynomial(std::vector<mpz_class> standard_coeffs)
    : coeffs_(std::move(standard_coeffs))
{
    if (coeffs_.empty())
        throw DomainError("numerical polynomial needs at least one standard coefficient");
}

NumericalPolynomial NumericalPolynomial::from_ints(std::initializer_list<long> standard_coeffs)
{
    std::vector<mpz_class> c;
    for (long v : standard_coeffs)
        c.emplace_back(v);
    return NumericalPolynomial(std::move(c));
}

NumericalPolynomial NumericalPolynomial::binomial_basis(std::size_t m, const mpz_class& scale)
{
    NumericalPolynomial p(m);
    p.coeffs_.front() = scale;
    return p;
}

mpz_class NumericalPolynomial::coeff(std::size_t i) const
{
    if (i > degree_bound())
        return 0;
    return coeffs_[degree_bound() - i];
}

bool NumericalPolynomial::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

NumericalPolynomial NumericalPolynomial::padded(std::size_t m) const
{
    if (m <= degree_bound())
        return *this;
    std::vector<mpz_class> c(m - degree_bound(), mpz_class(0));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return NumericalPolynomial(std::move(c));
}

bool operator==(const NumericalPolynomial& a, const NumericalPolynomial& b)
{
    return compare_eventual(a, b) == std::strong_ordering::equal;
}

mpz_class evaluate(const NumericalPolynomial& p, const mpz_class& s)
{
    if (s < 0)
        throw DomainError("evaluate: s must be >= 0, got " + s.get_str());
    mpz_class total = 0;
    for (std::size_t i = 0; i <= p.degree_bound(); ++i) {
        const mpz_class a = p.coeff(i);
        if (a != 0)
            total += a * binomial(s + i, i);
    }
    return total;
}

NumericalPolynomial add(const NumericalPolynomial& p, const NumericalPolynomial& q)
{
    const std::size_t m = std::max(p.degree_bound(), q.degree_bound());
    std::vector<mpz_class> c(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        c[m - i] = p.coeff(i) + q.coeff(i);
    return NumericalPolynomial(std::move(c));
}

NumericalPolynomial subtract(const NumericalPolynomial& p, const NumericalPolynomial& q)
{
    const std::size_t m = std::max(p.degree_bound(), q.degree_bound());
    std::vector<mpz_class> c(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        c[m - i] = p.coeff(i) - q.coeff(i);
    return NumericalPolynomial(std::move(c));
}

// binom(t-1+i, i) = binom(t+i, i) - binom(t+i-1, i-1), so one unit of shift
// maps a_i to a_i - a_{i+1}.
NumericalPolynomial shift(const NumericalPolynomial& p, std::size_t k)
{
    std::vector<mpz_class> c = p.standard_coeffs();
    for (std::size_t step = 0; step < k; ++step) {
        // c[j] holds a_{m-j}; a_{i+1} sits at index j-1.
        for (std::size_t j = c.size(); j-- > 1;)
            c[j] -= c[j - 1];
    }
    return NumericalPolynomial(std::move(c));
}

std::strong_ordering compare_eventual(const NumericalPolynomial& p, const NumericalPolynomial& q)
{
    const std::size_t m = std::max(p.degree_bound(), q.degree_bound());
    for (std::size_t i = m + 1; i-- > 0;) {
        const int c = cmp(p.coeff(i), q.coeff(i));
        if (c < 0)
            return std::strong_ordering::less;
        if (c > 0)
            return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// Backward differences: if p = sum a_i binom(t+i, i) then
// Delta p(t) = p(t) - p(t-1) = sum a_i binom(t+i-1, i-1), so Delta^m p is the
// constant a_m. Peel off the top term and recurse on the remaining values.
NumericalPolynomial interpolate(std::span<const mpz_class> values, std::size_t start, std::size_t m)
{
    if (values.size() < m + 1)
        throw InputNotNumericalPolynomial("interpolate: need " + std::to_string(m + 1) + " values for degree bound "
                                          + std::to_string(m) + ", got " + std::to_string(values.size()));

    std::vector<mpz_class> residual(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m + 1));
    std::vector<mpz_class> coeffs(m + 1);
    for (std::size_t deg = m + 1; deg-- > 0;) {
        // deg-th backward difference at the last sample point.
        std::vector<mpz_class> diff(residual.begin(), residual.begin() + static_cast<std::ptrdiff_t>(deg + 1));
        for (std::size_t round = 0; round < deg; ++round)
            for (std::size_t j = deg; j > round; --j)
                diff[j] -= diff[j - 1];
        const mpz_class a = diff[deg];
        coeffs[m - deg] = a;
        if (a != 0)
            for (std::size_t k = 0; k <= deg; ++k)
                residual[k] -= a * binomial(mpz_class(start + k + deg), deg);
    }
    NumericalPolynomial p(std::move(coeffs));

    for (std::size_t k = m + 1; k < values.size(); ++k)
        if (evaluate(p, mpz_class(start + k)) != values[k])
            throw InputNotNumericalPolynomial("interpolate: value at t=" + std::to_string(start + k)
                                              + " is inconsistent with a numerical polynomial of degree <= "
                                              + std::to_string(m));
    return p;
}

namespace {

// Coefficients of binom(t+i, i) = (t+1)(t+2)...(t+i)/i!, ascending in t.
std::vector<mpq_class> binomial_basis_ascending(std::size_t i)
{
    std::vector<mpq_class> poly{mpq_class(1)};
    for (std::size_t k = 1; k <= i; ++k) {
        std::vector<mpq_class> next(poly.size() + 1, mpq_class(0));
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j] * static_cast<long>(k);
            next[j + 1] += poly[j];
        }
        for (auto& c : next) {
            c /= static_cast<long>(k);
            c.canonicalize();
        }
        poly = std::move(next);
    }
    return poly;
}

} // namespace

MonomialForm to_monomial_form(const NumericalPolynomial& p)
{
    const std::size_t m = p.degree_bound();
    std::vector<mpq_class> ascending(m + 1, mpq_class(0));
    for (std::size_t i = 0; i <= m; ++i) {
        const mpz_class a = p.coeff(i);
        if (a == 0)
            continue;
        const auto basis = binomial_basis_ascending(i);
        for (std::size_t j = 0; j < basis.size(); ++j)
            ascending[j] += basis[j] * a;
    }
    MonomialForm f;
    f.coeffs.assign(ascending.rbegin(), ascending.rend());
    for (auto& c : f.coeffs)
        c.canonicalize();
    return f;
}

NumericalPolynomial from_monomial_form(const MonomialForm& f)
{
    if (f.coeffs.empty())
        throw DomainError("monomial form needs at least one coefficient");
    const std::size_t m = f.coeffs.size() - 1;
    std::vector<mpq_class> ascending(f.coeffs.rbegin(), f.coeffs.rend());
    std::vector<mpz_class> out(m + 1);
    for (std::size_t i = m + 1; i-- > 0;) {
        const auto basis = binomial_basis_ascending(i);
        // Leading t^i coefficient of binom(t+i, i) is 1/i!.
        mpq_class a = ascending[i] / basis[i];
        a.canonicalize();
        if (a.get_den() != 1)
            throw InputNotNumericalPolynomial("monomial form is not integer valued");
        out[m - i] = a.get_num();
        for (std::size_t j = 0; j <= i; ++j)
            ascending[j] -= basis[j] * a;
    }
    return NumericalPolynomial(std::move(out));
}

std::size_t differential_type(const NumericalPolynomial& p)
{
    for (std::size_t i = p.degree_bound() + 1; i-- > 0;)
        if (p.coeff(i) != 0)
            return i;
    return 0;
}

std::string render(const NumericalPolynomial& p)
{
    const MonomialForm f = to_monomial_form(p);
    const std::size_t m = f.coeffs.size() - 1;
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j <= m; ++j) {
        const mpq_class& c = f.coeffs[j];
        const std::size_t power = m - j;
        if (c == 0)
            continue;
        mpq_class mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (power == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << mag.get_str() << "*";
        os << "t";
        if (power > 1)
            os << "^" << power;
    }
    if (first)
        return "0";
    return os.str();
}

std::string to_json(const NumericalPolynomial& p)
{
    nlohmann::ordered_json j;
    j["m"] = p.degree_bound();
    auto arr = nlohmann::json::array();
    for (const auto& c : p.standard_coeffs())
        arr.push_back(c.get_str());
    j["standard_coeffs"] = arr;
    return j.dump();
}

namespace {

mpz_class parse_integer(const std::string& token)
{
    std::string t;
    for (char ch : token)
        if (ch != ' ' && ch != '\t')
            t.push_back(ch);
    if (!t.empty() && t.front() == '+')
        t.erase(0, 1);
    mpz_class v;
    if (t.empty() || v.set_str(t, 10) != 0)
        throw DomainError("not an integer: '" + token + "'");
    return v;
}

} // namespace

NumericalPolynomial parse_numerical_polynomial(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw DomainError("empty numerical polynomial");

    if (text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw DomainError(std::string("numerical polynomial JSON: ") + e.what());
        }
        if (!j.contains("standard_coeffs") || !j["standard_coeffs"].is_array())
            throw DomainError("numerical polynomial JSON needs a \"standard_coeffs\" array");
        std::vector<mpz_class> coeffs;
        for (const auto& c : j["standard_coeffs"]) {
            if (c.is_string())
                coeffs.push_back(parse_integer(c.get<std::string>()));
            else if (c.is_number_integer())
                coeffs.push_back(parse_integer(c.dump()));
            else
                throw DomainError("standard coefficient must be an integer or decimal string");
        }
        if (coeffs.empty())
            throw DomainError("\"standard_coeffs\" is empty");
        NumericalPolynomial p(std::move(coeffs));
        if (j.contains("m")) {
            if (!j["m"].is_number_unsigned())
                throw DomainError("\"m\" must be a natural number");
            const auto m = j["m"].get<std::size_t>();
            if (m != p.degree_bound())
                throw DomainError("\"m\" is " + std::to_string(m) + " but " + std::to_string(p.degree_bound() + 1)
                                  + " standard coefficients were given");
        }
        return p;
    }

    std::string body = text.substr(first);
    if (!body.empty() && body.front() == '[') {
        const auto close = body.find(']');
        if (close == std::string::npos)
            throw DomainError("unterminated '[' in coefficient list");
        if (body.find_first_not_of(" \t\r\n", close + 1) != std::string::npos)
            throw DomainError("unexpected text after ']' in coefficient list");
        body = body.substr(1, close - 1);
    }
    std::vector<mpz_class> coeffs;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ','))
        coeffs.push_back(parse_integer(item));
    if (coeffs.empty())
        throw DomainError("empty coefficient list");
    return NumericalPolynomial(std::move(coeffs));
}

} // namespace kolchin
