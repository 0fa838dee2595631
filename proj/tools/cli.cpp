#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kolchin/bounds.hpp"
#include "kolchin/diffrank.hpp"
#include "kolchin/errors.hpp"
#include "kolchin/expsets.hpp"
#include "kolchin/lindiff.hpp"
#include "kolchin/numpoly.hpp"

namespace kolchin::cli {

namespace {

using Json = nlohmann::ordered_json;

// Malformed flag values that CLI11 itself cannot validate.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::uint64_t enumeration_cap = Limits{}.enumeration_cap;
    std::uint64_t matrix_cell_cap = Limits{}.matrix_cell_cap;
    std::uint64_t bound_magnitude_cap = Limits{}.bound_digits_cap;
    std::string format = "human";

    Limits limits() const
    {
        Limits l;
        l.enumeration_cap = enumeration_cap;
        l.matrix_cell_cap = matrix_cell_cap;
        l.bound_digits_cap = bound_magnitude_cap;
        return l;
    }
};

// What a command produced: a JSON document and its human rendering.
struct Output {
    Json doc = Json::object();
    std::vector<std::string> lines;
    int status = Ok;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DomainError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json poly_json(const NumericalPolynomial& p)
{
    return Json::parse(to_json(p));
}

std::string coeff_list(const NumericalPolynomial& p)
{
    std::string s = "[";
    for (std::size_t k = 0; k < p.standard_coeffs().size(); ++k) {
        if (k)
            s += ", ";
        s += p.standard_coeffs()[k].get_str();
    }
    return s + "]";
}

// The polynomial keys sit at the top level so the whole document parses back
// with parse_numerical_polynomial.
void put_polynomial(Output& o, const NumericalPolynomial& p)
{
    const Json j = poly_json(p);
    for (const auto& [k, v] : j.items())
        o.doc[k] = v;
    o.doc["rendered"] = render(p);
    o.lines.push_back(render(p));
    o.lines.push_back("standard_coeffs = " + coeff_list(p));
}

std::vector<mpz_class> parse_values(const std::string& text)
{
    std::string body = text;
    if (!body.empty() && body.front() == '[' && body.back() == ']')
        body = body.substr(1, body.size() - 2);
    std::vector<mpz_class> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        mpz_class v;
        if (item.empty() || (item.size() > 1 && item.front() == '+') || v.set_str(item, 10) != 0)
            throw UsageError("--values: '" + item + "' is not an integer");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("--values: expected a comma-separated list of integers");
    return out;
}

std::string ordering_name(std::strong_ordering o)
{
    if (o == std::strong_ordering::less)
        return "less";
    if (o == std::strong_ordering::greater)
        return "greater";
    return "equal";
}

std::string ordering_symbol(std::strong_ordering o)
{
    if (o == std::strong_ordering::less)
        return "<";
    if (o == std::strong_ordering::greater)
        return ">";
    return "=";
}

// Pre-scan so usage errors are reported in the requested format too.
bool wants_json(const std::vector<std::string>& args)
{
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--format=json")
            return true;
        if (args[k] == "--format" && k + 1 < args.size() && args[k + 1] == "json")
            return true;
    }
    const char* env = std::getenv("KOLCHIN_FORMAT");
    return env && std::string(env) == "json";
}

// CLI11 quietly ignores an environment value that fails validation; reject
// it instead of falling back to the default.
void check_environment()
{
    for (const char* name : {"KOLCHIN_ENUM_CAP", "KOLCHIN_MATRIX_CAP", "KOLCHIN_BOUND_CAP"}) {
        const char* value = std::getenv(name);
        if (!value || !*value)
            continue;
        const std::string text(value);
        const bool digits = std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
        if (!digits || text.find_first_not_of('0') == std::string::npos || text.size() > 19)
            throw UsageError(std::string(name) + "='" + text + "' is not a positive integer");
    }
    if (const char* f = std::getenv("KOLCHIN_FORMAT"); f && *f && std::string(f) != "human" && std::string(f) != "json")
        throw UsageError("KOLCHIN_FORMAT must be 'human' or 'json'");
}

void emit(const Output& o, const Config& cfg, std::ostream& out)
{
    if (cfg.format == "json") {
        out << o.doc.dump(2) << "\n";
        return;
    }
    for (const auto& line : o.lines)
        out << line << "\n";
}

int fail(bool json, const std::string& command, const std::string& kind, const std::string& message, int status,
         std::ostream& out, std::ostream& err)
{
    err << "error: " << message << "\n";
    if (json) {
        Json doc;
        if (!command.empty())
            doc["command"] = command;
        doc["error"] = {{"kind", kind}, {"message", message}, {"exit_status", status}};
        out << doc.dump(2) << "\n";
    }
    return status;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Kolchin polynomials, exponent-set volumes and effective bounds", "kolchin"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"human", "json"}))
        ->envname("KOLCHIN_FORMAT");
    app.add_option("--enum-cap", cfg.enumeration_cap, "Largest number of lattice points a brute-force count may visit")
        ->check(CLI::PositiveNumber)
        ->envname("KOLCHIN_ENUM_CAP");
    app.add_option("--matrix-cap", cfg.matrix_cell_cap, "Largest rows*columns of a prolongation matrix")
        ->check(CLI::PositiveNumber)
        ->envname("KOLCHIN_MATRIX_CAP");
    app.add_option("--bound-cap", cfg.bound_magnitude_cap, "Largest number of decimal digits of a bound")
        ->check(CLI::PositiveNumber)
        ->envname("KOLCHIN_BOUND_CAP");

    std::function<Output()> action;

    // omega-set
    std::size_t set_m = 0;
    std::string set_file;
    auto* omega_set = app.add_subcommand("omega-set", "Dimension polynomial of an exponent set");
    omega_set->add_option("--m", set_m, "Number of coordinates")->required()->check(CLI::PositiveNumber);
    omega_set->add_option("--file", set_file, "Generators, one 'u1,...,um' per line")
        ->required()
        ->check(CLI::ExistingFile);
    omega_set->callback([&] {
        action = [&] {
            const ExponentSet e = parse_exponent_set(read_file(set_file), set_m);
            Output o;
            o.doc["command"] = "omega-set";
            put_polynomial(o, dimension_polynomial(e));
            o.doc["stability_bound"] = stability_bound(e);
            o.lines.push_back("stability_bound = " + std::to_string(stability_bound(e)));
            return o;
        };
    });

    // volume
    std::uint64_t volume_s = 0;
    std::string volume_kernel = "auto";
    auto* volume_cmd = app.add_subcommand("volume", "Volume of an exponent set at level s, counted two ways");
    volume_cmd->add_option("--m", set_m, "Number of coordinates")->required()->check(CLI::PositiveNumber);
    volume_cmd->add_option("--file", set_file, "Generators, one 'u1,...,um' per line")
        ->required()
        ->check(CLI::ExistingFile);
    volume_cmd->add_option("--s", volume_s, "Level")->required();
    volume_cmd->add_option("--kernel", volume_kernel, "Enumeration kernel")
        ->check(CLI::IsMember({"auto", "scalar"}));
    volume_cmd->callback([&] {
        action = [&] {
            const ExponentSet e = parse_exponent_set(read_file(set_file), set_m);
            const Limits limits = cfg.limits();
            const mpz_class by_ie = volume_ie(e, mpz_class(static_cast<unsigned long>(volume_s)), limits);
            const std::uint64_t by_enum
                = volume_kernel == "scalar" ? volume_scalar(e, volume_s, limits) : volume(e, volume_s, limits);
            Output o;
            o.doc["command"] = "volume";
            o.doc["s"] = volume_s;
            o.doc["enumeration"] = std::to_string(by_enum);
            o.doc["inclusion_exclusion"] = by_ie.get_str();
            const bool agree = by_ie == mpz_class(std::to_string(by_enum));
            o.doc["agree"] = agree;
            o.lines.push_back("enumeration = " + std::to_string(by_enum));
            o.lines.push_back("inclusion_exclusion = " + by_ie.get_str());
            o.lines.push_back(agree ? "AGREE" : "DISAGREE");
            if (!agree)
                o.status = DomainFailure;
            return o;
        };
    });

    // bounds
    BoundInputs bound_in;
    auto* bounds_cmd = app.add_subcommand("bounds", "Order, regularity and domination bounds");
    bounds_cmd->add_option("--r", bound_in.r, "Order of the system")->required();
    bounds_cmd->add_option("--m", bound_in.m, "Number of derivations")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--n", bound_in.n, "Number of unknowns")->required()->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--d", bound_in.d, "Degree of the system (reported only)");
    bounds_cmd->callback([&] {
        action = [&] {
            const BoundReport rep = bounds(bound_in, cfg.limits());
            Output o;
            o.doc["command"] = "bounds";
            o.doc["r"] = bound_in.r;
            o.doc["m"] = bound_in.m;
            o.doc["n"] = bound_in.n;
            o.doc["d"] = bound_in.d;
            const std::pair<const char*, const mpz_class*> fields[] = {
                {"C", &rep.C}, {"D", &rep.D}, {"s0", &rep.s0}, {"s1", &rep.s1}, {"coeff_bound", &rep.coeff_bound}};
            for (const auto& [key, value] : fields) {
                o.doc[key] = value->get_str();
                o.lines.push_back(std::string(key) + " = " + value->get_str());
            }
            return o;
        };
    });

    // rank-compare
    std::size_t rank_m = 0;
    std::string rank_a;
    std::string rank_b;
    auto* rank_cmd = app.add_subcommand("rank-compare", "Compare two derivatives in the canonical orderly ranking");
    rank_cmd->add_option("--m", rank_m, "Number of derivations")->required()->check(CLI::PositiveNumber);
    rank_cmd->add_option("a", rank_a, "First derivative, e.g. d[1,0]x1")->required();
    rank_cmd->add_option("b", rank_b, "Second derivative")->required();
    rank_cmd->callback([&] {
        action = [&] {
            const DifferentialMonomial a = parse_monomial(rank_a, rank_m);
            const DifferentialMonomial b = parse_monomial(rank_b, rank_m);
            const std::strong_ordering c = compare_rank(a, b);
            Output o;
            o.doc["command"] = "rank-compare";
            o.doc["a"] = to_string(a);
            o.doc["b"] = to_string(b);
            o.doc["comparison"] = ordering_name(c);
            o.doc["leader"] = to_string(c == std::strong_ordering::less ? b : a);
            o.lines.push_back(to_string(a) + " " + ordering_symbol(c) + " " + to_string(b));
            return o;
        };
    });

    // omega-leaders
    std::size_t leaders_m = 0;
    std::size_t leaders_n = 0;
    std::string leaders_file;
    auto* leaders_cmd = app.add_subcommand("omega-leaders", "Kolchin polynomial of a leader profile");
    leaders_cmd->add_option("--m", leaders_m, "Number of derivations")->required()->check(CLI::PositiveNumber);
    leaders_cmd->add_option("--n", leaders_n, "Number of unknowns (default: largest index in the file)");
    leaders_cmd->add_option("--file", leaders_file, "Lines 'i: u1,...,um'")->required()->check(CLI::ExistingFile);
    leaders_cmd->callback([&] {
        action = [&] {
            LeaderProfile profile = parse_leader_profile(read_file(leaders_file), leaders_m, leaders_n);
            profile.canonicalize();
            Output o;
            o.doc["command"] = "omega-leaders";
            put_polynomial(o, kolchin_from_leaders(profile));
            o.doc["stability_bound"] = profile_stability_bound(profile);
            o.lines.push_back("stability_bound = " + std::to_string(profile_stability_bound(profile)));
            return o;
        };
    });

    // kolchin
    std::string system_file;
    bool check = false;
    bool want_type = false;
    std::optional<std::string> at_least;
    std::optional<std::string> equals;
    auto* kolchin_cmd = app.add_subcommand("kolchin", "Kolchin polynomial of a linear constant-coefficient system");
    kolchin_cmd->add_option("--system", system_file, "System file")->required()->check(CLI::ExistingFile);
    kolchin_cmd->add_flag("--check", check, "Also compute it from prolongation dimensions and compare");
    kolchin_cmd->add_flag("--type", want_type, "Print the differential type");
    kolchin_cmd->add_option("--at-least", at_least, "Decide omega >= P (JSON or 'a_m,...,a_0')");
    kolchin_cmd->add_option("--equals", equals, "Decide omega == P");
    kolchin_cmd->callback([&] {
        action = [&] {
            const LinearDiffSystem sys = parse_system(read_file(system_file));
            const GroebnerBasis gb = module_groebner_certified(sys);
            const NumericalPolynomial omega = kolchin_from_leaders(leader_profile(gb.basis));
            Output o;
            o.doc["command"] = "kolchin";
            put_polynomial(o, omega);
            if (want_type) {
                o.doc["type"] = differential_type(omega);
                o.lines.push_back("type = " + std::to_string(differential_type(omega)));
            }
            const auto decide = [&](const char* key, const std::string& text, bool want_equal) {
                const NumericalPolynomial p = parse_numerical_polynomial(text);
                const std::strong_ordering c = compare_eventual(omega, p);
                const bool yes = want_equal ? c == std::strong_ordering::equal : c != std::strong_ordering::less;
                o.doc[key] = {{"polynomial", poly_json(p)}, {"result", yes}};
                o.lines.push_back(std::string(key) + " " + render(p) + " = " + (yes ? "true" : "false"));
            };
            if (at_least)
                decide("at_least", *at_least, false);
            if (equals)
                decide("equals", *equals, true);
            if (check) {
                const ProlongationReport rep = kolchin_via_prolongation_report(sys, cfg.limits());
                const bool agree = rep.polynomial == omega;
                Json values = Json::array();
                for (const auto& v : rep.values)
                    values.push_back(v.get_str());
                o.doc["check"] = {{"groebner", poly_json(omega)},
                                  {"prolongation", poly_json(rep.polynomial)},
                                  {"margin", rep.margin},
                                  {"stable_from", rep.stable_from},
                                  {"sample_start", rep.sample_start},
                                  {"values", values},
                                  {"agree", agree}};
                o.lines.push_back("groebner: " + render(omega) + "  " + coeff_list(omega));
                o.lines.push_back("prolongation: " + render(rep.polynomial) + "  " + coeff_list(rep.polynomial));
                o.lines.push_back(agree ? "AGREE" : "DISAGREE");
                if (!agree)
                    o.status = DomainFailure;
            }
            return o;
        };
    });

    // interpolate
    std::string values_text;
    std::size_t interp_start = 0;
    std::optional<std::size_t> interp_m;
    auto* interp_cmd = app.add_subcommand("interpolate", "Numerical polynomial through values at consecutive points");
    interp_cmd->add_option("--values", values_text, "p(start), p(start+1), ... as 'v0,v1,...'")->required();
    interp_cmd->add_option("--start", interp_start, "First sample point");
    interp_cmd->add_option("--m", interp_m, "Degree bound (default: number of values - 1)");
    interp_cmd->callback([&] {
        action = [&] {
            const std::vector<mpz_class> values = parse_values(values_text);
            const std::size_t m = interp_m.value_or(values.size() - 1);
            Output o;
            o.doc["command"] = "interpolate";
            put_polynomial(o, interpolate(values, interp_start, m));
            return o;
        };
    });

    const bool json = wants_json(args);
    std::string command;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        check_environment();
        app.parse(reversed);
        command = app.get_subcommands().front()->get_name();
        Output o = action();
        emit(o, cfg, out);
        return o.status;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail(json, command, "usage", e.what(), UsageFailure, out, err);
    } catch (const UsageError& e) {
        return fail(json, command, "usage", e.what(), UsageFailure, out, err);
    } catch (const ResourceLimit& e) {
        return fail(json, command, "resource_limit", e.what(), ResourceFailure, out, err);
    } catch (const ParseError& e) {
        return fail(json, command, "parse", e.what(), DomainFailure, out, err);
    } catch (const DomainError& e) {
        return fail(json, command, "domain", e.what(), DomainFailure, out, err);
    }
}

} // namespace kolchin::cli
