// miop: verify | table | scan
#include "miop/ka.hpp"
#include "miop/positivity.hpp"
#include "miop/state_adding.hpp"
#include "miop/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace miop;

namespace {

// Bad configuration; reported with exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family, params, D, suite, fault = "none", campaign, case_file, out, format = "json";
    long N = -1;
    int M = -1;
    int jobs = 1;
    int decimal = 0;
    long m_max = 4;
    bool debug = false, class_b = false;
};

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> m;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("--params expects name=value pairs, got '" + item + "'");
        m[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return m;
}

// Family defaults overridden by --params.
ParameterSet inline_params(const Options& o) {
    if (o.family.empty()) throw ConfigError("--family is required");
    if (o.N < 0) throw ConfigError("--N is required");
    auto vals = default_parameters(parse_family(o.family), o.N).to_strings();
    vals.erase("family");
    vals.erase("N");
    for (const auto& [k, v] : parse_kv(o.params)) vals[k] = v;
    return make_parameters(o.family, o.N, vals);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// Accepts a case object, a list of cases, {"cases": [...]}, or a table/report
// carrying its config echo.
std::vector<VerificationCase> cases_from_json(const json& j) {
    std::vector<VerificationCase> out;
    if (j.is_array()) {
        for (const auto& e : j) {
            auto sub = cases_from_json(e);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    if (j.contains("config") && j["config"].contains("case")) return cases_from_json(j["config"]["case"]);
    if (j.contains("config") && j["config"].contains("cases")) return cases_from_json(j["config"]["cases"]);
    if (j.contains("cases")) return cases_from_json(j["cases"]);
    if (j.contains("case")) return cases_from_json(j["case"]);
    out.push_back(VerificationCase::from_json(j));
    return out;
}

VerificationCase inline_case(const Options& o) {
    VerificationCase c;
    c.params = inline_params(o);
    c.D = IndexSet::parse(o.D);
    if (o.suite.empty())
        c.suite = c.D.M() == 0 ? Suite::original : (c.D.all_above(c.params.N()) ? Suite::q : Suite::ka);
    else
        c.suite = parse_suite(o.suite);
    c.M = o.M >= 0 ? o.M : (c.suite == Suite::identity ? 2 : c.D.M());
    c.fault = parse_fault(o.fault);
    return c;
}

std::vector<VerificationCase> resolve_cases(const Options& o) {
    if (!o.case_file.empty()) return cases_from_json(read_json_file(o.case_file));
    if (!o.campaign.empty()) return named_campaign(o.campaign);
    return {inline_case(o)};
}

void write_output(const Options& o, const std::string& text) {
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw ConfigError("cannot write " + o.out);
    f << text;
}

std::string csv_cell(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return r + "\"";
}

json cases_echo(const std::vector<VerificationCase>& cases) {
    json a = json::array();
    for (const auto& c : cases) a.push_back(c.to_json());
    return a;
}

int cmd_verify(const Options& o) {
    auto cases = resolve_cases(o);
    json config = {{"subcommand", "verify"}, {"jobs", o.jobs}};
    if (!o.campaign.empty() && o.case_file.empty()) config["campaign"] = o.campaign;
    config["cases"] = cases_echo(cases);
    auto rep = campaign(cases, o.jobs, config);
    if (o.debug)
        for (const auto& c : rep.cases)
            for (const auto& ch : c.checks)
                std::cerr << status_name(ch.status) << "  " << c.vcase.label() << "  " << ch.name
                          << (ch.detail.empty() ? "" : "  (" + ch.detail + ")") << "\n";
    if (o.format == "csv") {
        std::ostringstream os;
        os << "# config: " << config.dump() << "\n";
        os << "case,check,status,evaluations,x,n,m,lhs,rhs\n";
        auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); };
        for (const auto& c : rep.cases)
            for (const auto& ch : c.checks) {
                os << csv_cell(c.vcase.label()) << "," << ch.name << "," << status_name(ch.status) << ","
                   << ch.evaluations << ",";
                if (ch.counterexample)
                    os << opt(ch.counterexample->x) << "," << opt(ch.counterexample->n) << ","
                       << opt(ch.counterexample->m) << "," << ch.counterexample->lhs << "," << ch.counterexample->rhs;
                else
                    os << ",,,,";
                os << "\n";
            }
        write_output(o, os.str());
    } else {
        write_output(o, rep.to_json().dump(2) + "\n");
    }
    auto s = rep.to_json(false)["summary"];
    std::cerr << "cases " << s["cases"] << ", checks passed " << s["pass"] << ", failed " << s["fail"] << ", info "
              << s["info"] << "\n";
    return rep.all_pass() ? 0 : 1;
}

// Table builder: exact strings by default, decimals with --decimal.
class Table {
public:
    explicit Table(int decimal) : decimal_(decimal) {}

    json cell(const std::function<Scalar()>& f) const {
        try {
            Scalar v = f();
            return decimal_ > 0 ? v.decimal(decimal_) : v.str();
        } catch (const std::domain_error&) {
            return nullptr;
        }
    }

    json column(long lo, long hi, const std::function<Scalar(long)>& f) const {
        json a = json::array();
        for (long x = lo; x <= hi; ++x) a.push_back(cell([&] { return f(x); }));
        return a;
    }

private:
    int decimal_;
};

json matrix_json(const Table& t, const std::function<Tridiagonal()>& build) {
    try {
        auto H = build();
        json m = json::object();
        auto list = [&](const std::vector<Scalar>& v) {
            json a = json::array();
            for (const auto& s : v) a.push_back(t.cell([&] { return s; }));
            return a;
        };
        m["lower"] = list(H.lower);
        m["diag"] = list(H.diag);
        m["upper"] = list(H.upper);
        return m;
    } catch (const std::domain_error&) {
        return nullptr;
    }
}

json grid_json(long lo, long hi) {
    json g = json::array();
    for (long x = lo; x <= hi; ++x) g.push_back(x);
    return g;
}

json table_for(const VerificationCase& c, const Options& o) {
    Table t(o.decimal);
    const auto& ps = c.params;
    json j = json::object();
    j["schema"] = "miop.table/1";
    j["config"] = {{"subcommand", "table"}, {"case", c.to_json()}, {"exact", o.decimal == 0}};
    if (o.decimal) j["config"]["decimal"] = o.decimal;
    json levels = json::array();
    if (c.suite == Suite::q) {
        QSystem sys(ps, c.D, c.fault);
        j["kind"] = "added";
        j["grid"] = grid_json(sys.lo(), sys.hi());
        j["regular"] = sys.regular();
        j["denominator"] = t.column(sys.lo(), sys.hi() + 1, [&](long x) { return sys.xi(x); });
        j["B"] = t.column(sys.lo(), sys.hi(), [&](long x) { return sys.potential_B(x); });
        j["D"] = t.column(sys.lo(), sys.hi(), [&](long x) { return sys.potential_D(x); });
        j["weight"] = t.column(sys.lo(), sys.hi(), [&](long x) { return sys.weight(x); });
        j["matrix"] = matrix_json(t, [&] { return sys.matrix(); });
        for (long n : sys.levels())
            levels.push_back({{"n", n},
                              {"energy", t.cell([&] { return energy(ps, n); })},
                              {"norm_sq", t.cell([&] { return sys.norm_sq(n); })},
                              {"values", t.column(sys.lo(), sys.hi(), [&](long x) { return sys.q(n, x); })}});
        if (o.debug) {
            json dbg = json::array();
            for (std::size_t i = 0; i < c.D.labels().size(); ++i)
                for (long x = sys.lo(); x <= sys.hi(); ++x) {
                    auto e = limit_expansion(ps, c.D, i, x);
                    auto list = [&](const std::vector<Scalar>& v) {
                        json a = json::array();
                        for (const auto& s : v) a.push_back(t.cell([&] { return s; }));
                        return a;
                    };
                    dbg.push_back({{"label", c.D[i]},
                                   {"x", x},
                                   {"X", list(e.X)},
                                   {"Y", list(e.Y)},
                                   {"R", list(e.R)},
                                   {"B_const", e.B_const},
                                   {"d_prime_monic_sq", t.cell([&] { return e.d_prime_monic_sq; })}});
                }
            j["limit_expansion"] = dbg;
        }
    } else if (c.suite == Suite::ka) {
        KASystem sys(ps, c.D, c.fault);
        j["kind"] = "deleted";
        j["grid"] = grid_json(sys.lo(), sys.hi());
        j["regular"] = sys.regular();
        j["denominator"] = t.column(sys.lo(), sys.hi() + 1, [&](long x) { return sys.xi(x); });
        j["B"] = t.column(sys.lo(), sys.hi(), [&](long x) { return sys.potential_B(x); });
        j["D"] = t.column(sys.lo(), sys.hi(), [&](long x) { return sys.potential_D(x); });
        j["weight"] = t.column(sys.lo(), sys.hi(), [&](long x) { return sys.weight(x); });
        j["matrix"] = matrix_json(t, [&] { return sys.matrix(); });
        for (long n : sys.levels())
            levels.push_back({{"n", n},
                              {"energy", t.cell([&] { return energy(ps, n); })},
                              {"norm_sq", t.cell([&] { return sys.norm_sq(n); })},
                              {"values", t.column(sys.lo(), sys.hi(), [&](long x) { return sys.p(n, x); })}});
    } else {
        const long N = ps.N();
        j["kind"] = "original";
        j["grid"] = grid_json(0, N);
        j["B"] = t.column(0, N, [&](long x) { return potential_B(ps, x); });
        j["D"] = t.column(0, N, [&](long x) { return potential_D(ps, x); });
        j["weight"] = t.column(0, N, [&](long x) { return phi0_squared(ps, x); });
        for (long n = 0; n <= N; ++n)
            levels.push_back({{"n", n},
                              {"energy", t.cell([&] { return energy(ps, n); })},
                              {"norm_sq", t.cell([&] { return norm_squared(ps, static_cast<int>(n)); })},
                              {"values", t.column(0, N, [&](long x) { return poly(ps, static_cast<int>(n), x); })}});
    }
    j["levels"] = levels;
    return j;
}

std::string table_csv(const json& j) {
    std::ostringstream os;
    os << "# config: " << j["config"].dump() << "\n";
    os << "quantity,n,x,value\n";
    const auto& grid = j["grid"];
    auto val = [](const json& v) { return v.is_null() ? std::string() : v.get<std::string>(); };
    for (const char* q : {"B", "D", "weight"})
        for (std::size_t i = 0; i < grid.size(); ++i) os << q << ",," << grid[i] << "," << val(j[q][i]) << "\n";
    if (j.contains("denominator"))
        for (std::size_t i = 0; i < j["denominator"].size(); ++i)
            os << "denominator,," << grid[0].get<long>() + static_cast<long>(i) << "," << val(j["denominator"][i])
               << "\n";
    for (const auto& l : j["levels"]) {
        os << "energy," << l["n"] << ",," << val(l["energy"]) << "\n";
        os << "norm_sq," << l["n"] << ",," << val(l["norm_sq"]) << "\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            os << "value," << l["n"] << "," << grid[i] << "," << val(l["values"][i]) << "\n";
    }
    return os.str();
}

int cmd_table(const Options& o) {
    auto cases = !o.case_file.empty() ? cases_from_json(read_json_file(o.case_file)) : std::vector{inline_case(o)};
    if (cases.size() != 1) throw ConfigError("table expects exactly one case");
    auto c = cases[0];
    if (c.suite == Suite::identity) throw ConfigError("no table for the identity suite");
    json j;
    try {
        j = table_for(c, o);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    write_output(o, o.format == "csv" ? table_csv(j) : j.dump(2) + "\n");
    return 0;
}

int cmd_scan(const Options& o) {
    auto ps = inline_params(o);
    const int M = o.M >= 0 ? o.M : 1;
    std::vector<ScanRow> rows;
    if (o.class_b)
        rows = class_b_search(ps.family(), ps.N(), M, o.m_max, o.jobs);
    else
        rows = scan_added(ps, M, o.m_max, o.jobs);
    json config = {{"subcommand", "scan"}, {"params", params_to_json(ps)}, {"M", M}, {"m_max", o.m_max},
                   {"class_b_search", o.class_b}};
    std::ostringstream os;
    if (o.format == "json") {
        json a = json::array();
        for (const auto& r : rows) {
            json e = {{"params", params_to_json(r.params)}, {"D", r.D.labels()}, {"class", std::string(1, r.cls)},
                      {"parity", r.parity}, {"positive", r.verdict.positive()}};
            if (r.verdict.first_violation) e["first_violation"] = *r.verdict.first_violation;
            a.push_back(e);
        }
        os << json({{"schema", "miop.scan/1"}, {"config", config}, {"rows", a}}).dump(2) << "\n";
    } else {
        os << "# config: " << config.dump() << "\n" << scan_csv_header() << "\n";
        for (const auto& r : rows) os << scan_csv_row(r) << "\n";
    }
    write_output(o, os.str());
    return 0;
}

void add_system_flags(CLI::App* app, Options& o) {
    app->add_option("--family", o.family, "family tag, e.g. K, qR, dqH");
    app->add_option("--N", o.N, "grid size parameter");
    app->add_option("--params", o.params, "name=value list, e.g. p=1/2,q=1/3 (defaults fill the rest)");
    app->add_option("--D", o.D, "index set, e.g. 5,7");
    app->add_option("--M", o.M, "number of labels (scan) or largest M (identity suite)");
    app->add_option("--out", o.out, "output file (default stdout)");
    app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    app->add_flag("--debug", o.debug, "extra diagnostics");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of multi-indexed orthogonal polynomial systems"};
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_system_flags(verify, o);
    verify->add_option("--campaign", o.campaign, "named campaign: default, identity, empty");
    verify->add_option("--case", o.case_file, "case file (JSON)");
    verify->add_option("--suite", o.suite, "original, identity, ka or q (inferred from D)");
    verify->add_option("--fault", o.fault, "inject a prefactor fault");

    auto* table = app.add_subcommand("table", "export exact values of a system");
    add_system_flags(table, o);
    table->add_option("--case", o.case_file, "case file or earlier table output");
    table->add_option("--suite", o.suite, "original, ka or q (inferred from D)");
    table->add_option("--fault", o.fault, "inject a prefactor fault");
    table->add_option("--decimal", o.decimal, "render k-digit decimals instead of exact fractions")
        ->check(CLI::NonNegativeNumber);

    auto* scan = app.add_subcommand("scan", "positivity scan of added-state systems");
    add_system_flags(scan, o);
    scan->add_option("--m-max", o.m_max, "largest m_j = d_j - N - 1");
    scan->add_flag("--class-b", o.class_b, "search along the steering parameter instead");
    o.format = "json";
    scan->callback([&] {
        if (scan->count("--format") == 0) o.format = "csv";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(o);
        if (table->parsed()) return cmd_table(o);
        return cmd_scan(o);
    } catch (const ConfigError& e) {
        std::cerr << "miop: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "miop: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "miop: " << e.what() << "\n";
        return 1;
    }
}
