#include "miop/verify.hpp"

#include "miop/ka.hpp"
#include "miop/parallel.hpp"
#include "miop/positivity.hpp"
#include "miop/state_adding.hpp"
#include "miop/structural.hpp"

#include <chrono>
#include <stdexcept>

namespace miop {

Suite parse_suite(const std::string& name) {
    if (name == "original") return Suite::original;
    if (name == "identity") return Suite::identity;
    if (name == "ka") return Suite::ka;
    if (name == "q") return Suite::q;
    throw std::invalid_argument("unknown suite: " + name);
}

std::string suite_name(Suite s) {
    switch (s) {
    case Suite::original: return "original";
    case Suite::identity: return "identity";
    case Suite::ka: return "ka";
    case Suite::q: return "q";
    }
    return "?";
}

std::string status_name(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::info: return "info";
    }
    return "?";
}

ParameterSet make_parameters(const std::string& family, long N, const std::map<std::string, std::string>& values) {
    FamilyId f = parse_family(family);
    std::map<std::string, Scalar> vals;
    Scalar q(1, 2);
    for (const auto& [k, v] : values) {
        if (k == "q")
            q = Scalar::parse(v);
        else
            vals[k] = Scalar::parse(v);
    }
    return ParameterSet(f, N, vals, q);
}

json params_to_json(const ParameterSet& ps) {
    json j = json::object();
    j["family"] = family_name(ps.family());
    j["N"] = ps.N();
    json p = json::object();
    for (std::size_t i = 0; i < ps.values().size(); ++i) p[ps.info().params[i]] = ps.values()[i].str();
    if (ps.is_q()) p["q"] = ps.q().str();
    j["params"] = p;
    return j;
}

ParameterSet params_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j.contains("N"))
        throw std::invalid_argument("case needs 'family' and 'N'");
    std::map<std::string, std::string> vals;
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw std::invalid_argument("'params' must be an object");
        for (const auto& [k, v] : j["params"].items())
            vals[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return make_parameters(j["family"].get<std::string>(), j["N"].get<long>(), vals);
}

json VerificationCase::to_json() const {
    json j = params_to_json(params);
    j["suite"] = suite_name(suite);
    j["D"] = D.labels();
    if (suite == Suite::identity) j["M"] = M;
    if (fault != Fault::none) j["fault"] = fault_name(fault);
    return j;
}

VerificationCase VerificationCase::from_json(const json& j) {
    try {
        VerificationCase c;
        c.params = params_from_json(j);
        c.suite = parse_suite(j.value("suite", std::string("original")));
        if (j.contains("D")) {
            const auto& d = j["D"];
            if (d.is_string())
                c.D = IndexSet::parse(d.get<std::string>());
            else
                c.D = IndexSet(d.get<std::vector<long>>());
        }
        c.M = j.value("M", c.suite == Suite::identity ? 2 : c.D.M());
        if (j.contains("fault")) c.fault = parse_fault(j["fault"].get<std::string>());
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed case: ") + e.what());
    }
}

std::string VerificationCase::label() const {
    std::string s = suite_name(suite) + " " + params.describe();
    if (suite == Suite::ka || suite == Suite::q) s += " D=" + D.str();
    if (suite == Suite::identity) s += " M<=" + std::to_string(M);
    if (fault != Fault::none) s += " fault=" + fault_name(fault);
    return s;
}

std::size_t CaseReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == Status::fail;
    return n;
}

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += c.failures();
    return n;
}

json Report::to_json(bool timing) const {
    json j = json::object();
    j["schema"] = "miop.report/1";
    j["config"] = config;
    std::size_t pass = 0, fail = 0, info = 0;
    json cs = json::array();
    for (const auto& c : cases) {
        json jc = json::object();
        jc["case"] = c.vcase.to_json();
        jc["label"] = c.vcase.label();
        json checks = json::array();
        for (const auto& ch : c.checks) {
            json k = json::object();
            k["name"] = ch.name;
            k["status"] = status_name(ch.status);
            k["evaluations"] = ch.evaluations;
            if (!ch.detail.empty()) k["detail"] = ch.detail;
            if (ch.counterexample) {
                json cx = json::object();
                if (ch.counterexample->x) cx["x"] = *ch.counterexample->x;
                if (ch.counterexample->n) cx["n"] = *ch.counterexample->n;
                if (ch.counterexample->m) cx["m"] = *ch.counterexample->m;
                cx["lhs"] = ch.counterexample->lhs;
                cx["rhs"] = ch.counterexample->rhs;
                k["counterexample"] = cx;
            }
            pass += ch.status == Status::pass;
            fail += ch.status == Status::fail;
            info += ch.status == Status::info;
            checks.push_back(k);
        }
        jc["checks"] = checks;
        jc["status"] = c.failures() ? "fail" : "pass";
        if (timing) jc["elapsed_ms"] = c.elapsed_ms;
        cs.push_back(jc);
    }
    j["cases"] = cs;
    j["summary"] = {{"cases", cases.size()}, {"pass", pass}, {"fail", fail}, {"info", info},
                    {"status", fail ? "fail" : "pass"}};
    return j;
}

namespace {

// Accumulates exact comparisons for one named check and keeps the first
// counterexample.
class Check {
public:
    explicit Check(std::string name) { r_.name = std::move(name); }

    void eq(const Scalar& lhs, const Scalar& rhs, std::optional<long> x = {}, std::optional<long> n = {},
            std::optional<long> m = {}) {
        ++r_.evaluations;
        if (lhs == rhs) return;
        fail_with(lhs.str(), rhs.str(), x, n, m);
    }

    void truth(bool ok, const std::string& what, std::optional<long> x = {}, std::optional<long> n = {}) {
        ++r_.evaluations;
        if (ok) return;
        fail_with(what, "true", x, n, {});
    }

    void fail(const std::string& detail) {
        r_.status = Status::fail;
        if (r_.detail.empty()) r_.detail = detail;
    }

    void info(const std::string& detail) {
        if (r_.status == Status::pass) r_.status = Status::info;
        r_.detail = detail;
    }

    CheckResult result() const { return r_; }

private:
    void fail_with(const std::string& lhs, const std::string& rhs, std::optional<long> x, std::optional<long> n,
                   std::optional<long> m) {
        r_.status = Status::fail;
        if (!r_.counterexample) r_.counterexample = Counterexample{x, n, m, lhs, rhs};
    }

    CheckResult r_;
};

// Runs body with a fresh Check; an exception becomes a failure of that check.
template <class F>
void run_check(std::vector<CheckResult>& out, const std::string& name, F&& body) {
    Check c(name);
    try {
        body(c);
    } catch (const std::exception& e) {
        c.fail(std::string("exception: ") + e.what());
    }
    out.push_back(c.result());
}

void original_suite(const VerificationCase& vc, std::vector<CheckResult>& out) {
    const auto& ps = vc.params;
    const long N = ps.N();
    run_check(out, "range", [&](Check& c) { c.truth(in_range(ps), "parameters in range"); });
    run_check(out, "normalization", [&](Check& c) {
        for (int n = 0; n <= N; ++n) c.eq(poly(ps, n, 0), Scalar(1), 0, n);
    });
    run_check(out, "difference_equation", [&](Check& c) {
        for (int n = 0; n <= N; ++n)
            for (long x = 0; x <= N; ++x) {
                Scalar lhs = potential_B(ps, x) * (poly(ps, n, x) - poly(ps, n, x + 1)) +
                             potential_D(ps, x) * (poly(ps, n, x) - (x > 0 ? poly(ps, n, x - 1) : Scalar(0)));
                c.eq(lhs, energy(ps, n) * poly(ps, n, x), x, n);
            }
    });
    run_check(out, "orthogonality", [&](Check& c) {
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= N; ++m) {
                Scalar s(0);
                for (long x = 0; x <= N; ++x) s += phi0_squared(ps, x) * poly(ps, n, x) * poly(ps, m, x);
                c.eq(s, n == m ? norm_squared_inv(ps, n) : Scalar(0), {}, n, m);
            }
    });
    run_check(out, "ground_state_closed_form", [&](Check& c) {
        for (long x = 0; x <= N; ++x) c.eq(phi0_squared(ps, x), phi0_squared_closed(ps, x), x);
    });
    run_check(out, "leading_coefficient", [&](Check& c) {
        for (int n = 0; n <= N; ++n) c.eq(leading_coeff(ps, n), leading_coeff_universal(ps, n), {}, n);
    });
    run_check(out, "monic_difference_equation_extended", [&](Check& c) {
        long skipped = 0;
        for (int n = 0; n <= N + 4; ++n)
            for (long x = -3; x <= N + 2; ++x) {
                Scalar lhs;
                try {
                    lhs = potential_B(ps, x) * (poly_monic(ps, n, x) - poly_monic(ps, n, x + 1)) +
                          potential_D(ps, x) * (poly_monic(ps, n, x) - poly_monic(ps, n, x - 1));
                } catch (const std::domain_error&) {
                    ++skipped;
                    continue;
                }
                c.eq(lhs, energy(ps, n) * poly_monic(ps, n, x), x, n);
            }
        if (skipped) c.info(std::to_string(skipped) + " points at poles of B or D skipped");
    });
}

void identity_suite(const VerificationCase& vc, std::vector<CheckResult>& out) {
    const auto& ps = vc.params;
    const long N = ps.N();
    const auto rp = ps.reflected();
    const int Mmax = std::max(1, vc.M);

    run_check(out, "casoratian_identities", [&](Check& c) {
        // scaling by a common factor and the nested-Casoratian identity, on the monic polynomials
        GridFunction g = seed_poly_monic(ps.shifted(1, 0), 1);
        for (int n = 0; n <= Mmax + 1; ++n)
            for (long x = -2; x <= N + 1; ++x) {
                std::vector<GridFunction> fs, gfs;
                for (int k = 0; k < n; ++k) {
                    auto f = seed_poly_monic(ps, 2 * k + 1);
                    fs.push_back(f);
                    gfs.push_back({[f, g](long y) { return g(y) * f(y); }, 0, 0, ""});
                }
                Scalar pg(1);
                for (int k = 0; k < n; ++k) pg *= g(x + k);
                c.eq(casoratian(gfs, x), pg * casoratian(fs, x), x, n);
            }
        for (int n = 0; n <= Mmax; ++n)
            for (long x = -2; x <= N + 1; ++x) {
                std::vector<GridFunction> fs;
                for (int k = 0; k < n; ++k) fs.push_back(seed_poly_monic(ps, k + 1));
                auto fg = fs, fh = fs, fgh = fs;
                fg.push_back(seed_poly_monic(ps, 5));
                fh.push_back(seed_poly_monic(ps, 6));
                fgh.push_back(seed_poly_monic(ps, 5));
                fgh.push_back(seed_poly_monic(ps, 6));
                GridFunction wg{[fg](long y) { return casoratian(fg, y); }, 0, 0, ""};
                GridFunction wh{[fh](long y) { return casoratian(fh, y); }, 0, 0, ""};
                c.eq(casoratian({wg, wh}, x), casoratian(fs, x + 1) * casoratian(fgh, x), x, n);
            }
    });

    run_check(out, "varphi_M_quotients", [&](Check& c) {
        for (int M = 0; M <= Mmax; ++M)
            for (long x = -3; x <= N + 3; ++x) {
                c.eq(varphi_M(ps, M, x), varphi_M_closed(ps, M, x), x, M);
                Scalar r1(1), r2(1), r3(1);
                for (int j = 1; j <= M; ++j) {
                    r1 *= varphi(ps.shifted(M - j, 0), x + j - 1);
                    r2 *= varphi(ps.shifted(j - 1, 0), x);
                    r3 *= varphi(ps, x + j - 1);
                }
                c.eq(varphi_M(ps, M + 1, x), varphi_M(ps, M, x) * r1, x, M);
                c.eq(varphi_M(ps, M + 1, x), varphi_M(ps, M, x + 1) * r2, x, M);
                c.eq(varphi_M(ps, M + 1, x), varphi_M(ps.shifted(1, 0), M, x) * r3, x, M);
            }
    });

    run_check(out, "varphi_M_reflection", [&](Check& c) {
        for (int M = 0; M <= Mmax; ++M)
            for (long x = -3; x <= N + 3; ++x)
                c.eq(varphi_M(rp, M, x - N - 1) * varphi_M(ps, M, N + 1), varphi_M(ps, M, x) * varphi_M(rp, M, 0),
                     x, M);
    });

    run_check(out, "potential_shifts", [&](Check& c) {
        for (int j = 1; j <= Mmax; ++j)
            for (long x = 0; x <= N - j; ++x) {
                Scalar rb(1), rd(1);
                for (int l = 1; l <= j; ++l) {
                    auto s = ps.shifted(j - l, 0);
                    rb *= ps.kappa() * varphi(s, x + l - 1) / varphi(s, x + l);
                    auto s2 = ps.shifted(l - 1, 0);
                    rd *= ps.kappa() * varphi(s2, x) / varphi(s2, x - 1);
                }
                c.eq(potential_B(ps, x + j), potential_B(ps.shifted(j, 0), x) * rb, x, j);
                c.eq(potential_D(ps, x), potential_D(ps.shifted(j, 0), x) * rd, x, j);
            }
    });

    run_check(out, "potential_shifts_reflected_grid", [&](Check& c) {
        long used = 0;
        for (int M = 1; M <= Mmax; ++M) {
            auto up = ps.shifted(1, 0), upM = ps.shifted(M, 0), dn = ps.shifted(0, -M);
            for (long x = -M - 6; x <= N + 6; ++x) {
                Scalar l0 = lambda_fn(ps, x), lM = lambda_fn(ps, x + M);
                Scalar u0 = lambda_fn(up, x), uM = lambda_fn(up, x + M);
                Scalar um1 = lambda_fn(up, x - 1), uM1 = lambda_fn(up, x + M - 1);
                if (l0.is_zero() || lM.is_zero() || u0.is_zero() || uM1.is_zero()) continue;
                Scalar kM = ps.kappa().pow(M);
                c.eq(potential_B(dn, x + M), kM * potential_B(upM, x) * l0 / lM * uM / u0, x, M);
                c.eq(potential_D(dn, x + M), kM * potential_D(upM, x) * lM / l0 * um1 / uM1, x, M);
                ++used;
            }
        }
        c.truth(used >= 4, "enough points with nonzero Lambda");
    });

    run_check(out, "lambda_M_closed_form", [&](Check& c) {
        long used = 0;
        for (int M = 1; M <= Mmax && M <= N; ++M)
            for (long x = -8; x <= N + 8; ++x) {
                Scalar def;
                try {
                    def = lambda_M_def(ps, M, x);
                } catch (const std::domain_error&) {
                    continue;
                }
                c.eq(def, lambda_M(ps, M, x), x, M);
                ++used;
            }
        c.truth(used >= 6, "enough points where the defining ratio is finite");
        c.info("checked where the defining ratio is finite (off the grid)");
    });

    run_check(out, "ground_state_lambda_identity", [&](Check& c) {
        for (int M = 1; M <= Mmax && M <= N; ++M) {
            auto upM = ps.shifted(M, 0), dn = ps.shifted(0, -M);
            for (long x = 0; x <= N - M; ++x)
                c.eq(phi0_squared(upM, x) * lambda_M(ps, M, x),
                     phi0_squared(dn, x + M) / phi0_squared(dn, M) * lambda_M(ps, M, 0), x, M);
        }
    });

    run_check(out, "lambda_ratio_identity", [&](Check& c) {
        for (int M = 1; M <= Mmax; ++M) {
            auto up = ps.shifted(1, 0), upM = ps.shifted(M, 0), dn = ps.shifted(0, -M);
            for (long x = -M - 3; x <= N + 3; ++x) {
                Scalar num(1), den(1);
                for (int j = 1; j <= M + 1; ++j) num *= lambda_fn(ps, x + j - 1);
                for (int j = 1; j <= M; ++j) den *= lambda_fn(up, x + j - 1);
                if (!den.is_zero()) c.eq(num / den, lambda_fn(dn, x + M) * lambda_ratio_factor(ps, M), x, M);
                Scalar base = lambda_fn(upM, x);
                if (base.is_zero()) continue;
                for (int j = 1; j <= M + 1; ++j)
                    c.eq(lambda_shift_ratio(ps, M, j, x), lambda_fn(ps, x + j - 1) / base, x, j);
            }
        }
    });

    run_check(out, "factorization", [&](Check& c) {
        for (int m = 0; m <= 3; ++m)
            for (long x = -3; x <= N + 3; ++x)
                c.eq(poly_monic(ps, static_cast<int>(N + 1 + m), x),
                     lambda_fn(ps, x) * ps.rho().pow((N + 1) * m) * poly_monic(rp, m, x - N - 1), x, N + 1 + m);
    });

    run_check(out, "lambda_closed_form", [&](Check& c) {
        for (long x = -3; x <= N + 3; ++x) c.eq(lambda_fn(ps, x), lambda_closed(ps, x), x);
    });
}

void ka_suite(const VerificationCase& vc, std::vector<CheckResult>& out) {
    const auto& ps = vc.params;
    const auto& D = vc.D;
    const long N = ps.N();
    std::unique_ptr<KASystem> sys;
    run_check(out, "construct", [&](Check&) { sys = std::make_unique<KASystem>(ps, D, vc.fault); });
    if (!sys) return;
    const int M = D.M();
    run_check(out, "admissibility", [&](Check& c) {
        if (!sys->admissible()) c.info("D is not admissible; algebraic checks still apply");
    });
    bool regular = false;
    run_check(out, "denominator_nonzero", [&](Check& c) {
        regular = sys->regular();
        if (!regular) c.info("denominator vanishes on the grid; weight singular");
    });
    run_check(out, "normalization", [&](Check& c) {
        c.eq(sys->xi(0), Scalar(1), 0);
        for (long n : sys->levels()) c.eq(sys->p(n, 0), Scalar(1), 0, n);
        for (long d : D.labels())
            for (long x = 0; x <= sys->hi(); ++x) c.eq(sys->p(d, x), Scalar(0), x, d);
    });
    run_check(out, "degrees", [&](Check& c) {
        if (M == 0) return;
        auto cands = outward_candidates(0, -1, 80);
        auto fx = fit_in_eta(ps.shifted(M - 1, 0), [&](long x) { return ka_xi(ps, D, x); },
                             static_cast<int>(D.ell()), cands);
        c.truth(fx.consistent, "denominator fit consistent");
        c.eq(Scalar(fx.poly.degree()), Scalar(D.ell()));
        for (long n : sys->levels()) {
            auto fp = fit_in_eta(ps.shifted(M, 0), [&](long x) { return ka_p(ps, D, n, x); },
                                 static_cast<int>(D.ell_ka() + n), cands);
            c.truth(fp.consistent, "polynomial fit consistent", {}, n);
            c.eq(Scalar(fp.poly.degree()), Scalar(D.ell_ka() + n), {}, n);
        }
    });
    run_check(out, "monic_bridge", [&](Check& c) {
        Scalar cd(1);
        for (long d : D.labels()) cd *= leading_coeff(ps, static_cast<int>(d));
        for (long x = 0; x <= sys->hi(); ++x) {
            c.eq(c_eta(ps, D.labels()) * ka_xi_monic(ps, D, x), sys->C() * sys->xi(x) / cd, x);
            for (long n : sys->levels())
                c.eq(c_eta_n(ps, D.labels(), n) * ka_p_monic(ps, D, n, x),
                     sys->C_n(n) * sys->p(n, x) / (cd * leading_coeff(ps, static_cast<int>(n))), x, n);
        }
    });
    run_check(out, "forward_shift", [&](Check& c) {
        auto up = ps.shifted(1, 0);
        for (int n = 1; n <= N; ++n)
            for (long x = 0; x < N; ++x)
                c.eq(potential_B(ps, 0) / varphi(ps, x) * (poly(ps, n, x) - poly(ps, n, x + 1)),
                     energy(ps, n) * poly(up, n - 1, x), x, n);
        bool shiftable = M > 0;
        for (long d : D.labels()) shiftable = shiftable && d >= 1;
        if (!shiftable) return;
        auto Dm = D.shifted(-1);
        for (long x = 0; x <= sys->hi() + 1; ++x) c.eq(sys->p(0, x), ka_xi(up, Dm, x), x, 0);
        if (!regular) return;
        auto H = sys->matrix();
        for (long x = 0; x <= sys->hi(); ++x) {
            Scalar k = ps.kappa().pow(M);
            auto upM = ps.shifted(M, 0);
            Scalar b = potential_B(upM, x), d = potential_D(upM, x);
            Scalar diag(0);
            if (!b.is_zero()) diag += k * b * sys->xi(x) / sys->xi(x + 1) * ka_xi(up, Dm, x + 1) / ka_xi(up, Dm, x);
            if (!d.is_zero()) diag += k * d * sys->xi(x + 1) / sys->xi(x) * ka_xi(up, Dm, x - 1) / ka_xi(up, Dm, x);
            c.eq(H.diag[static_cast<std::size_t>(x)], diag, x);
        }
    });
    if (!regular) return;
    run_check(out, "boundary", [&](Check& c) {
        auto H = sys->matrix();
        c.eq(H.outer_lower(), Scalar(0), sys->lo());
        c.eq(H.outer_upper(), Scalar(0), sys->hi());
        c.eq(Scalar(static_cast<long>(H.size())), Scalar(N - M + 1));
    });
    run_check(out, "eigen_relation", [&](Check& c) {
        auto H = sys->matrix();
        for (long n : sys->levels()) {
            auto v = sys->p_vector(n);
            auto hv = H.apply(v);
            for (std::size_t i = 0; i < v.size(); ++i)
                c.eq(hv[i], energy(ps, n) * v[i], static_cast<long>(i), n);
        }
    });
    run_check(out, "orthogonality", [&](Check& c) {
        for (long n : sys->levels())
            for (long m : sys->levels()) {
                Scalar s = sys->orthogonality_sum(n, m);
                c.eq(s, n == m ? Scalar(1) / sys->norm_sq(n) : Scalar(0), {}, n, m);
            }
    });
    run_check(out, "positivity", [&](Check& c) {
        auto v = scan(*sys);
        bool expect = sys->admissible() && in_range(ps.shifted(M, 0));
        if (expect)
            c.truth(v.positive(), "admissible D gives a positive weight", v.first_violation);
        else
            c.info(v.positive() ? "weight positive" : "weight not positive");
    });
}

void q_suite(const VerificationCase& vc, std::vector<CheckResult>& out) {
    const auto& ps = vc.params;
    const auto& D = vc.D;
    const long N = ps.N();
    std::unique_ptr<QSystem> sys;
    run_check(out, "construct", [&](Check&) { sys = std::make_unique<QSystem>(ps, D, vc.fault); });
    if (!sys) return;
    const int M = D.M();
    const auto Dp = sys->Dprime();
    bool regular = false;
    run_check(out, "denominator_nonzero", [&](Check& c) {
        regular = sys->regular();
        if (!regular) c.info("denominator vanishes on the grid; weight singular");
    });
    run_check(out, "denominator_degree", [&](Check& c) {
        int deg = static_cast<int>(Dp.ell());
        auto f = fit_in_eta(ps.shifted(M - 1, 0), [&](long x) { return sys->xi_monic(x); }, deg,
                            outward_candidates(-1, 0, 3 * deg + 16));
        c.truth(f.consistent, "denominator fit consistent");
        c.eq(Scalar(f.poly.degree()), Scalar(deg));
        c.eq(f.poly.leading(), Scalar(1));
    });
    run_check(out, "degree_monic", [&](Check& c) {
        for (long n : sys->levels()) {
            const auto& f = sys->q_fit(n);
            c.truth(f.consistent, "fit consistent", {}, n);
            c.eq(Scalar(f.poly.degree()), Scalar(Dp.ell() + n), {}, n);
            c.eq(f.poly.leading(), Scalar(1), {}, n);
        }
    });
    run_check(out, "divisibility", [&](Check& c) {
        auto dx = ka_xi_division(ps, D);
        c.truth(dx.consistent && dx.divisible, "denominator divisible by the Lambda product");
        for (long n : {0L, N}) {
            auto dp = ka_p_division(ps, D, n);
            c.truth(dp.consistent && dp.divisible, "polynomial divisible by the Lambda product", {}, n);
        }
        Scalar k = ka_xi_factor_constant(ps, D);
        for (long x = -M - 2; x <= N + 2; ++x) {
            Scalar rhs;
            try {
                rhs = k * lambda_product(ps, M, x) * ka_xi_monic(ps.reflected(), Dp, x - N - 1);
            } catch (const std::domain_error&) {
                continue;
            }
            c.eq(ka_xi_monic(ps, D, x), rhs, x);
        }
    });
    run_check(out, "vanishing_beyond_spectrum", [&](Check& c) {
        for (long n = N + 1; n <= N + 4; ++n) {
            if (D.contains(n)) continue;
            for (long x = sys->lo(); x <= sys->hi(); ++x) c.eq(sys->q_monic(n, x), Scalar(0), x, n);
        }
    });
    run_check(out, "third_term_irrelevant", [&](Check& c) {
        auto coord = ps.shifted(M, 0);
        for (std::size_t i = 0; i < D.labels().size(); ++i) {
            long n = D[i];
            int deg = static_cast<int>(Dp.ell() + n + N + M + 1);
            auto cands = outward_candidates(sys->lo(), sys->hi(), 3 * deg + 16);
            auto without = fit_in_eta(
                coord, [&](long x) { return q_monic_raw(ps, D, n, x, vc.fault, &sys->cache(), false); }, deg, cands);
            c.truth(without.consistent, "fit consistent", {}, n);
            for (long x = sys->lo(); x <= sys->hi(); ++x) c.eq(sys->q_monic(n, x), without.poly(eta(coord, x)), x, n);
        }
    });
    bool consecutive = true;
    for (int j = 0; j < M; ++j) consecutive = consecutive && D[j] == N + 1 + j;
    if (consecutive && M > 0) {
        run_check(out, "special_case", [&](Check& c) {
            auto low = ps.shifted(0, -M);
            for (long x = sys->lo() - 1; x <= sys->hi() + 1; ++x) c.eq(sys->xi_monic(x), Scalar(1), x);
            for (long n = 0; n <= N + M; ++n)
                for (long x = sys->lo(); x <= sys->hi(); ++x)
                    c.eq(sys->q_monic(n, x), ps.rho().pow(-n * M) * poly_monic(low, static_cast<int>(n), x + M), x, n);
        });
    }
    run_check(out, "positivity", [&](Check& c) {
        auto v = scan(*sys);
        bool parity = parity_condition(D, N);
        std::string s = std::string(v.positive() ? "positive" : "not positive") + ", parity " +
                        (parity ? "true" : "false");
        if (family_class(ps.family()) == 'a' && in_range_M(ps, M))
            c.truth(v.positive() == parity, "class (a) verdict matches parity", v.first_violation);
        c.info(s);
    });
    if (!regular) return;
    run_check(out, "normalization", [&](Check& c) {
        c.eq(sys->xi(sys->lo()), Scalar(1), sys->lo());
        for (long n : sys->levels()) c.eq(sys->q(n, sys->lo()), Scalar(1), sys->lo(), n);
    });
    run_check(out, "boundary", [&](Check& c) {
        c.eq(sys->potential_B(N), Scalar(0), N);
        c.eq(sys->potential_D(-M), Scalar(0), -M);
        auto H = sys->matrix();
        c.eq(Scalar(static_cast<long>(H.size())), Scalar(N + M + 1));
    });
    run_check(out, "eigen_relation", [&](Check& c) {
        auto H = sys->matrix();
        for (long n : sys->levels()) {
            auto v = sys->q_vector(n);
            auto hv = H.apply(v);
            for (std::size_t i = 0; i < v.size(); ++i)
                c.eq(hv[i], energy(ps, n) * v[i], sys->lo() + static_cast<long>(i), n);
        }
    });
    run_check(out, "completeness", [&](Check& c) {
        Matrix basis;
        for (long n : sys->levels()) basis.push_back(sys->q_vector(n));
        c.eq(Scalar(static_cast<long>(rank(basis))), Scalar(static_cast<long>(basis.size())));
    });
    auto ortho = [&](Check& c, bool added) {
        for (long n : sys->levels()) {
            if (D.contains(n) != added) continue;
            for (long m : sys->levels()) {
                Scalar s = sys->orthogonality_sum(n, m);
                c.eq(s, n == m ? Scalar(1) / sys->norm_sq(n) : Scalar(0), {}, n, m);
            }
        }
    };
    run_check(out, "orthogonality_lower_levels", [&](Check& c) { ortho(c, false); });
    run_check(out, "orthogonality_added_levels", [&](Check& c) { ortho(c, true); });
}

}  // namespace

CaseReport run_suite(const VerificationCase& vc) {
    CaseReport r;
    r.vcase = vc;
    auto t0 = std::chrono::steady_clock::now();
    switch (vc.suite) {
    case Suite::original: original_suite(vc, r.checks); break;
    case Suite::identity: identity_suite(vc, r.checks); break;
    case Suite::ka: ka_suite(vc, r.checks); break;
    case Suite::q: q_suite(vc, r.checks); break;
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

Report campaign(const std::vector<VerificationCase>& cases, int jobs, json config) {
    Report rep;
    rep.config = std::move(config);
    rep.cases.resize(cases.size());
    parallel_for(cases.size(), jobs, [&](std::size_t i) { rep.cases[i] = run_suite(cases[i]); });
    return rep;
}

std::vector<VerificationCase> default_campaign() {
    std::vector<VerificationCase> out;
    for (auto f : all_families())
        for (long N = 3; N <= 5; ++N) {
            auto ps = default_parameters(f, N);
            VerificationCase c;
            c.params = ps;
            c.suite = Suite::original;
            out.push_back(c);
            c.suite = Suite::ka;
            for (auto labels : {std::vector<long>{0}, {1, 2}}) {
                c.D = IndexSet(labels);
                c.M = c.D.M();
                out.push_back(c);
            }
            c.suite = Suite::q;
            for (auto labels : {std::vector<long>{N + 1}, {N + 1, N + 4}}) {
                c.D = IndexSet(labels);
                c.M = c.D.M();
                out.push_back(c);
            }
        }
    return out;
}

std::vector<VerificationCase> named_campaign(const std::string& name) {
    if (name == "default") return default_campaign();
    if (name == "empty") return {};
    if (name == "identity") {
        std::vector<VerificationCase> out;
        for (auto f : all_families())
            for (long N = 3; N <= 5; ++N) {
                VerificationCase c;
                c.params = default_parameters(f, N);
                c.suite = Suite::identity;
                c.M = 2;
                out.push_back(c);
            }
        return out;
    }
    throw std::invalid_argument("unknown campaign: " + name);
}

}  // namespace miop
