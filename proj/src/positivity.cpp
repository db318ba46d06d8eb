#include "miop/positivity.hpp"

#include "miop/ka.hpp"
#include "miop/parallel.hpp"
#include "miop/state_adding.hpp"

#include <sstream>

namespace miop {

char family_class(FamilyId f) { return family_info(f).positivity_class; }

namespace {

PositivityVerdict sign_scan(long lo, long hi, const std::function<Scalar(long)>& phi0sq,
                            const std::function<Scalar(long)>& xi) {
    PositivityVerdict v;
    v.phi0_positive = true;
    v.xi_product_positive = true;
    for (long x = lo; x <= hi; ++x) {
        bool ok = true;
        if (phi0sq(x).sign() <= 0) {
            v.phi0_positive = false;
            ok = false;
        }
        if ((xi(x) * xi(x + 1)).sign() <= 0) {
            v.xi_product_positive = false;
            ok = false;
        }
        if (!ok && !v.first_violation) v.first_violation = x;
    }
    return v;
}

}  // namespace

PositivityVerdict scan(const QSystem& sys) {
    const auto low = sys.params().shifted(0, -sys.M());
    const int M = sys.M();
    return sign_scan(
        sys.lo(), sys.hi(), [&](long x) { return phi0_squared(low, x + M); },
        [&](long x) { return sys.xi_monic(x); });
}

PositivityVerdict scan(const KASystem& sys) {
    const auto up = sys.params().shifted(sys.M(), 0);
    return sign_scan(
        sys.lo(), sys.hi(), [&](long x) { return phi0_squared(up, x); },
        [&](long x) {
            try {
                return sys.xi(x);
            } catch (const std::domain_error&) {
                return Scalar(0);
            }
        });
}

std::vector<ScanRow> scan_added(const ParameterSet& ps, int M, long m_max, int jobs) {
    const long N = ps.N();
    auto sets = enumerate_index_sets(M, N + 1, N + 1 + m_max);
    std::vector<ScanRow> rows(sets.size());
    parallel_for(sets.size(), jobs, [&](std::size_t k) {
        ScanRow r;
        r.params = ps;
        r.D = sets[k];
        r.cls = family_class(ps.family());
        r.parity = parity_condition(sets[k], N);
        r.verdict = scan(QSystem(ps, sets[k]));
        rows[k] = std::move(r);
    });
    return rows;
}

const char* steering_parameter(FamilyId f) {
    switch (f) {
    case FamilyId::qqK: return "p";
    case FamilyId::dH: return "b";
    case FamilyId::dqH: return "b";
    case FamilyId::R: return "d";
    case FamilyId::qR: return "d";
    default: return "";
    }
}

std::vector<ParameterSet> steering_points(FamilyId f, long N, int M) {
    const Scalar q(1, 2);
    std::vector<ParameterSet> out;
    auto keep = [&](const ParameterSet& ps) {
        if (in_range_M(ps, M)) out.push_back(ps);
    };
    switch (f) {
    case FamilyId::qqK:  // large p
        for (long k = 0; k <= 8; ++k) keep(ParameterSet(f, N, {{"p", q.pow(-N - M - 1 - 2 * k)}}, q));
        break;
    case FamilyId::dH:  // large b
        for (long k = 0; k <= 8; ++k)
            keep(ParameterSet(f, N, {{"a", Scalar(3, 2)}, {"b", Scalar(M) + Scalar(1, 4) + Scalar(2 * k * k)}}));
        break;
    case FamilyId::dqH:  // small b
        for (long k = 0; k <= 8; ++k)
            keep(ParameterSet(f, N, {{"a", Scalar(1, 3)}, {"b", q.pow(M + 1 + 2 * k) / Scalar(3)}}, q));
        break;
    case FamilyId::R:  // large d
        for (long k = 0; k <= 8; ++k) {
            Scalar d = Scalar(M) + Scalar(1, 2) + Scalar(2 * k * k);
            keep(ParameterSet(f, N, {{"b", Scalar(N) + d + Scalar(3)}, {"c", Scalar(1, 2)}, {"d", d}}));
        }
        break;
    case FamilyId::qR:  // small d
        for (long k = 0; k <= 8; ++k) {
            Scalar d = q.pow(M + 2 + 2 * k) / Scalar(3);
            Scalar c = (d * q.pow(1 - M) + Scalar(1)) / Scalar(2);
            keep(ParameterSet(f, N, {{"b", d * q.pow(N) / Scalar(3)}, {"c", c}, {"d", d}}, q));
        }
        break;
    default: keep(default_parameters(f, N)); break;
    }
    return out;
}

std::vector<ScanRow> class_b_search(FamilyId f, long N, int M, long m_max, int jobs) {
    std::vector<ScanRow> found;
    for (const auto& ps : steering_points(f, N, M)) {
        auto rows = scan_added(ps, M, m_max, jobs);
        for (auto& r : rows)
            if (r.parity && r.verdict.positive()) found.push_back(std::move(r));
    }
    return found;
}

std::string scan_csv_header() { return "family,lambda,D,class,parity,verdict,first_violation"; }

std::string scan_csv_row(const ScanRow& row) {
    std::ostringstream os;
    std::string lam;
    for (const auto& [k, v] : row.params.to_strings())
        if (k != "family") lam += (lam.empty() ? "" : ";") + k + "=" + v;
    std::string d = row.D.str();
    os << family_name(row.params.family()) << ",\"" << lam << "\",\"" << d << "\"," << row.cls << ","
       << (row.parity ? "true" : "false") << "," << (row.verdict.positive() ? "positive" : "negative") << ",";
    if (row.verdict.first_violation) os << *row.verdict.first_violation;
    return os.str();
}

}  // namespace miop
