#include "miop/ka.hpp"

#include "miop/structural.hpp"

#include <algorithm>
#include <stdexcept>

namespace miop {

namespace {

std::string tag(const ParameterSet& ps) { return ps.describe(); }

}  // namespace

GridFunction seed_poly(const ParameterSet& ps, long n) {
    return {[ps, n](long x) { return poly(ps, static_cast<int>(n), x); }, 0, ps.N(),
            "P|" + tag(ps) + "|" + std::to_string(n)};
}

GridFunction seed_poly_monic(const ParameterSet& ps, long n) {
    return {[ps, n](long x) { return poly_monic(ps, static_cast<int>(n), x); }, 0, ps.N(),
            "Pm|" + tag(ps) + "|" + std::to_string(n)};
}

Scalar ka_C(const ParameterSet& ps, const IndexSet& D) {
    const long M = D.M();
    Scalar r = (choose2(M) % 2) ? Scalar(-1) : Scalar(1);
    r *= ps.kappa().pow(-choose3(M));
    for (long k = 0; k < M; ++k)
        for (long j = 0; j < k; ++j)
            r *= (energy(ps, D[k]) - energy(ps, D[j])) / potential_B(ps.shifted(j, 0), 0);
    return r;
}

Scalar ka_C_n(const ParameterSet& ps, const IndexSet& D, long n) {
    const long M = D.M();
    Scalar r = ka_C(ps, D) * ((M % 2) ? Scalar(-1) : Scalar(1)) * ps.kappa().pow(-choose2(M));
    for (long j = 0; j < M; ++j)
        r *= (energy(ps, n) - energy(ps, D[j])) / potential_B(ps.shifted(j, 0), 0);
    return r;
}

namespace {

std::vector<GridFunction> seeds(const ParameterSet& ps, const IndexSet& D, bool monic) {
    std::vector<GridFunction> fs;
    for (long d : D.labels()) fs.push_back(monic ? seed_poly_monic(ps, d) : seed_poly(ps, d));
    return fs;
}

}  // namespace

Scalar ka_xi(const ParameterSet& ps, const IndexSet& D, long x, SampleCache* cache) {
    return casoratian(seeds(ps, D, false), x, cache) / (ka_C(ps, D) * varphi_M(ps, D.M(), x));
}

Scalar ka_p(const ParameterSet& ps, const IndexSet& D, long n, long x, SampleCache* cache) {
    if (D.contains(n)) return Scalar(0);
    auto fs = seeds(ps, D, false);
    fs.push_back(seed_poly(ps, n));
    return casoratian(fs, x, cache) / (ka_C_n(ps, D, n) * varphi_M(ps, D.M() + 1, x));
}

Scalar ka_xi_monic(const ParameterSet& ps, const IndexSet& D, long x, SampleCache* cache) {
    return casoratian(seeds(ps, D, true), x, cache) /
           (c_eta(ps, D.labels()) * varphi_M(ps, D.M(), x));
}

Scalar ka_p_monic(const ParameterSet& ps, const IndexSet& D, long n, long x, SampleCache* cache) {
    if (D.contains(n)) return Scalar(0);
    auto fs = seeds(ps, D, true);
    fs.push_back(seed_poly_monic(ps, n));
    return casoratian(fs, x, cache) / (c_eta_n(ps, D.labels(), n) * varphi_M(ps, D.M() + 1, x));
}

KASystem::KASystem(ParameterSet ps, IndexSet D, Fault fault)
    : ps_(std::move(ps)), D_(std::move(D)), fault_(fault), cache_(std::make_shared<SampleCache>()) {
    const long N = ps_.N();
    if (D_.M() > N) throw std::invalid_argument("KASystem: M must not exceed N");
    for (long d : D_.labels())
        if (d > N) throw std::invalid_argument("KASystem: labels must not exceed N");
    for (long n = 0; n <= N; ++n)
        if (!D_.contains(n)) levels_.push_back(n);
    C_ = ka_C(ps_, D_);
    for (long x = -1; x <= hi() + 2; ++x) {
        try {
            xi_[x] = ka_xi(ps_, D_, x, cache_.get());
        } catch (const std::domain_error&) {
            xi_[x] = std::nullopt;
        }
    }
    auto lv = levels_;
    if (std::find(lv.begin(), lv.end(), D_.mu()) == lv.end()) lv.push_back(D_.mu());
    for (long n : lv)
        for (long x = -1; x <= hi() + 1; ++x) {
            try {
                p_[n][x] = ka_p(ps_, D_, n, x, cache_.get());
            } catch (const std::domain_error&) {
                p_[n][x] = std::nullopt;
            }
        }
}

Scalar KASystem::cached(const std::map<long, std::optional<Scalar>>& t, long x,
                        const std::function<Scalar(long)>& direct) const {
    auto it = t.find(x);
    if (it == t.end()) return direct(x);
    if (!it->second) throw std::domain_error("KASystem: singular value at x=" + std::to_string(x));
    return *it->second;
}

Scalar KASystem::xi(long x) const {
    return cached(xi_, x, [this](long y) { return ka_xi(ps_, D_, y, cache_.get()); });
}

Scalar KASystem::p(long n, long x) const {
    auto it = p_.find(n);
    if (it == p_.end()) return ka_p(ps_, D_, n, x, cache_.get());
    return cached(it->second, x, [this, n](long y) { return ka_p(ps_, D_, n, y, cache_.get()); });
}

std::vector<Scalar> KASystem::p_vector(long n) const {
    std::vector<Scalar> v;
    for (long x = lo(); x <= hi(); ++x) v.push_back(p(n, x));
    return v;
}

Scalar KASystem::kappa_M() const {
    return fault_ == Fault::drop_kappa_M ? Scalar(1) : ps_.kappa().pow(M());
}

Scalar KASystem::potential_B(long x, long n) const {
    Scalar b = miop::potential_B(ps_.shifted(M(), 0), x);
    if (b.is_zero()) return b;
    return kappa_M() * b * xi(x) / xi(x + 1) * p(n, x + 1) / p(n, x);
}

Scalar KASystem::potential_D(long x, long n) const {
    Scalar d = miop::potential_D(ps_.shifted(M(), 0), x);
    if (d.is_zero()) return d;
    return kappa_M() * d * xi(x + 1) / xi(x) * p(n, x - 1) / p(n, x);
}

Scalar KASystem::potential_B(long x) const { return potential_B(x, D_.mu()); }
Scalar KASystem::potential_D(long x) const { return potential_D(x, D_.mu()); }

// B_D + D_D + E_n does not depend on n; levels other than mu are used when
// P_mu vanishes at x (non-admissible D).
Scalar KASystem::diagonal(long x) const {
    std::vector<long> order{D_.mu()};
    for (long n : levels_)
        if (n != D_.mu()) order.push_back(n);
    for (long n : order) {
        try {
            return potential_B(x, n) + potential_D(x, n) + energy(ps_, n);
        } catch (const std::domain_error&) {
        }
    }
    throw std::domain_error("KASystem: no level is nonzero at x=" + std::to_string(x));
}

bool KASystem::regular() const {
    for (long x = lo(); x <= hi() + 1; ++x) {
        auto it = xi_.find(x);
        if (it == xi_.end() || !it->second || it->second->is_zero()) return false;
    }
    return true;
}

Tridiagonal KASystem::matrix() const {
    Tridiagonal t;
    t.lo = lo();
    t.hi = hi();
    Scalar k = kappa_M();
    auto up = ps_.shifted(M(), 0);
    for (long x = lo(); x <= hi(); ++x) {
        Scalar b = miop::potential_B(up, x), d = miop::potential_D(up, x);
        t.upper.push_back(b.is_zero() ? Scalar(0) : -k * b * xi(x) / xi(x + 1));
        t.lower.push_back(d.is_zero() ? Scalar(0) : -k * d * xi(x + 1) / xi(x));
        t.diag.push_back(diagonal(x));
    }
    return t;
}

Scalar KASystem::weight(long x) const {
    return phi0_squared(ps_.shifted(M(), 0), x) / (xi(x) * xi(x + 1));
}

Scalar KASystem::orthogonality_sum(long n, long m) const {
    Scalar s(0);
    for (long x = lo(); x <= hi(); ++x) s += weight(x) * p(n, x) * p(m, x);
    return s;
}

Scalar KASystem::norm_sq(long n) const {
    Scalar r = norm_squared(ps_, static_cast<int>(n)) * ps_.kappa().pow(-choose2(M()));
    for (long j = 0; j < M(); ++j)
        r *= (energy(ps_, n) - energy(ps_, D_[j])) / miop::potential_B(ps_.shifted(j, 0), 0);
    if (fault_ == Fault::perturb_norm) r *= Scalar(2);
    return r;
}

}  // namespace miop
