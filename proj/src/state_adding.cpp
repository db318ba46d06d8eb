#include "miop/state_adding.hpp"

#include "miop/ka.hpp"
#include "miop/structural.hpp"

#include <algorithm>
#include <stdexcept>

namespace miop {

namespace {

Scalar rho_binom(const ParameterSet& ps, int M, Fault fault) {
    if (fault == Fault::drop_rho_binom) return Scalar(1);
    return ps.rho().pow(choose2(M) * ps.N());
}

// prod_j Lambda(x+j-1; lambda+delta), j = 1..M.
Scalar lambda_product_shifted(const ParameterSet& ps, int M, long x) {
    return lambda_product(ps.shifted(1, 0), M, x);
}

std::size_t label_index(const IndexSet& D, long n) {
    for (std::size_t i = 0; i < D.labels().size(); ++i)
        if (D[i] == n) return i;
    throw std::invalid_argument("label not in index set");
}

std::vector<long> fit_candidates(long lo, long hi, int degree) {
    return outward_candidates(lo, hi, static_cast<std::size_t>(3 * degree + 16));
}

Poly fit_or_throw(const ParameterSet& coord, const std::function<Scalar(long)>& f, int degree,
                  bool& consistent) {
    auto fit = fit_in_eta(coord, f, degree, fit_candidates(0, -1, degree));
    consistent = fit.consistent;
    return fit.poly;
}

}  // namespace

Scalar lambda_product(const ParameterSet& ps, int M, long x) {
    Scalar r(1);
    for (int j = 1; j <= M; ++j) r *= lambda_fn(ps, x + j - 1);
    return r;
}

Scalar xi_q_monic_raw(const ParameterSet& ps, const IndexSet& Dprime, long x, SampleCache* cache) {
    const long N = ps.N();
    return ps.rho().pow((N + 1) * Dprime.ell()) * ka_xi_monic(ps.reflected(), Dprime, x - N - 1, cache);
}

Scalar r_column(const ParameterSet& ps, const IndexSet& D, std::size_t i, int j, long x, Fault fault,
                bool third_term) {
    const long N = ps.N();
    const long n = D[i];
    const long mi = n - N - 1;
    const long xj = x + j - 1;
    const Scalar rm = ps.rho().pow((N + 1) * mi);
    Scalar r(0);
    if (fault != Fault::drop_y_term)
        r += rm * y_coeff(ps, D.M(), j, x) * poly_monic(ps.reflected(), static_cast<int>(mi), xj - N - 1);
    if (fault != Fault::drop_ptilde1) r += ptilde1(ps, static_cast<int>(n), xj);
    if (third_term) r += rm * lambda_fn(ps, xj) * ptilde2(ps, static_cast<int>(mi), xj);
    return r;
}

Scalar q_monic_raw(const ParameterSet& ps, const IndexSet& D, long n, long x, Fault fault,
                   SampleCache* cache, bool third_term) {
    const int M = D.M();
    Scalar den = lambda_product_shifted(ps, M, x) * varphi_M(ps, M + 1, x);
    Scalar pref = rho_binom(ps, M, fault);
    if (!D.contains(n)) {
        std::vector<GridFunction> fs;
        for (long d : D.labels()) fs.push_back(seed_poly_monic(ps, d));
        fs.push_back(seed_poly_monic(ps, n));
        Scalar w = casoratian(fs, x, cache);
        return pref * w / (c_eta_n(ps, D.labels(), n) * den);
    }
    const std::size_t i = label_index(D, n);
    Matrix m(M + 1, std::vector<Scalar>(M + 1));
    for (int j = 1; j <= M + 1; ++j) {
        for (int k = 0; k < M; ++k) {
            auto f = seed_poly_monic(ps, D[k]);
            m[j - 1][k] = cache ? cache->get(f, x + j - 1) : f(x + j - 1);
        }
        m[j - 1][M] = r_column(ps, D, i, j, x, fault, third_term);
    }
    Scalar rn = fault == Fault::drop_rho_minus_n ? Scalar(1) : ps.rho().pow(-n);
    return rn * pref * determinant(std::move(m)) / (c_eta_prime(ps, D.labels(), i) * den);
}

LimitExpansion limit_expansion(const ParameterSet& ps, const IndexSet& D, std::size_t i, long x) {
    LimitExpansion e;
    const int M = D.M();
    const long n = D[i];
    for (int j = 1; j <= M + 1; ++j) {
        e.X.push_back(x_coeff(ps, M, j, x));
        e.Y.push_back(y_coeff(ps, M, j, x));
        e.R.push_back(r_column(ps, D, i, j, x));
    }
    e.B_const = ptilde2_shift_const(ps.family(), static_cast<int>(n - ps.N() - 1));
    e.d_prime_monic_sq = norm_squared_monic_prime(ps, static_cast<int>(n));
    return e;
}

DivisionResult ka_xi_division(const ParameterSet& ps, const IndexSet& D) {
    DivisionResult r;
    const int M = D.M();
    auto coord = ps.shifted(M - 1, 0);
    bool c1 = false, c2 = false;
    Poly num = fit_or_throw(coord, [&](long x) { return ka_xi_monic(ps, D, x); }, static_cast<int>(D.ell()), c1);
    Poly den = fit_or_throw(coord, [&](long x) { return lambda_product(ps, M, x); },
                            static_cast<int>(M * (ps.N() + 1)), c2);
    auto [qt, rem] = divmod(num, den);
    r.divisible = rem.degree() < 0;
    r.consistent = c1 && c2;
    r.quotient = qt;
    return r;
}

DivisionResult ka_p_division(const ParameterSet& ps, const IndexSet& D, long n) {
    DivisionResult r;
    const int M = D.M();
    auto coord = ps.shifted(M, 0);
    bool c1 = false, c2 = false;
    Poly num = fit_or_throw(coord, [&](long x) { return ka_p_monic(ps, D, n, x); },
                            static_cast<int>(D.ell_ka() + n), c1);
    Poly den = fit_or_throw(coord, [&](long x) { return lambda_product_shifted(ps, M, x); },
                            static_cast<int>(M * ps.N()), c2);
    auto [qt, rem] = divmod(num, den);
    r.divisible = rem.degree() < 0;
    r.consistent = c1 && c2;
    r.quotient = qt;
    return r;
}

Scalar ka_xi_factor_constant(const ParameterSet& ps, const IndexSet& D) {
    const long N = ps.N();
    const int M = D.M();
    auto Dp = D.primed(N);
    auto pr = ps.reflected();
    Scalar r = c_eta(pr, Dp.labels()) / c_eta(ps, D.labels()) * varphi_M(pr, M, 0) / varphi_M(ps, M, N + 1);
    for (long m : Dp.labels()) r *= ps.rho().pow((N + 1) * m);
    return r;
}

QSystem::QSystem(ParameterSet ps, IndexSet D, Fault fault)
    : ps_(std::move(ps)), D_(std::move(D)), fault_(fault), cache_(std::make_shared<SampleCache>()),
      store_(std::make_shared<FitStore>()) {
    const long N = ps_.N();
    if (D_.M() > N) throw std::invalid_argument("QSystem: M must not exceed N");
    if (!D_.all_above(N)) throw std::invalid_argument("QSystem: labels must exceed N");
    Dp_ = D_.primed(N);
    for (long n = 0; n <= N; ++n) levels_.push_back(n);
    for (long d : D_.labels()) levels_.push_back(d);
    std::sort(levels_.begin(), levels_.end());

    auto tabulate = [&](const ParameterSet& base, const ParameterSet& coord, std::map<long, Scalar>& out) {
        auto f = [&](long x) { return xi_q_monic_raw(base, Dp_, x, cache_.get()); };
        try {
            for (long x = lo() - 1; x <= hi() + 2; ++x) out[x] = f(x);
        } catch (const std::domain_error&) {
            out.clear();
            auto fit = fit_in_eta(coord, f, static_cast<int>(Dp_.ell()),
                                  fit_candidates(lo() - 1, hi() + 2, static_cast<int>(Dp_.ell())));
            for (long x = lo() - 1; x <= hi() + 2; ++x) out[x] = fit.poly(eta(coord, x));
        }
    };
    tabulate(ps_, ps_.shifted(M() - 1, 0), xi_);
    tabulate(ps_.shifted(1, 0), ps_.shifted(M(), 0), xid_);
    xi_anchor_ = xi_.at(lo());
}

Scalar QSystem::xi_monic(long x) const {
    auto it = xi_.find(x);
    if (it != xi_.end()) return it->second;
    return xi_q_monic_raw(ps_, Dp_, x, cache_.get());
}

Scalar QSystem::xi_shift_monic(long x) const {
    auto it = xid_.find(x);
    if (it != xid_.end()) return it->second;
    return xi_q_monic_raw(ps_.shifted(1, 0), Dp_, x, cache_.get());
}

Scalar QSystem::xi(long x) const { return xi_monic(x) / xi_anchor_; }

bool QSystem::regular() const {
    for (long x = lo(); x <= hi() + 1; ++x)
        if (xi_monic(x).is_zero()) return false;
    for (long x = lo(); x <= hi(); ++x)
        if (xi_shift_monic(x).is_zero()) return false;
    return true;
}

const EtaFit& QSystem::q_fit(long n) const {
    {
        std::lock_guard<std::mutex> lock(store_->mu);
        auto it = store_->fits.find(n);
        if (it != store_->fits.end()) return *it->second;
    }
    const int deg = static_cast<int>(Dp_.ell() + n);
    auto f = [this, n](long x) { return q_monic_raw(ps_, D_, n, x, fault_, cache_.get()); };
    auto fit = std::make_unique<EtaFit>(
        fit_in_eta(ps_.shifted(M(), 0), f, deg, fit_candidates(lo(), hi(), deg)));
    std::lock_guard<std::mutex> lock(store_->mu);
    auto& slot = store_->fits[n];
    if (!slot) slot = std::move(fit);
    return *slot;
}

Scalar QSystem::q_monic(long n, long x) const { return q_fit(n).poly(eta(ps_.shifted(M(), 0), x)); }

Scalar QSystem::q(long n, long x) const { return q_monic(n, x) / q_monic(n, lo()); }

std::vector<Scalar> QSystem::q_vector(long n) const {
    std::vector<Scalar> v;
    for (long x = lo(); x <= hi(); ++x) v.push_back(q_monic(n, x));
    return v;
}

Scalar QSystem::potential_B(long x) const {
    Scalar b = miop::potential_B(ps_.shifted(0, -M()), x + M());
    if (b.is_zero()) return b;
    return b * xi_monic(x) / xi_monic(x + 1) * xi_shift_monic(x + 1) / xi_shift_monic(x);
}

Scalar QSystem::potential_D(long x) const {
    Scalar d = miop::potential_D(ps_.shifted(0, -M()), x + M());
    if (d.is_zero()) return d;
    return d * xi_monic(x + 1) / xi_monic(x) * xi_shift_monic(x - 1) / xi_shift_monic(x);
}

Tridiagonal QSystem::matrix() const {
    Tridiagonal t;
    t.lo = lo();
    t.hi = hi();
    auto low = ps_.shifted(0, -M());
    for (long x = lo(); x <= hi(); ++x) {
        Scalar b = miop::potential_B(low, x + M()), d = miop::potential_D(low, x + M());
        t.upper.push_back(b.is_zero() ? Scalar(0) : -b * xi_monic(x) / xi_monic(x + 1));
        t.lower.push_back(d.is_zero() ? Scalar(0) : -d * xi_monic(x + 1) / xi_monic(x));
        t.diag.push_back(potential_B(x) + potential_D(x));
    }
    return t;
}

Scalar QSystem::weight(long x) const {
    return phi0_squared(ps_.shifted(0, -M()), x + M()) / (xi_monic(x) * xi_monic(x + 1));
}

Scalar QSystem::orthogonality_sum(long n, long m) const {
    Scalar s(0);
    for (long x = lo(); x <= hi(); ++x) s += weight(x) * q_monic(n, x) * q_monic(m, x);
    return s;
}

Scalar QSystem::norm_sq(long n) const {
    const long N = ps_.N();
    const int M = this->M();
    const auto pr = ps_.reflected();
    Scalar common = ps_.kappa().pow(choose2(M)) * ps_.rho().pow(-2 * (2 * N + 1) * choose2(M)) /
                    c_eta(pr, Dp_.labels()).pow(2) * lambda_M(ps_, M, 0) /
                    phi0_squared(ps_.shifted(0, -M), M) * varphi_M(ps_, M, N + 1).pow(2) /
                    varphi_M(pr, M, 0).pow(2);
    for (int j = 0; j < M; ++j) common *= miop::potential_B(ps_.shifted(j, 0), 0);
    Scalar r;
    if (!D_.contains(n)) {
        if (n > N) throw std::invalid_argument("QSystem::norm_sq: level outside the spectrum");
        r = norm_squared_monic(ps_, static_cast<int>(n)) * common * c_eta_n(ps_, D_.labels(), n).pow(2);
        for (long d : D_.labels()) r /= energy(ps_, n) - energy(ps_, d);
    } else {
        const std::size_t i = label_index(D_, n);
        r = norm_squared_monic_prime(ps_, static_cast<int>(n)) * common *
            c_eta_prime(ps_, D_.labels(), i).pow(2);
        for (long d : D_.labels())
            if (d != n) r /= energy(ps_, n) - energy(ps_, d);
        r *= ps_.rho().pow(2 * n) * ps_.kappa().pow(-n);
        switch (ps_.info().energy) {
        case EnergyType::II: r /= Scalar(2 * n) + ps_.energy_d(); break;
        case EnergyType::V: r /= Scalar(1) - ps_.energy_d() * ps_.qpow(2 * n); break;
        default: break;
        }
    }
    if (fault_ == Fault::perturb_norm) r *= Scalar(2);
    return r;
}

}  // namespace miop
