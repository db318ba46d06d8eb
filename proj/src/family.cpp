#include "miop/family.hpp"

#include "miop/monic_sum.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace miop {

namespace {

using F = FamilyId;

const std::vector<FamilyInfo>& table() {
    static const std::vector<FamilyInfo> t = {
        {F::H, "H", false, {"a", "b"}, {1, 1}, {0, 0}, 0, 0, EtaType::I, EnergyType::II, 'a'},
        {F::K, "K", false, {"p"}, {0}, {0}, 0, 0, EtaType::I, EnergyType::I, 'a'},
        {F::R, "R", false, {"b", "c", "d"}, {1, 1, 1}, {0, 0, 1}, 0, 0, EtaType::II, EnergyType::II, 'b'},
        {F::dH, "dH", false, {"a", "b"}, {1, 0}, {0, 1}, 0, 0, EtaType::II, EnergyType::I, 'b'},
        {F::dqqK, "dqqK", true, {"p"}, {0}, {1}, -1, 1, EtaType::III, EnergyType::IV, 'a'},
        {F::qH, "qH", true, {"a", "b"}, {1, 1}, {0, 0}, -1, -1, EtaType::IV, EnergyType::V, 'a'},
        {F::qK, "qK", true, {"p"}, {2}, {0}, -1, -1, EtaType::IV, EnergyType::V, 'a'},
        {F::qqK, "qqK", true, {"p"}, {1}, {0}, 1, -1, EtaType::IV, EnergyType::III, 'b'},
        {F::aqK, "aqK", true, {"p"}, {1}, {0}, -1, -1, EtaType::IV, EnergyType::IV, 'a'},
        {F::qR, "qR", true, {"b", "c", "d"}, {1, 1, 1}, {0, 0, 1}, -1, -1, EtaType::V, EnergyType::V, 'b'},
        {F::dqH, "dqH", true, {"a", "b"}, {1, 0}, {0, 1}, -1, -1, EtaType::V, EnergyType::IV, 'b'},
        {F::dqK, "dqK", true, {"p"}, {1}, {1}, -1, -1, EtaType::V, EnergyType::IV, 'a'},
    };
    return t;
}

Scalar P(const Scalar& a, int n) { return pochhammer(a, n); }

}  // namespace

const FamilyInfo& family_info(FamilyId f) { return table()[static_cast<std::size_t>(f)]; }

const std::vector<FamilyId>& all_families() {
    static const std::vector<FamilyId> v = {F::H,   F::K,  F::R,   F::dH,  F::dqqK, F::qH,
                                            F::qK,  F::qqK, F::aqK, F::qR, F::dqH,  F::dqK};
    return v;
}

FamilyId parse_family(const std::string& name) {
    for (const auto& fi : table())
        if (name == fi.name) return fi.id;
    throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(FamilyId f) { return family_info(f).name; }

int roman(EtaType t) { return static_cast<int>(t) + 1; }
int roman(EnergyType t) { return static_cast<int>(t) + 1; }

ParameterSet::ParameterSet(FamilyId f, long N, std::map<std::string, Scalar> values, Scalar q)
    : fam_(f), N_(N), q_(q) {
    const auto& fi = family_info(f);
    if (fi.is_q && (q.sign() <= 0 || q >= Scalar(1)))
        throw std::invalid_argument("q must lie in (0,1)");
    if (!fi.is_q) q_ = Scalar(1);
    for (const auto& name : fi.params) {
        auto it = values.find(name);
        if (it == values.end())
            throw std::invalid_argument(std::string("family ") + fi.name + " needs parameter '" +
                                        name + "'");
        vals_.push_back(it->second);
        values.erase(it);
    }
    if (f == F::R || f == F::qR) {
        auto it = values.find("a");
        if (it != values.end()) {
            if (it->second != a())
                throw std::invalid_argument(std::string("family ") + fi.name +
                                            " fixes a by N; got a=" + it->second.str());
            values.erase(it);
        }
    }
    if (!values.empty())
        throw std::invalid_argument(std::string("family ") + fi.name + " has no parameter '" +
                                    values.begin()->first + "'");
}

const Scalar& ParameterSet::value(const std::string& name) const {
    const auto& names = info().params;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return vals_[i];
    throw std::invalid_argument(std::string("family ") + info().name + " has no parameter '" +
                                name + "'");
}

Scalar ParameterSet::a() const {
    if (fam_ == F::R) return Scalar(-N_);
    if (fam_ == F::qR) return q_.pow(-N_);
    return value("a");
}

ParameterSet ParameterSet::shifted(long k_delta, long k_delta_bar) const {
    ParameterSet r = *this;
    r.N_ = N_ - k_delta - k_delta_bar;
    const auto& fi = info();
    for (std::size_t i = 0; i < vals_.size(); ++i) {
        long s = k_delta * fi.delta[i] + k_delta_bar * fi.delta_bar[i];
        if (fi.is_q)
            r.vals_[i] = vals_[i] * q_.pow(s);
        else
            r.vals_[i] = vals_[i] + Scalar(s);
    }
    return r;
}

Scalar ParameterSet::eta_d() const {
    switch (fam_) {
    case F::R: return d();
    case F::dH: return a() + b() - Scalar(1);
    case F::qR: return d();
    case F::dqH: return a() * b() / q_;
    case F::dqK: return -p();
    default: return Scalar(0);
    }
}

Scalar ParameterSet::energy_d() const {
    switch (fam_) {
    case F::R: return a() + b() + c() - d() - Scalar(1);
    case F::H: return a() + b() - Scalar(1);
    case F::qR: return a() * b() * c() / (d() * q_);
    case F::qH: return a() * b() / q_;
    case F::qK: return -p();
    default: return Scalar(0);
    }
}

std::map<std::string, std::string> ParameterSet::to_strings() const {
    std::map<std::string, std::string> m;
    m["family"] = info().name;
    m["N"] = std::to_string(N_);
    if (is_q()) m["q"] = q_.str();
    for (std::size_t i = 0; i < vals_.size(); ++i) m[info().params[i]] = vals_[i].str();
    return m;
}

std::string ParameterSet::describe() const {
    std::ostringstream os;
    os << info().name << "(N=" << N_;
    for (std::size_t i = 0; i < vals_.size(); ++i) os << "," << info().params[i] << "=" << vals_[i];
    if (is_q()) os << ",q=" << q_;
    os << ")";
    return os.str();
}

Scalar energy(const ParameterSet& ps, long n) {
    const Scalar& q = ps.q();
    switch (ps.info().energy) {
    case EnergyType::I: return Scalar(n);
    case EnergyType::II: return Scalar(n) * (Scalar(n) + ps.energy_d());
    case EnergyType::III: return Scalar(1) - q.pow(n);
    case EnergyType::IV: return q.pow(-n) - Scalar(1);
    case EnergyType::V: return (q.pow(-n) - Scalar(1)) * (Scalar(1) - ps.energy_d() * q.pow(n));
    }
    return Scalar(0);
}

Scalar eta(const ParameterSet& ps, long x) {
    const Scalar& q = ps.q();
    switch (ps.info().eta) {
    case EtaType::I: return Scalar(x);
    case EtaType::II: return Scalar(x) * (Scalar(x) + ps.eta_d());
    case EtaType::III: return Scalar(1) - q.pow(x);
    case EtaType::IV: return q.pow(-x) - Scalar(1);
    case EtaType::V: return (q.pow(-x) - Scalar(1)) * (Scalar(1) - ps.eta_d() * q.pow(x));
    }
    return Scalar(0);
}

Scalar varphi(const ParameterSet& ps, long x) {
    Scalar e1 = eta(ps, 1);
    if (e1.is_zero()) throw std::domain_error("varphi: eta(1) vanishes");
    return (eta(ps, x + 1) - eta(ps, x)) / e1;
}

Scalar potential_B(const ParameterSet& ps, long x) {
    const Scalar one(1), X(x), Nn(ps.N());
    auto qp = [&](long k) { return ps.qpow(k); };
    switch (ps.family()) {
    case F::H: return (X + ps.a()) * (Nn - X);
    case F::K: return ps.p() * (Nn - X);
    case F::R: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d();
        return -(X + a) * (X + b) * (X + c) * (X + d) /
               ((Scalar(2) * X + d) * (Scalar(2) * X + one + d));
    }
    case F::dH: {
        Scalar s = ps.a() + ps.b();
        return (X + ps.a()) * (X + s - one) * (Nn - X) /
               ((Scalar(2) * X - one + s) * (Scalar(2) * X + s));
    }
    case F::dqqK:
        return qp(-x - ps.N() - 1) / ps.p() * (one - qp(ps.N() - x));
    case F::qH: return (one - ps.a() * qp(x)) * (qp(x - ps.N()) - one);
    case F::qK: return qp(x - ps.N()) - one;
    case F::qqK: return qp(x) / ps.p() * (qp(x - ps.N()) - one);
    case F::aqK: return (qp(x - ps.N()) - one) * (one - ps.p() * qp(x + 1));
    case F::qR: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d();
        return -(one - a * qp(x)) * (one - b * qp(x)) * (one - c * qp(x)) * (one - d * qp(x)) /
               ((one - d * qp(2 * x)) * (one - d * qp(2 * x + 1)));
    }
    case F::dqH: {
        Scalar ab = ps.a() * ps.b();
        return (qp(x - ps.N()) - one) * (one - ps.a() * qp(x)) * (one - ab * qp(x - 1)) /
               ((one - ab * qp(2 * x - 1)) * (one - ab * qp(2 * x)));
    }
    case F::dqK: {
        Scalar p = ps.p();
        return (qp(x - ps.N()) - one) * (one + p * qp(x)) /
               ((one + p * qp(2 * x)) * (one + p * qp(2 * x + 1)));
    }
    }
    return Scalar(0);
}

Scalar potential_D(const ParameterSet& ps, long x) {
    const Scalar one(1), X(x), Nn(ps.N());
    auto qp = [&](long k) { return ps.qpow(k); };
    switch (ps.family()) {
    case F::H: return X * (ps.b() + Nn - X);
    case F::K: return (one - ps.p()) * X;
    case F::R: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d();
        return -(X + d - a) * (X + d - b) * (X + d - c) * X /
               ((Scalar(2) * X - one + d) * (Scalar(2) * X + d));
    }
    case F::dH: {
        Scalar s = ps.a() + ps.b();
        return X * (X + ps.b() - one) * (X + s + Nn - one) /
               ((Scalar(2) * X - Scalar(2) + s) * (Scalar(2) * X - one + s));
    }
    case F::dqqK: return (qp(-x) - one) * (one - qp(-x) / ps.p());
    case F::qH: return ps.a() / ps.q() * (one - qp(x)) * (qp(x - ps.N()) - ps.b());
    case F::qK: return ps.p() * (one - qp(x));
    case F::qqK: return (one - qp(x)) * (one - qp(x - ps.N() - 1) / ps.p());
    case F::aqK: return ps.p() * qp(x - ps.N()) * (one - qp(x));
    case F::qR: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d();
        Scalar dq = d * qp(x);
        return -ps.energy_d() * (one - dq / a) * (one - dq / b) * (one - dq / c) * (one - qp(x)) /
               ((one - d * qp(2 * x - 1)) * (one - d * qp(2 * x)));
    }
    case F::dqH: {
        Scalar ab = ps.a() * ps.b();
        return ps.a() * qp(x - ps.N() - 1) * (one - qp(x)) * (one - ab * qp(x + ps.N() - 1)) *
               (one - ps.b() * qp(x - 1)) /
               ((one - ab * qp(2 * x - 2)) * (one - ab * qp(2 * x - 1)));
    }
    case F::dqK: {
        Scalar p = ps.p();
        return p * qp(2 * x - ps.N() - 1) * (one - qp(x)) * (one + p * qp(x + ps.N())) /
               ((one + p * qp(2 * x - 1)) * (one + p * qp(2 * x)));
    }
    }
    return Scalar(0);
}

Scalar phi0_squared(const ParameterSet& ps, long x) {
    if (x < 0) throw std::domain_error("phi0_squared: negative coordinate");
    Scalar r(1);
    for (long y = 0; y < x; ++y) r *= potential_B(ps, y) / potential_D(ps, y + 1);
    return r;
}

Scalar phi0_squared_closed(const ParameterSet& ps, long x) {
    const Scalar one(1), X(x);
    const long N = ps.N();
    const Scalar& q = ps.q();
    auto qp = [&](long k) { return q.pow(k); };
    auto Q = [&](const Scalar& a, long n) { return q_pochhammer(a, q, static_cast<int>(n)); };
    int xi = static_cast<int>(x);
    switch (ps.family()) {
    case F::H:
        return binomial(N, xi) * P(ps.a(), xi) / P(ps.b() + Scalar(N - x), xi);
    case F::K: return binomial(N, xi) * (ps.p() / (one - ps.p())).pow(x);
    case F::R: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d();
        return P(a, xi) * P(b, xi) * P(c, xi) * P(d, xi) /
               (P(one + d - a, xi) * P(one + d - b, xi) * P(one + d - c, xi) * P(one, xi)) *
               (Scalar(2) * X + d) / d;
    }
    case F::dH: {
        Scalar a = ps.a(), b = ps.b();
        return binomial(N, xi) * P(a, xi) * (Scalar(2) * X + a + b - one) * P(a + b, N) /
               (P(b, xi) * P(X + a + b - one, N + 1));
    }
    case F::dqqK:
        return q_binomial(N, xi, q) * ps.p().pow(-x) * qp(-N * x) / Q(qp(-x) / ps.p(), x);
    case F::qH:
        return q_binomial(N, xi, q) * Q(ps.a(), x) / (Q(ps.b() * qp(N - x), x) * ps.a().pow(x));
    case F::qK: return q_binomial(N, xi, q) * ps.p().pow(-x) * qp(choose2(x) - x * N);
    case F::qqK:
        return q_binomial(N, xi, q) * ps.p().pow(-x) * qp(x * (x - 1 - N)) /
               Q(qp(-N) / ps.p(), x);
    case F::aqK: {
        Scalar pq = ps.p() * q;
        return q_binomial(N, xi, q) * Q(pq, x) / pq.pow(x);
    }
    case F::qR: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d();
        return Q(a, x) * Q(b, x) * Q(c, x) * Q(d, x) /
               (Q(d * q / a, x) * Q(d * q / b, x) * Q(d * q / c, x) * Q(q, x) *
                ps.energy_d().pow(x)) *
               (one - d * qp(2 * x)) / (one - d);
    }
    case F::dqH: {
        Scalar a = ps.a(), b = ps.b(), ab = a * b;
        return q_binomial(N, xi, q) * Q(a, x) * Q(ab / q, x) /
               (Q(ab * qp(N), x) * Q(b, x) * a.pow(x)) * (one - ab * qp(2 * x - 1)) /
               (one - ab / q);
    }
    case F::dqK: {
        Scalar p = ps.p();
        return q_binomial(N, xi, q) * Q(-p, x) * p.pow(-x) * qp(-(x * (x + 1)) / 2) /
               Q(-p * qp(N + 1), x) * (one + p * qp(2 * x)) / (one + p);
    }
    }
    return Scalar(0);
}

Scalar poly_monic(const ParameterSet& ps, int n, long x) {
    return monic_sum(make_sum_point<Scalar>(ps, x), n);
}

Scalar poly(const ParameterSet& ps, int n, long x) {
    return leading_coeff(ps, n) * poly_monic(ps, n, x);
}

Scalar singular_factor(const ParameterSet& ps, int n) {
    if (ps.is_q()) return q_pochhammer(ps.qpow(-ps.N()), ps.q(), n);
    return P(Scalar(-ps.N()), n);
}

Scalar leading_coeff_regular(const ParameterSet& ps, int n) {
    const Scalar one(1);
    const Scalar& q = ps.q();
    auto qp = [&](long k) { return q.pow(k); };
    auto Q = [&](const Scalar& a, long k) { return q_pochhammer(a, q, static_cast<int>(k)); };
    switch (ps.family()) {
    case F::H: return P(Scalar(n - 1) + ps.a() + ps.b(), n) / P(ps.a(), n);
    case F::K: return ps.p().pow(-n);
    case F::R: return P(ps.energy_d() + Scalar(n), n) / (P(ps.b(), n) * P(ps.c(), n));
    case F::dH: return one / P(ps.a(), n);
    case F::dqqK: return ps.p().pow(n) * qp(-choose2(n));
    case F::qH: return Q(ps.a() * ps.b() * qp(n - 1), n) / Q(ps.a(), n);
    case F::qK: return Q(-ps.p() * qp(n), n);
    case F::qqK: return ps.p().pow(n) * qp(static_cast<long>(n) * n);
    case F::aqK: return one / Q(ps.p() * q, n);
    case F::qR: return Q(ps.energy_d() * qp(n), n) / (Q(ps.b(), n) * Q(ps.c(), n));
    case F::dqH: return one / Q(ps.a(), n);
    case F::dqK: return one;
    }
    return one;
}

namespace {

// binomial(N,n) or its q-version with the singular factor removed.
Scalar binomial_regular(const ParameterSet& ps, int n) {
    Scalar sign = (n % 2) ? Scalar(-1) : Scalar(1);
    if (ps.is_q())
        return sign * ps.qpow(ps.N() * n - choose2(n)) / q_pochhammer(ps.q(), ps.q(), n);
    return sign / factorial(n);
}

}  // namespace

Scalar norm_sq_regular(const ParameterSet& ps, int n) {
    const Scalar one(1), nn(n);
    const long N = ps.N();
    const Scalar& q = ps.q();
    auto qp = [&](long k) { return q.pow(k); };
    auto Q = [&](const Scalar& a, long k) { return q_pochhammer(a, q, static_cast<int>(k)); };
    const Scalar bin = binomial_regular(ps, n);
    switch (ps.family()) {
    case F::H: {
        Scalar a = ps.a(), b = ps.b();
        return bin * P(a, n) * (Scalar(2) * nn + a + b - one) * P(a + b, N) /
               (P(b, n) * P(nn + a + b - one, N + 1)) * P(b, N) / P(a + b, N);
    }
    case F::K: {
        Scalar p = ps.p();
        return bin * (p / (one - p)).pow(n) * (one - p).pow(N);
    }
    case F::R: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d(), dt = ps.energy_d();
        Scalar sgn = (N % 2) ? Scalar(-1) : Scalar(1);
        return P(b, n) * P(c, n) * P(dt, n) /
               (P(one + dt - a, n) * P(one + dt - b, n) * P(one + dt - c, n) * P(one, n)) *
               (Scalar(2) * nn + dt) / dt * sgn * P(one + d - a, N) * P(one + d - b, N) *
               P(one + d - c, N) / (P(dt + one, N) * P(d + one, 2 * N));
    }
    case F::dH: {
        Scalar a = ps.a(), b = ps.b();
        return bin * P(a, n) / P(b + Scalar(N - n), n) * P(b, N) / P(a + b, N);
    }
    case F::dqqK: {
        Scalar pi = one / ps.p();
        return bin * pi.pow(n) * qp(static_cast<long>(n) * (n - 1 - N)) / Q(pi * qp(-N), n) *
               Q(pi * qp(-N), N);
    }
    case F::qH: {
        Scalar a = ps.a(), b = ps.b(), ab = a * b;
        return bin * Q(a, n) * Q(ab / q, n) / (Q(ab * qp(N), n) * Q(b, n) * a.pow(n)) *
               (one - ab * qp(2 * n - 1)) / (one - ab / q) * Q(b, N) * a.pow(N) / Q(ab, N);
    }
    case F::qK: {
        Scalar p = ps.p();
        return bin * Q(-p, n) / (Q(-p * qp(N + 1), n) * p.pow(n) * qp(choose2(n + 1))) *
               (one + p * qp(2 * n)) / (one + p) * p.pow(N) * qp(choose2(N + 1)) / Q(-p * q, N);
    }
    case F::qqK: {
        Scalar pi = one / ps.p();
        return bin * pi.pow(n) * qp(-N * n) / Q(pi * qp(-n), n) * Q(pi * qp(-N), N);
    }
    case F::aqK: {
        Scalar pq = ps.p() * q;
        return bin * Q(pq, n) / pq.pow(n) * pq.pow(N);
    }
    case F::qR: {
        Scalar a = ps.a(), b = ps.b(), c = ps.c(), d = ps.d(), dt = ps.energy_d();
        Scalar sgn = (N % 2) ? Scalar(-1) : Scalar(1);
        return Q(b, n) * Q(c, n) * Q(dt, n) /
               (Q(dt * q / a, n) * Q(dt * q / b, n) * Q(dt * q / c, n) * Q(q, n) * d.pow(n)) *
               (one - dt * qp(2 * n)) / (one - dt) * sgn * Q(d * q / a, N) * Q(d * q / b, N) *
               Q(d * q / c, N) * dt.pow(N) * qp(choose2(N + 1)) / (Q(dt * q, N) * Q(d * q, 2 * N));
    }
    case F::dqH: {
        Scalar a = ps.a(), b = ps.b();
        return bin * Q(a, n) / (Q(b * qp(N - n), n) * a.pow(n)) * Q(b, N) * a.pow(N) /
               Q(a * b, N);
    }
    case F::dqK: {
        Scalar p = ps.p();
        return bin * p.pow(-n) * qp(-N * n + choose2(n)) * p.pow(N) * qp(choose2(N + 1)) /
               Q(-p * q, N);
    }
    }
    return one;
}

Scalar leading_coeff(const ParameterSet& ps, int n) {
    if (n < 0 || n > ps.N())
        throw std::domain_error("leading_coeff: tabulated form is ill-defined for n > N");
    return leading_coeff_regular(ps, n) / singular_factor(ps, n);
}

Scalar leading_coeff_universal(const ParameterSet& ps, int n) {
    Scalar r = (n % 2) ? Scalar(-1) : Scalar(1);
    r *= ps.kappa().pow(-choose2(n));
    Scalar En = energy(ps, n);
    for (int j = 1; j <= n; ++j)
        r *= (En - energy(ps, j - 1)) / (eta(ps, j) * potential_B(ps.shifted(j - 1, 0), 0));
    return r;
}

Scalar norm_squared(const ParameterSet& ps, int n) {
    if (n < 0 || n > ps.N()) throw std::domain_error("norm_squared: level outside 0..N");
    return norm_sq_regular(ps, n) * singular_factor(ps, n);
}

Scalar norm_squared_monic(const ParameterSet& ps, int n) {
    Scalar c = leading_coeff_regular(ps, n);
    return c * c * norm_sq_regular(ps, n) / singular_factor(ps, n);
}

Scalar norm_squared_inv(const ParameterSet& ps, int n) { return Scalar(1) / norm_squared(ps, n); }

Scalar norm_squared_monic_prime(const ParameterSet& ps, int n) {
    long m = n - ps.N() - 1;
    if (m < 0) throw std::domain_error("norm_squared_monic_prime: needs n > N");
    Scalar repl = ps.is_q() ? q_pochhammer(ps.qpow(-ps.N()), ps.q(), static_cast<int>(ps.N())) *
                                  q_pochhammer(ps.q(), ps.q(), static_cast<int>(m))
                            : P(Scalar(-ps.N()), static_cast<int>(ps.N())) * factorial(static_cast<int>(m));
    Scalar c = leading_coeff_regular(ps, n);
    return c * c * norm_sq_regular(ps, n) / repl;
}

namespace {

// sum_{l<n-k} (-N+k)_l (-N+k+l+1)_{n-k-1-l}
Scalar inner_sum(long N, int k, int n) {
    Scalar s(0);
    for (int l = 0; l < n - k; ++l)
        s += P(Scalar(-N + k), l) * P(Scalar(-N + k + l + 1), n - k - 1 - l);
    return s;
}

// sum_{l<n-k} q^{-N+k+l} (q^{-N+k};q)_l (q^{-N+k+l+1};q)_{n-k-1-l}
Scalar inner_sum_q(const ParameterSet& ps, int k, int n) {
    const Scalar& q = ps.q();
    const long N = ps.N();
    Scalar s(0);
    for (int l = 0; l < n - k; ++l)
        s += q.pow(-N + k + l) * q_pochhammer(q.pow(-N + k), q, l) *
             q_pochhammer(q.pow(-N + k + l + 1), q, n - k - 1 - l);
    return s;
}

// Tracks prod(f_l) and prod(f_l) * sum(w_l / f_l) without dividing.
struct LogDeriv {
    Scalar prod{1};
    Scalar der{0};
    void mul(const Scalar& f, const Scalar& w) {
        der = der * f + prod * w;
        prod *= f;
    }
};

}  // namespace

Scalar ptilde1(const ParameterSet& ps, int n, long x) {
    const Scalar one(1), X(x);
    const long N = ps.N();
    const Scalar& q = ps.q();
    auto qp = [&](long k) { return q.pow(k); };
    auto Q = [&](const Scalar& a, long k) { return q_pochhammer(a, q, static_cast<int>(k)); };
    Scalar sum(0);
    for (int k = 0; k < n; ++k) {
        Scalar t;
        switch (ps.family()) {
        case F::H: {
            Scalar a = ps.a(), b = ps.b();
            t = P(a + Scalar(k), n - k) / P(Scalar(n - 1 + k) + a + b, n - k) * P(Scalar(-n), k) *
                P(-X, k) / factorial(k) * inner_sum(N, k, n);
            break;
        }
        case F::K:
            t = P(Scalar(-n), k) * P(-X, k) / factorial(k) * ps.p().pow(n - k) * inner_sum(N, k, n);
            break;
        case F::R: {
            Scalar b = ps.b(), c = ps.c(), d = ps.d(), dt = ps.energy_d();
            Scalar inner(0);
            Scalar full = P(Scalar(-N + k), n - k);
            for (int l = 0; l < n - k; ++l)
                inner += P(Scalar(-N + k), l) * P(Scalar(-N + k + l + 1), n - k - 1 - l) -
                         full / (dt + Scalar(n + k + l));
            t = P(b + Scalar(k), n - k) * P(c + Scalar(k), n - k) / P(dt + Scalar(n + k), n - k) *
                P(Scalar(-n), k) * P(-X, k) * P(X + d, k) / factorial(k) * inner;
            break;
        }
        case F::dH: {
            Scalar a = ps.a(), b = ps.b();
            t = P(a + Scalar(k), n - k) * P(Scalar(-n), k) * P(X + a + b - one, k) * P(-X, k) /
                factorial(k) * inner_sum(N, k, n);
            break;
        }
        case F::dqqK:
            t = Q(qp(-n), k) * Q(qp(-x), k) / Q(q, k) * ps.p().pow(k - n) *
                qp(k * x + k + choose2(n)) * inner_sum_q(ps, k, n);
            break;
        case F::qH: {
            Scalar a = ps.a(), b = ps.b();
            t = Q(a * qp(k), n - k) / Q(a * b * qp(n - 1 + k), n - k) * Q(qp(-n), k) * Q(qp(-x), k) /
                Q(q, k) * qp(k) * inner_sum_q(ps, k, n);
            break;
        }
        case F::qK:
            t = one / Q(-ps.p() * qp(n + k), n - k) * Q(qp(-n), k) * Q(qp(-x), k) / Q(q, k) * qp(k) *
                inner_sum_q(ps, k, n);
            break;
        case F::qqK:
            t = Q(qp(-n), k) * Q(qp(-x), k) / Q(q, k) * ps.p().pow(k - n) *
                qp(static_cast<long>(n + 1) * k - static_cast<long>(n) * n) * inner_sum_q(ps, k, n);
            break;
        case F::aqK:
            t = Q(ps.p() * qp(1 + k), n - k) * Q(qp(-n), k) * Q(qp(-x), k) / Q(q, k) * qp(k) *
                inner_sum_q(ps, k, n);
            break;
        case F::qR: {
            Scalar b = ps.b(), c = ps.c(), d = ps.d(), dt = ps.energy_d();
            Scalar inner(0);
            Scalar full = Q(qp(-N + k), n - k);
            for (int l = 0; l < n - k; ++l)
                inner += Q(qp(-N + k), l) * Q(qp(-N + k + l + 1), n - k - 1 - l) -
                         full / (one - dt * qp(n + k + l));
            t = Q(b * qp(k), n - k) * Q(c * qp(k), n - k) / Q(dt * qp(n + k), n - k) *
                Q(qp(-n), k) * Q(qp(-x), k) * Q(d * qp(x), k) / Q(q, k) * qp(k) * inner;
            break;
        }
        case F::dqH: {
            Scalar a = ps.a(), b = ps.b();
            t = Q(a * qp(k), n - k) * Q(qp(-n), k) * Q(a * b * qp(x - 1), k) * Q(qp(-x), k) /
                Q(q, k) * qp(k) * inner_sum_q(ps, k, n);
            break;
        }
        case F::dqK:
            t = Q(qp(-n), k) * Q(qp(-x), k) * Q(-ps.p() * qp(x), k) / Q(q, k) * qp(k) *
                inner_sum_q(ps, k, n);
            break;
        }
        sum += t;
    }
    return sum;
}

long ptilde2_shift_const(FamilyId f, int m) {
    switch (f) {
    case F::qR:
    case F::dqH:
    case F::aqK: return -2L * m;
    case F::dqK: return -static_cast<long>(m);
    default: return 0;
    }
}

Scalar ptilde2(const ParameterSet& ps, int m, long x) {
    const Scalar one(1), X(x);
    const long N = ps.N();
    const Scalar& q = ps.q();
    auto qp = [&](long k) { return q.pow(k); };
    auto Q = [&](const Scalar& a, long k) { return q_pochhammer(a, q, static_cast<int>(k)); };
    Scalar sum(0);
    for (int k = 0; k <= m; ++k) {
        Scalar coef, s(0);
        LogDeriv xd;
        switch (ps.family()) {
        case F::H: {
            Scalar a = ps.a(), b = ps.b();
            Scalar top = a + b + Scalar(2 * N + 1 + m + k);
            coef = P(a + Scalar(N + 1 + k), m - k) * P(Scalar(N + 2 + k), m - k) / P(top, m - k) *
                   P(Scalar(-m), k) / factorial(k);
            for (int l = 0; l < m - k; ++l)
                s += one / (a + Scalar(N + 1 + k + l)) + one / Scalar(N + 2 + k + l) -
                     Scalar(2) / (top + Scalar(l));
            for (int l = 0; l < k; ++l) xd.mul(-X + Scalar(N + 1 + l), one);
            break;
        }
        case F::K:
            coef = P(Scalar(N + 2 + k), m - k) * P(Scalar(-m), k) / factorial(k) * ps.p().pow(m - k);
            for (int l = 0; l < m - k; ++l) s += one / Scalar(N + 2 + k + l);
            for (int l = 0; l < k; ++l) xd.mul(-X + Scalar(N + 1 + l), one);
            break;
        case F::R: {
            Scalar b = ps.b(), c = ps.c(), d = ps.d(), dt = ps.energy_d();
            Scalar top = dt + Scalar(2 * N + 2 + m + k);
            coef = P(Scalar(N + 2 + k), m - k) * P(b + Scalar(N + 1 + k), m - k) *
                   P(c + Scalar(N + 1 + k), m - k) / P(top, m - k) * P(Scalar(-m), k) /
                   factorial(k);
            for (int l = 0; l < m - k; ++l)
                s += one / Scalar(N + 2 + k + l) + one / (b + Scalar(N + 1 + k + l)) +
                     one / (c + Scalar(N + 1 + k + l)) - one / (top + Scalar(l));
            for (int l = 0; l < k; ++l) {
                xd.mul(-X + Scalar(N + 1 + l), one);
                xd.mul(X + Scalar(N + 1 + l) + d, one);
            }
            break;
        }
        case F::dH: {
            Scalar a = ps.a(), b = ps.b();
            coef = P(a + Scalar(N + 1 + k), m - k) * P(Scalar(N + 2 + k), m - k) * P(Scalar(-m), k) /
                   factorial(k);
            for (int l = 0; l < m - k; ++l)
                s += one / (a + Scalar(N + 1 + k + l)) + one / Scalar(N + 2 + k + l);
            for (int l = 0; l < k; ++l) {
                xd.mul(X + a + b + Scalar(N + l), one);
                xd.mul(-X + Scalar(N + 1 + l), one);
            }
            break;
        }
        case F::dqqK:
            coef = Q(qp(N + 2 + k), m - k) * Q(qp(-m), k) / Q(q, k) * ps.p().pow(k - m) *
                   qp(k * (x + 1) - (N + 1) * m + choose2(m));
            for (int l = 0; l < m - k; ++l) s += one / (one - qp(N + 2 + k + l));
            for (int l = 0; l < k; ++l) xd.mul(one - qp(-x + N + 1 + l), one);
            break;
        case F::qH: {
            Scalar a = ps.a(), ab = ps.a() * ps.b();
            coef = Q(a * qp(N + 1 + k), m - k) * Q(qp(N + 2 + k), m - k) /
                   Q(ab * qp(2 * N + 1 + m + k), m - k) * Q(qp(-m), k) / Q(q, k) * qp(k);
            for (int l = 0; l < m - k; ++l)
                s += one / (one - a * qp(N + 1 + k + l)) + one / (one - qp(N + 2 + k + l)) -
                     Scalar(2) / (one - ab * qp(2 * N + 1 + m + k + l));
            for (int l = 0; l < k; ++l) {
                Scalar z = qp(-x + N + 1 + l);
                xd.mul(one - z, z);
            }
            break;
        }
        case F::qK: {
            Scalar p = ps.p();
            coef = Q(qp(N + 2 + k), m - k) / Q(-p * qp(2 * N + 2 + m + k), m - k) * Q(qp(-m), k) /
                   Q(q, k) * qp(k);
            for (int l = 0; l < m - k; ++l) {
                Scalar z = p * qp(2 * N + 2 + m + k + l);
                s += one / (one - qp(N + 2 + k + l)) - (one - z) / (one + z);
            }
            for (int l = 0; l < k; ++l) {
                Scalar z = qp(-x + N + 1 + l);
                xd.mul(one - z, z);
            }
            break;
        }
        case F::qqK:
            coef = Q(qp(N + 2 + k), m - k) * Q(qp(-m), k) / Q(q, k) *
                   (ps.p() * qp(N + 1)).pow(k - m) *
                   qp(static_cast<long>(m + 1) * k - static_cast<long>(m) * m);
            for (int l = 0; l < m - k; ++l) s += one / (one - qp(N + 2 + k + l));
            for (int l = 0; l < k; ++l) {
                Scalar z = qp(-x + N + 1 + l);
                xd.mul(one - z, z);
            }
            break;
        case F::aqK: {
            Scalar p = ps.p();
            coef = Q(p * qp(N + 2 + k), m - k) * Q(qp(N + 2 + k), m - k) * Q(qp(-m), k) / Q(q, k) *
                   qp(k);
            s = Scalar(k);
            for (int l = 0; l < m - k; ++l)
                s += one / (one - p * qp(N + 2 + k + l)) + one / (one - qp(N + 2 + k + l));
            for (int l = 0; l < k; ++l) xd.mul(one - qp(-x + N + 1 + l), one);
            break;
        }
        case F::qR: {
            Scalar b = ps.b(), c = ps.c(), d = ps.d(), dt = ps.energy_d();
            coef = Q(qp(N + 2 + k), m - k) * Q(b * qp(N + 1 + k), m - k) *
                   Q(c * qp(N + 1 + k), m - k) / Q(dt * qp(2 * N + 2 + m + k), m - k) *
                   Q(qp(-m), k) / Q(q, k) * qp(k);
            for (int l = 0; l < m - k; ++l)
                s += one / (one - qp(N + 2 + k + l)) + one / (one - b * qp(N + 1 + k + l)) +
                     one / (one - c * qp(N + 1 + k + l)) -
                     one / (one - dt * qp(2 * N + 2 + m + k + l));
            for (int l = 0; l < k; ++l) {
                xd.mul(one - qp(-x + N + 1 + l), one);
                xd.mul(one - d * qp(x + N + 1 + l), one);
            }
            break;
        }
        case F::dqH: {
            Scalar a = ps.a(), ab = ps.a() * ps.b();
            coef = Q(a * qp(N + 1 + k), m - k) * Q(qp(N + 2 + k), m - k) * Q(qp(-m), k) / Q(q, k) *
                   qp(k);
            for (int l = 0; l < m - k; ++l)
                s += one / (one - a * qp(N + 1 + k + l)) + one / (one - qp(N + 2 + k + l));
            for (int l = 0; l < k; ++l) {
                xd.mul(one - ab * qp(x + N + l), one);
                xd.mul(one - qp(-x + N + 1 + l), one);
            }
            break;
        }
        case F::dqK: {
            Scalar p = ps.p();
            coef = Q(qp(N + 2 + k), m - k) * Q(qp(-m), k) / Q(q, k) * qp(k);
            for (int l = 0; l < m - k; ++l) s += one / (one - qp(N + 2 + k + l));
            for (int l = 0; l < k; ++l) {
                Scalar z = qp(-x + N + 1 + l);
                xd.mul(one - z, z);
                xd.mul(one + p * qp(x + N + 1 + l), one);
            }
            break;
        }
        }
        sum += coef * (xd.prod * s + xd.der);
    }
    return sum;
}

bool in_range(const ParameterSet& ps) { return in_range_M(ps, 0); }

bool in_range_M(const ParameterSet& ps, int M) {
    const Scalar zero(0), one(1);
    const Scalar& q = ps.q();
    const long N = ps.N();
    switch (ps.family()) {
    case F::H: return ps.a() > zero && ps.b() > zero;
    case F::K: return ps.p() > zero && ps.p() < one;
    case F::R: {
        Scalar b = ps.b(), c = ps.c(), d = ps.d();
        return b > Scalar(N) + d && d > Scalar(M) && c > zero && c < one + d - Scalar(M) &&
               d != Scalar(M + 1);
    }
    case F::dH: {
        Scalar s = ps.a() + ps.b();
        return ps.a() > zero && ps.b() > Scalar(M) && s != Scalar(M + 1) && s != Scalar(M + 2);
    }
    case F::dqqK: return ps.p() > q.pow(-N);
    case F::qH: return ps.a() > zero && ps.a() < one && ps.b() > zero && ps.b() < one;
    case F::qK: return ps.p() > zero;
    case F::qqK: return ps.p() > q.pow(-N - M);
    case F::aqK: return ps.p() > zero && ps.p() < one / q;
    case F::qR: {
        Scalar b = ps.b(), c = ps.c(), d = ps.d();
        return b > zero && b < d * q.pow(N) && d < q.pow(M) && d * q.pow(1 - M) < c && c < one &&
               d != q.pow(M + 1);
    }
    case F::dqH: {
        Scalar a = ps.a(), b = ps.b(), bq = ps.b() * q.pow(-M);
        return a > zero && a < one && bq > zero && bq < one && a * b != q.pow(M + 1) &&
               a * b != q.pow(M + 2);
    }
    case F::dqK: return ps.p() > zero;
    }
    return false;
}

ParameterSet default_parameters(FamilyId f, long N) {
    const Scalar q(1, 2);
    auto S = [](long a, long b = 1) { return Scalar(a, b); };
    switch (f) {
    case F::H: return ParameterSet(f, N, {{"a", S(1)}, {"b", S(2)}});
    case F::K: return ParameterSet(f, N, {{"p", S(1, 2)}});
    case F::R:
        return ParameterSet(f, N, {{"b", std::max(S(21, 2), S(N) + S(11, 2))}, {"c", S(1, 2)}, {"d", S(5, 2)}});
    case F::dH: return ParameterSet(f, N, {{"a", S(3, 2)}, {"b", S(13, 4)}});
    case F::dqqK: return ParameterSet(f, N, {{"p", std::max(S(100), S(4) * q.pow(-N))}}, q);
    case F::qH: return ParameterSet(f, N, {{"a", S(1, 3)}, {"b", S(1, 5)}}, q);
    case F::qK: return ParameterSet(f, N, {{"p", S(1, 3)}}, q);
    case F::qqK: return ParameterSet(f, N, {{"p", std::max(S(300), S(4) * q.pow(-N - 2))}}, q);
    case F::aqK: return ParameterSet(f, N, {{"p", S(2, 3)}}, q);
    case F::qR: {
        Scalar d = S(1, 5);
        return ParameterSet(f, N, {{"b", std::min(S(1, 200), d * q.pow(N) / S(3))}, {"c", S(3, 5)}, {"d", d}}, q);
    }
    case F::dqH: return ParameterSet(f, N, {{"a", S(1, 3)}, {"b", S(1, 7)}}, q);
    case F::dqK: return ParameterSet(f, N, {{"p", S(1, 3)}}, q);
    }
    throw std::invalid_argument("default_parameters: unknown family");
}

}  // namespace miop
