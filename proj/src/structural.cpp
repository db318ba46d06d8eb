#include "miop/structural.hpp"

#include <stdexcept>

namespace miop {

namespace {

Scalar sign_pow(long k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

Scalar qpoch(const Scalar& a, const Scalar& q, long n) {
    return q_pochhammer(a, q, static_cast<int>(n));
}

Scalar poch(const Scalar& a, long n) { return pochhammer(a, static_cast<int>(n)); }

}  // namespace

Scalar lambda_fn(const ParameterSet& ps, long x) {
    Scalar ex = eta(ps, x), r(1);
    for (long k = 0; k <= ps.N(); ++k) r *= ex - eta(ps, k);
    return r;
}

Scalar lambda_closed(const ParameterSet& ps, long x) {
    const long N = ps.N();
    const Scalar& q = ps.q();
    Scalar s = sign_pow(N + 1);
    switch (ps.info().eta) {
    case EtaType::I: return s * poch(Scalar(-x), N + 1);
    case EtaType::II: return s * poch(Scalar(-x), N + 1) * poch(Scalar(x) + ps.eta_d(), N + 1);
    case EtaType::III: return s * qpoch(q.pow(-x), q, N + 1) * q.pow((N + 1) * x);
    case EtaType::IV: return s * q.pow(-choose2(N + 1)) * qpoch(q.pow(-x), q, N + 1);
    case EtaType::V:
        return s * q.pow(-choose2(N + 1)) * qpoch(q.pow(-x), q, N + 1) *
               qpoch(ps.eta_d() * q.pow(x), q, N + 1);
    }
    return Scalar(0);
}

Scalar lambda_M(const ParameterSet& ps, int M, long x) {
    const long N = ps.N();
    const Scalar& q = ps.q();
    const Scalar d = ps.eta_d();
    switch (ps.info().eta) {
    case EtaType::I: return Scalar(1) / (poch(Scalar(x + 1), M) * poch(Scalar(x - N), M));
    case EtaType::II:
        return Scalar(1) / (poch(Scalar(x + 1), M) * poch(Scalar(x - N), M) *
                            poch(Scalar(x) + d, M) * poch(Scalar(x + N + 1) + d, M));
    case EtaType::III:
        return q.pow(-2L * M * N) / (qpoch(q.pow(x + 1), q, M) * qpoch(q.pow(x - N), q, M));
    case EtaType::IV:
        return q.pow(static_cast<long>(M) * (M + N) + 2L * M * x) /
               (qpoch(q.pow(x + 1), q, M) * qpoch(q.pow(x - N), q, M));
    case EtaType::V:
        return q.pow(static_cast<long>(M) * (M + N) + 2L * M * x) /
               (qpoch(q.pow(x + 1), q, M) * qpoch(q.pow(x - N), q, M) *
                qpoch(d * q.pow(x), q, M) * qpoch(d * q.pow(x + N + 1), q, M));
    }
    return Scalar(0);
}

Scalar lambda_M_def(const ParameterSet& ps, int M, long x) {
    ParameterSet up = ps.shifted(1, 0);
    Scalar num(1), den(1);
    for (int j = 1; j <= M; ++j) num *= lambda_fn(up, x + j - 1);
    for (int j = 1; j <= M + 1; ++j) den *= lambda_fn(ps, x + j - 1);
    Scalar r = num / den;
    return r * r * lambda_fn(ps, x) * lambda_fn(ps, x + M);
}

Scalar varphi_M(const ParameterSet& ps, int M, long x) {
    Scalar r(1);
    for (int k = 2; k <= M; ++k)
        for (int j = 1; j < k; ++j) r *= varphi(ps.shifted(k - j - 1, 0), x + j - 1);
    return r;
}

Scalar varphi_M_closed(const ParameterSet& ps, int M, long x) {
    const Scalar& q = ps.q();
    const Scalar d = ps.eta_d();
    long e = choose2(M) * x + choose3(M);
    switch (ps.info().eta) {
    case EtaType::I: return Scalar(1);
    case EtaType::II: {
        Scalar num(1), den(1);
        for (int j = 1; j <= M / 2; ++j) num *= poch(Scalar(2 * x + 2 * j - 1) + d, 2 * M - 4 * j + 1);
        for (int j = 1; j <= M - 1; ++j) den *= poch(d + Scalar(1), j);
        return num / den;
    }
    case EtaType::III: return q.pow(e);
    case EtaType::IV: return q.pow(-e);
    case EtaType::V: {
        Scalar num(1), den(1);
        for (int j = 1; j <= M / 2; ++j)
            num *= qpoch(d * q.pow(2 * x + 2 * j - 1), q, 2 * M - 4 * j + 1);
        for (int j = 1; j <= M - 1; ++j) den *= qpoch(d * q, q, j);
        return num / den * q.pow(-e);
    }
    }
    return Scalar(0);
}

namespace {

// Pair factor of c_eta for labels u < v in list order (u = d_j, v = d_k, j < k).
Scalar pair_factor(const ParameterSet& ps, long dj, long dk) {
    const Scalar& q = ps.q();
    switch (ps.info().eta) {
    case EtaType::I:
    case EtaType::II: return Scalar(dk - dj);
    case EtaType::III: return q.pow(dj) - q.pow(dk);
    case EtaType::IV:
    case EtaType::V: return q.pow(-dk) - q.pow(-dj);
    }
    return Scalar(0);
}

}  // namespace

Scalar c_eta(const ParameterSet& ps, const std::vector<long>& D) {
    const long M = static_cast<long>(D.size());
    const Scalar& q = ps.q();
    Scalar r(1);
    for (std::size_t k = 0; k < D.size(); ++k)
        for (std::size_t j = 0; j < k; ++j) {
            if (D[j] == D[k]) throw std::invalid_argument("c_eta: repeated label");
            r *= pair_factor(ps, D[j], D[k]);
        }
    switch (ps.info().eta) {
    case EtaType::I: break;
    case EtaType::II:
        for (long j = 1; j <= M - 1; ++j) r *= poch(ps.eta_d() + Scalar(1), j);
        break;
    case EtaType::III: r *= q.pow(-choose3(M)); break;
    case EtaType::IV: r *= q.pow(choose3(M)); break;
    case EtaType::V:
        r *= q.pow(choose3(M));
        for (long j = 1; j <= M - 1; ++j) r *= qpoch(ps.eta_d() * q, q, j);
        break;
    }
    return r;
}

Scalar c_eta_n(const ParameterSet& ps, const std::vector<long>& D, long n) {
    std::vector<long> Dn = D;
    Dn.push_back(n);
    return c_eta(ps, Dn);
}

Scalar c_eta_prime(const ParameterSet& ps, const std::vector<long>& D, std::size_t i) {
    if (i >= D.size()) throw std::invalid_argument("c_eta_prime: index out of range");
    long n = D[i];
    std::vector<long> rest;
    for (std::size_t j = 0; j < D.size(); ++j)
        if (j != i) rest.push_back(D[j]);
    // c_eta of D u {n} with the single vanishing factor removed: rebuild the
    // product directly in the order (D, n).
    const long M = static_cast<long>(D.size());
    const Scalar& q = ps.q();
    Scalar r(1);
    for (std::size_t k = 0; k < D.size(); ++k)
        for (std::size_t j = 0; j < k; ++j) r *= pair_factor(ps, D[j], D[k]);
    for (std::size_t j = 0; j < D.size(); ++j)
        if (j != i) r *= pair_factor(ps, D[j], n);
    switch (ps.info().eta) {
    case EtaType::I: break;
    case EtaType::II:
        for (long j = 1; j <= M; ++j) r *= poch(ps.eta_d() + Scalar(1), j);
        break;
    case EtaType::III: r *= q.pow(-choose3(M + 1)); break;
    case EtaType::IV: r *= q.pow(choose3(M + 1)); break;
    case EtaType::V:
        r *= q.pow(choose3(M + 1));
        for (long j = 1; j <= M; ++j) r *= qpoch(ps.eta_d() * q, q, j);
        break;
    }
    return r;
}

Scalar lambda_ratio_factor(const ParameterSet& ps, int M) {
    long e = static_cast<long>(M) * (M + 1) / 2;
    switch (ps.info().eta) {
    case EtaType::III: return ps.q().pow(-e);
    case EtaType::IV:
    case EtaType::V: return ps.q().pow(e);
    default: return Scalar(1);
    }
}

Scalar lambda_shift_ratio(const ParameterSet& ps, int M, int j, long x) {
    const long N = ps.N();
    const Scalar& q = ps.q();
    const Scalar d = ps.eta_d();
    Scalar s = sign_pow(M);
    switch (ps.info().eta) {
    case EtaType::I:
        return s * poch(Scalar(-x - j + 1), j - 1) * poch(Scalar(-x + N - M + 1), M + 1 - j);
    case EtaType::II:
        return s * poch(Scalar(-x - j + 1), j - 1) * poch(Scalar(x + N + 1) + d, j - 1) *
               poch(Scalar(-x + N - M + 1), M + 1 - j) * poch(Scalar(x + j - 1) + d, M + 1 - j);
    case EtaType::III:
        return s * q.pow(static_cast<long>(j - 1) * (N + 1) + M * x) *
               qpoch(q.pow(-x - j + 1), q, j - 1) * qpoch(q.pow(-x + N - M + 1), q, M + 1 - j);
    case EtaType::IV:
        return s * q.pow(choose2(M) - M * N) * qpoch(q.pow(-x - j + 1), q, j - 1) *
               qpoch(q.pow(-x + N - M + 1), q, M + 1 - j);
    case EtaType::V:
        return s * q.pow(choose2(M) - M * N) * qpoch(q.pow(-x - j + 1), q, j - 1) *
               qpoch(d * q.pow(x + N + 1), q, j - 1) *
               qpoch(q.pow(-x + N - M + 1), q, M + 1 - j) *
               qpoch(d * q.pow(x + j - 1), q, M + 1 - j);
    }
    return Scalar(0);
}

Scalar x_coeff(const ParameterSet& ps, int M, int j, long x) {
    const long N = ps.N();
    const Scalar& q = ps.q();
    const Scalar one(1), d = ps.eta_d();
    Scalar r(0);
    switch (ps.info().eta) {
    case EtaType::I:
    case EtaType::II:
        for (int l = 0; l <= M - j; ++l) r += one / Scalar(-x + N - M + 1 + l);
        if (ps.info().eta == EtaType::II)
            for (int l = 0; l <= j - 2; ++l) r += one / (Scalar(x + N + 1 + l) + d);
        return r;
    case EtaType::III:
        r = Scalar(1 - j);
        for (int l = 0; l <= M - j; ++l) r -= one / (one - q.pow(x - N + M - 1 - l));
        return r;
    case EtaType::IV:
        r = Scalar(j - 1);
        for (int l = 0; l <= M - j; ++l) r += one / (one - q.pow(-x + N - M + 1 + l));
        return r;
    case EtaType::V:
        for (int l = 0; l <= M - j; ++l) r += one / (one - q.pow(-x + N - M + 1 + l));
        for (int l = 0; l <= j - 2; ++l) r += one / (one - d * q.pow(x + N + 1 + l));
        return r;
    }
    return r;
}

Scalar y_coeff(const ParameterSet& ps, int M, int j, long x) {
    const long N = ps.N();
    const Scalar& q = ps.q();
    const Scalar d = ps.eta_d();
    Scalar s = sign_pow(N + 1);
    auto sum_i = [&]() {
        Scalar r(0);
        for (int l = 0; l <= M - j; ++l)
            r += poch(Scalar(-x - j + 1), N - M + j + l) * poch(Scalar(-x + N - M + l + 2), M - j - l);
        return r;
    };
    auto sum_iv = [&]() {
        Scalar r(0);
        for (int l = 0; l <= M - j; ++l)
            r += qpoch(q.pow(-x - j + 1), q, N - M + j + l) *
                 qpoch(q.pow(-x + N - M + l + 2), q, M - j - l);
        return r;
    };
    switch (ps.info().eta) {
    case EtaType::I: return s * sum_i();
    case EtaType::II: {
        Scalar tail(0);
        for (int l = 0; l <= j - 2; ++l)
            tail += poch(Scalar(x + j - 1) + d, N - j + 2 + l) * poch(Scalar(x + N + l + 2) + d, j - 2 - l);
        return s * (poch(Scalar(x + j - 1) + d, N + 1) * sum_i() +
                    poch(Scalar(-x - j + 1), N + 1) * tail);
    }
    case EtaType::III: {
        Scalar r(0);
        for (int l = 0; l <= M - j; ++l)
            r += qpoch(q.pow(x + j - 1 - N), q, M - j - l) *
                 qpoch(q.pow(x - N + M - l), q, N - M + j + l);
        return Scalar(1 - j) * lambda_fn(ps, x + j - 1) - q.pow(choose2(N + 1)) * r;
    }
    case EtaType::IV:
        return Scalar(j - 1) * lambda_fn(ps, x + j - 1) + s * q.pow(-choose2(N + 1)) * sum_iv();
    case EtaType::V: {
        Scalar tail(0);
        for (int l = 0; l <= j - 2; ++l)
            tail += qpoch(d * q.pow(x + j - 1), q, N - j + 2 + l) *
                    qpoch(d * q.pow(x + N + l + 2), q, j - 2 - l);
        return s * q.pow(-choose2(N + 1)) *
               (qpoch(d * q.pow(x + j - 1), q, N + 1) * sum_iv() +
                qpoch(q.pow(-x - j + 1), q, N + 1) * tail);
    }
    }
    return Scalar(0);
}

Scalar a_prime(const ParameterSet& ps, long n, long di) {
    const Scalar& q = ps.q();
    switch (ps.info().eta) {
    case EtaType::I:
    case EtaType::II: return Scalar(n - di);
    case EtaType::III: return q.pow(di) - q.pow(n);
    default: return q.pow(-n) - q.pow(-di);
    }
}

Scalar a_double_prime(const ParameterSet& ps, long n, long di) {
    const Scalar& q = ps.q();
    switch (ps.info().energy) {
    case EnergyType::I:
    case EnergyType::II: return Scalar(n - di);
    case EnergyType::III: return q.pow(di) - q.pow(n);
    default: return q.pow(-n) - q.pow(-di);
    }
}

Scalar energy_gap_rest(const ParameterSet& ps, long n, long di) {
    switch (ps.info().energy) {
    case EnergyType::II: return Scalar(n + di) + ps.energy_d();
    case EnergyType::V: return Scalar(1) - ps.energy_d() * ps.q().pow(n + di);
    default: return Scalar(1);
    }
}

}  // namespace miop
