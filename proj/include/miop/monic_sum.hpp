#pragma once

#include "miop/family.hpp"

namespace miop {

// Inputs of the explicit monic sums, generic in the value type so that the
// same sums can be expanded to first order in a test oracle. For q-families
// `x` holds q^x and `N` holds q^N; otherwise they hold x and N. For R and qR
// the parameter a is derived from N and the stored `a` is ignored.
template <class T>
struct SumPoint {
    FamilyId fam;
    Scalar q;
    T x, N;
    T a, b, c, d, p;
};

template <class T>
SumPoint<T> make_sum_point(const ParameterSet& ps, long x) {
    SumPoint<T> s{ps.family(), ps.q(), T(0), T(0), T(0), T(0), T(0), T(0), T(0)};
    if (ps.is_q()) {
        s.x = T(ps.qpow(x));
        s.N = T(ps.qpow(ps.N()));
    } else {
        s.x = T(Scalar(x));
        s.N = T(Scalar(ps.N()));
    }
    const auto& names = ps.info().params;
    for (std::size_t i = 0; i < names.size(); ++i) {
        T v(ps.values()[i]);
        if (names[i] == "a") s.a = v;
        else if (names[i] == "b") s.b = v;
        else if (names[i] == "c") s.c = v;
        else if (names[i] == "d") s.d = v;
        else if (names[i] == "p") s.p = v;
    }
    return s;
}

namespace detail {

template <class T>
T tpow(const T& v, long k) {
    if (k < 0) return T(1) / tpow(v, -k);
    T r(1);
    for (long i = 0; i < k; ++i) r *= v;
    return r;
}

}  // namespace detail

template <class T>
T monic_sum(const SumPoint<T>& s, int n) {
    using detail::tpow;
    const Scalar& q = s.q;
    auto P = [](const T& a, int k) { return pochhammer(a, k); };
    auto Q = [&q](const T& a, int k) { return q_pochhammer(a, q, k); };
    auto qs = [&q](long k) { return T(q.pow(k)); };
    T sum(0);
    T one(1);
    switch (s.fam) {
    case FamilyId::H:
        for (int k = 0; k <= n; ++k)
            sum += P(s.a + T(k), n - k) * P(T(k) - s.N, n - k) /
                   P(T(n - 1 + k) + s.a + s.b, n - k) * P(T(-n), k) * P(-s.x, k) /
                   T(factorial(k));
        break;
    case FamilyId::K:
        for (int k = 0; k <= n; ++k)
            sum += P(T(k) - s.N, n - k) * P(T(-n), k) * P(-s.x, k) / T(factorial(k)) *
                   tpow(s.p, n - k);
        break;
    case FamilyId::R: {
        T a = -s.N;
        T dt = a + s.b + s.c - s.d - one;
        for (int k = 0; k <= n; ++k)
            sum += P(a + T(k), n - k) * P(s.b + T(k), n - k) * P(s.c + T(k), n - k) /
                   P(dt + T(n + k), n - k) * P(T(-n), k) * P(-s.x, k) * P(s.x + s.d, k) /
                   T(factorial(k));
        break;
    }
    case FamilyId::dH:
        for (int k = 0; k <= n; ++k)
            sum += P(s.a + T(k), n - k) * P(T(k) - s.N, n - k) * P(T(-n), k) *
                   P(s.x + s.a + s.b - one, k) * P(-s.x, k) / T(factorial(k));
        break;
    case FamilyId::dqqK: {
        T qmN = one / s.N, qmx = one / s.x;
        for (int k = 0; k <= n; ++k)
            sum += Q(qmN * qs(k), n - k) * Q(qs(-n), k) * Q(qmx, k) / Q(qs(1), k) *
                   tpow(s.p, k - n) * tpow(s.x, k) * qs(k + choose2(n));
        break;
    }
    case FamilyId::qH: {
        T qmN = one / s.N, qmx = one / s.x;
        for (int k = 0; k <= n; ++k)
            sum += Q(s.a * qs(k), n - k) * Q(qmN * qs(k), n - k) /
                   Q(s.a * s.b * qs(n - 1 + k), n - k) * Q(qs(-n), k) * Q(qmx, k) /
                   Q(qs(1), k) * qs(k);
        break;
    }
    case FamilyId::qK: {
        T qmN = one / s.N, qmx = one / s.x;
        for (int k = 0; k <= n; ++k)
            sum += Q(qmN * qs(k), n - k) / Q(-s.p * qs(n + k), n - k) * Q(qs(-n), k) *
                   Q(qmx, k) / Q(qs(1), k) * qs(k);
        break;
    }
    case FamilyId::qqK: {
        T qmN = one / s.N, qmx = one / s.x;
        for (int k = 0; k <= n; ++k)
            sum += Q(qmN * qs(k), n - k) * Q(qs(-n), k) * Q(qmx, k) / Q(qs(1), k) *
                   tpow(s.p, k - n) * qs(static_cast<long>(n + 1) * k - static_cast<long>(n) * n);
        break;
    }
    case FamilyId::aqK: {
        T qmN = one / s.N, qmx = one / s.x;
        for (int k = 0; k <= n; ++k)
            sum += Q(s.p * qs(1 + k), n - k) * Q(qmN * qs(k), n - k) * Q(qs(-n), k) *
                   Q(qmx, k) / Q(qs(1), k) * qs(k);
        break;
    }
    case FamilyId::qR: {
        T a = one / s.N, qmx = one / s.x;
        T dt = a * s.b * s.c / (s.d * qs(1));
        for (int k = 0; k <= n; ++k)
            sum += Q(a * qs(k), n - k) * Q(s.b * qs(k), n - k) * Q(s.c * qs(k), n - k) /
                   Q(dt * qs(n + k), n - k) * Q(qs(-n), k) * Q(qmx, k) * Q(s.d * s.x, k) /
                   Q(qs(1), k) * qs(k);
        break;
    }
    case FamilyId::dqH: {
        T qmN = one / s.N, qmx = one / s.x;
        for (int k = 0; k <= n; ++k)
            sum += Q(s.a * qs(k), n - k) * Q(qmN * qs(k), n - k) * Q(qs(-n), k) *
                   Q(s.a * s.b * s.x * qs(-1), k) * Q(qmx, k) / Q(qs(1), k) * qs(k);
        break;
    }
    case FamilyId::dqK: {
        T qmN = one / s.N, qmx = one / s.x;
        for (int k = 0; k <= n; ++k)
            sum += Q(qmN * qs(k), n - k) * Q(qs(-n), k) * Q(qmx, k) * Q(-s.p * s.x, k) /
                   Q(qs(1), k) * qs(k);
        break;
    }
    }
    return sum;
}

}  // namespace miop
