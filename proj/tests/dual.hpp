#pragma once

#include "miop/scalar.hpp"

// Truncated first-order numbers v + a*A with A^2 = 0. Used as an independent
// oracle for the N -> N+eps expansions.
struct Dual {
    miop::Scalar v, a;
    Dual() = default;
    Dual(int x) : v(x), a(0) {}
    Dual(const miop::Scalar& x) : v(x), a(0) {}
    Dual(const miop::Scalar& x, const miop::Scalar& y) : v(x), a(y) {}

    Dual& operator+=(const Dual& o) { v += o.v; a += o.a; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; a -= o.a; return *this; }
    Dual& operator*=(const Dual& o) {
        a = a * o.v + v * o.a;
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        a = (a * o.v - v * o.a) / (o.v * o.v);
        v /= o.v;
        return *this;
    }
    friend Dual operator+(Dual x, const Dual& y) { return x += y; }
    friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
    friend Dual operator*(Dual x, const Dual& y) { return x *= y; }
    friend Dual operator/(Dual x, const Dual& y) { return x /= y; }
    Dual operator-() const { return Dual(-v, -a); }
};
