#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace miop {

// Exact rational number. Division by zero throws instead of aborting.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : v_(v) {}
    Scalar(long v) : v_(v) {}
    Scalar(long num, long den);
    explicit Scalar(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "p", "p/q", "-p/q".
    static Scalar parse(const std::string& text);

    const mpq_class& raw() const { return v_; }

    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(mpq_class(-v_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    // Integer power; negative exponents invert (throws on 0^-k).
    Scalar pow(long k) const;

    // Canonical "p/q" (or "p" when the denominator is 1).
    std::string str() const;
    // Truncated decimal expansion for display only.
    std::string decimal(int digits = 12) const;
    double to_double() const { return v_.get_d(); }

    // Number of bits in numerator plus denominator, a rough size measure.
    std::size_t bit_size() const;

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Rising factorial (a)_n = a(a+1)...(a+n-1), n >= 0.
template <class T>
T pochhammer(const T& a, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: negative length");
    T r(1);
    T t = a;
    for (int i = 0; i < n; ++i) {
        r *= t;
        t += T(1);
    }
    return r;
}

// (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}), n >= 0.
template <class T>
T q_pochhammer(const T& a, const Scalar& q, int n) {
    if (n < 0) throw std::invalid_argument("q_pochhammer: negative length");
    T r(1);
    T t = a;
    for (int i = 0; i < n; ++i) {
        r *= T(1) - t;
        t *= T(q);
    }
    return r;
}

// Binomial coefficient for integer N of either sign, via (-1)^n (-N)_n / n!.
Scalar binomial(long N, int n);

// Gaussian binomial via (-1)^n (q^{-N};q)_n / (q;q)_n * q^{Nn - n(n-1)/2}.
Scalar q_binomial(long N, int n, const Scalar& q);

Scalar factorial(int n);

inline long choose2(long n) { return n * (n - 1) / 2; }
inline long choose3(long n) { return n * (n - 1) * (n - 2) / 6; }

}  // namespace miop
