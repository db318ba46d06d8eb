#include "miop/scalar.hpp"

#include <cctype>

namespace miop {

Scalar::Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Scalar Scalar::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("Scalar::parse: empty string");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("Scalar::parse: malformed rational '" + text + "'");
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::domain_error("Scalar::parse: zero denominator in '" + text + "'");
    mpq_class v(n, d);
    v.canonicalize();
    return Scalar(v);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    v_ /= o.v_;
    return *this;
}

Scalar Scalar::pow(long k) const {
    if (k < 0) {
        if (is_zero()) throw std::domain_error("Scalar::pow: zero to a negative power");
        return (Scalar(1) / *this).pow(-k);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(k));
    return Scalar(mpq_class(n, d));
}

std::string Scalar::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Scalar::decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class a = abs(v_.get_num()) * scale / v_.get_den();
    std::string s = a.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return (sign() < 0 ? "-" : "") + s;
}

std::size_t Scalar::bit_size() const {
    return mpz_sizeinbase(v_.get_num_mpz_t(), 2) + mpz_sizeinbase(v_.get_den_mpz_t(), 2);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar binomial(long N, int n) {
    if (n < 0) return Scalar(0);
    Scalar r = pochhammer(Scalar(-N), n) / factorial(n);
    return (n % 2) ? -r : r;
}

Scalar q_binomial(long N, int n, const Scalar& q) {
    if (n < 0) return Scalar(0);
    Scalar r = q_pochhammer(q.pow(-N), q, n) / q_pochhammer(q, q, n) *
               q.pow(N * n - choose2(n));
    return (n % 2) ? -r : r;
}

Scalar factorial(int n) {
    Scalar r(1);
    for (int i = 2; i <= n; ++i) r *= Scalar(i);
    return r;
}

}  // namespace miop
