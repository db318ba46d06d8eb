#include "miop/eta_poly.hpp"

#include <stdexcept>

namespace miop {

int Poly::degree() const {
    for (int i = static_cast<int>(coef.size()) - 1; i >= 0; --i)
        if (!coef[i].is_zero()) return i;
    return -1;
}

Scalar Poly::leading() const {
    int d = degree();
    return d < 0 ? Scalar(0) : coef[d];
}

Scalar Poly::operator()(const Scalar& t) const {
    Scalar r(0);
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) r = r * t + *it;
    return r;
}

void Poly::trim() { coef.resize(static_cast<std::size_t>(degree() + 1)); }

Poly interpolate(const std::vector<Scalar>& ts, const std::vector<Scalar>& ys) {
    if (ts.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    const std::size_t n = ts.size();
    std::vector<Scalar> dd = ys;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            Scalar den = ts[i] - ts[i - k];
            if (den.is_zero()) throw std::invalid_argument("interpolate: repeated node");
            dd[i] = (dd[i] - dd[i - 1]) / den;
        }
    // Horner on the Newton form.
    Poly p;
    p.coef.assign(n, Scalar(0));
    for (std::size_t k = n; k-- > 0;) {
        // p = p * (t - ts[k]) + dd[k]
        std::vector<Scalar> next(n, Scalar(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (p.coef[i].is_zero()) continue;
            if (i + 1 < n) next[i + 1] += p.coef[i];
            next[i] -= p.coef[i] * ts[k];
        }
        next[0] += dd[k];
        p.coef = std::move(next);
    }
    p.trim();
    return p;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    int db = b.degree();
    if (db < 0) throw std::domain_error("divmod: zero divisor");
    Poly r = a;
    r.trim();
    Poly q;
    int da = r.degree();
    q.coef.assign(static_cast<std::size_t>(std::max(da - db + 1, 0)), Scalar(0));
    Scalar lb = b.coef[db];
    while ((da = r.degree()) >= db) {
        Scalar f = r.coef[da] / lb;
        q.coef[da - db] = f;
        for (int i = 0; i <= db; ++i) r.coef[da - db + i] -= f * b.coef[i];
    }
    r.trim();
    q.trim();
    return {q, r};
}

EtaFit fit_in_eta(const ParameterSet& coord, const std::function<Scalar(long)>& f, int max_degree,
                  const std::vector<long>& candidates, int extra) {
    EtaFit fit;
    std::vector<Scalar> ts, ys;
    const std::size_t need = static_cast<std::size_t>(max_degree + 1 + extra);
    for (long x : candidates) {
        if (ts.size() == need) break;
        Scalar t, y;
        try {
            t = eta(coord, x);
            y = f(x);
        } catch (const std::domain_error&) {
            continue;
        }
        bool dup = false;
        for (const auto& s : ts)
            if (s == t) { dup = true; break; }
        if (dup) continue;
        ts.push_back(t);
        ys.push_back(y);
        fit.nodes.push_back(x);
    }
    if (ts.size() < static_cast<std::size_t>(max_degree + 1))
        throw std::domain_error("fit_in_eta: not enough usable nodes");
    std::size_t base = std::min(ts.size(), static_cast<std::size_t>(max_degree + 1));
    fit.poly = interpolate(std::vector<Scalar>(ts.begin(), ts.begin() + base),
                           std::vector<Scalar>(ys.begin(), ys.begin() + base));
    fit.consistent = ts.size() == need;
    for (std::size_t i = base; i < ts.size(); ++i)
        if (fit.poly(ts[i]) != ys[i]) fit.consistent = false;
    return fit;
}

std::vector<long> outward_candidates(long lo, long hi, std::size_t count) {
    std::vector<long> out;
    long a = lo - 1, b = hi + 1;
    while (out.size() < count) {
        out.push_back(b++);
        if (out.size() < count) out.push_back(a--);
    }
    return out;
}

}  // namespace miop
