#pragma once

#include "miop/family.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace miop {

// Dense univariate polynomial with exact coefficients, lowest degree first.
struct Poly {
    std::vector<Scalar> coef;

    int degree() const;  // -1 for the zero polynomial
    Scalar leading() const;
    Scalar operator()(const Scalar& t) const;
    void trim();
};

// Interpolating polynomial through (t_i, y_i); the t_i must be distinct.
Poly interpolate(const std::vector<Scalar>& ts, const std::vector<Scalar>& ys);

// Quotient and remainder; throws std::domain_error for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// A function of x sampled at integer points and fitted as a polynomial in
// eta(x; coord).
struct EtaFit {
    Poly poly;
    std::vector<long> nodes;
    bool consistent = false;  // extra nodes agree with the fit
};

// Fits f in eta(x; coord) with degree <= max_degree, using candidates in
// order. Candidates where f throws std::domain_error, or whose eta value
// collides with an earlier node, are skipped. `extra` further nodes check
// the fit.
EtaFit fit_in_eta(const ParameterSet& coord, const std::function<Scalar(long)>& f, int max_degree,
                  const std::vector<long>& candidates, int extra = 2);

// Candidate list lo, lo-1, ..., alternating with hi, hi+1, ... (outward from a window).
std::vector<long> outward_candidates(long lo, long hi, std::size_t count);

}  // namespace miop
