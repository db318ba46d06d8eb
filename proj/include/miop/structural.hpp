#pragma once

#include "miop/family.hpp"

#include <vector>

namespace miop {

// Lambda(x) = prod_{k=0}^{N} (eta(x) - eta(k)); the product form is the reference.
Scalar lambda_fn(const ParameterSet& ps, long x);
Scalar lambda_closed(const ParameterSet& ps, long x);

// Lambda_M(x): tabulated closed form, and the defining ratio of Lambda products.
Scalar lambda_M(const ParameterSet& ps, int M, long x);
Scalar lambda_M_def(const ParameterSet& ps, int M, long x);

// phi_M(x) from its double product, and its closed form.
Scalar varphi_M(const ParameterSet& ps, int M, long x);
Scalar varphi_M_closed(const ParameterSet& ps, int M, long x);

// Leading coefficient of phi_M^{-1} W_C[eta^{d_1},...,eta^{d_M}].
Scalar c_eta(const ParameterSet& ps, const std::vector<long>& D);
// Same with n appended to D (n not in D).
Scalar c_eta_n(const ParameterSet& ps, const std::vector<long>& D, long n);
// c_eta_n at n = D[i] with the vanishing factor omitted.
Scalar c_eta_prime(const ParameterSet& ps, const std::vector<long>& D, std::size_t i);

// Factor q^{-+M(M+1)/2} (or 1) relating the Lambda product ratio to Lambda(x+M; lambda - M dbar).
Scalar lambda_ratio_factor(const ParameterSet& ps, int M);

// Lambda(x+j-1; lambda) / Lambda(x; lambda + M delta), closed form, 1 <= j <= M+1.
Scalar lambda_shift_ratio(const ParameterSet& ps, int M, int j, long x);

// First-order coefficients of the N -> N+eps shift of Lambda ratios.
Scalar x_coeff(const ParameterSet& ps, int M, int j, long x);
Scalar y_coeff(const ParameterSet& ps, int M, int j, long x);

// Factors of c_eta_n and E_n - E_{d_i} that vanish at n = d_i.
Scalar a_prime(const ParameterSet& ps, long n, long di);
Scalar a_double_prime(const ParameterSet& ps, long n, long di);
// (E_n - E_{d_i}) / A''.
Scalar energy_gap_rest(const ParameterSet& ps, long n, long di);

}  // namespace miop
