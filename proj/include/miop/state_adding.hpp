#pragma once

#include "miop/casoratian.hpp"
#include "miop/eta_poly.hpp"
#include "miop/family.hpp"
#include "miop/fault.hpp"
#include "miop/index_set.hpp"
#include "miop/tridiagonal.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace miop {

// Monic denominator polynomial rho^{(N+1) ell} Xi^KA_{D'}(x-N-1; lambda'), evaluated
// pointwise. Pass ps.shifted(1, 0) for the lambda+delta variant.
Scalar xi_q_monic_raw(const ParameterSet& ps, const IndexSet& Dprime, long x,
                      SampleCache* cache = nullptr);

// Pointwise value of the monic added-state polynomial from its defining
// expression. Throws std::domain_error where the Lambda product (or phi_{M+1})
// vanishes. For n = d_i the limit prescription is used; `third_term` toggles
// the Lambda * Ptilde2 part of the last column.
Scalar q_monic_raw(const ParameterSet& ps, const IndexSet& D, long n, long x, Fault fault = Fault::none,
                   SampleCache* cache = nullptr, bool third_term = true);

// Last column R_j(x), j = 1..M+1, of the n = d_i determinant.
Scalar r_column(const ParameterSet& ps, const IndexSet& D, std::size_t i, int j, long x,
                Fault fault = Fault::none, bool third_term = true);

// Per-j intermediate values of the limit prescription at x.
struct LimitExpansion {
    std::vector<Scalar> X, Y, R;
    long B_const = 0;
    Scalar d_prime_monic_sq;
};
LimitExpansion limit_expansion(const ParameterSet& ps, const IndexSet& D, std::size_t i, long x);

// Product of Lambda(x+j-1; lambda) over j = 1..M.
Scalar lambda_product(const ParameterSet& ps, int M, long x);

// Exact division checks of the deleted-state objects with labels > N.
struct DivisionResult {
    bool divisible = false;
    bool consistent = false;  // fits reproduced their extra nodes
    Poly quotient;
};
// Xi^KA,monic_D by prod Lambda(x+j-1; lambda), in eta(x; lambda+(M-1)delta).
DivisionResult ka_xi_division(const ParameterSet& ps, const IndexSet& D);
// P^KA,monic_{D,n} by prod Lambda(x+j-1; lambda+delta), in eta(x; lambda+M delta).
DivisionResult ka_p_division(const ParameterSet& ps, const IndexSet& D, long n);

// Constant in front of prod Lambda * Xi^KA,monic_{D'}(x-N-1; lambda') in the
// factorized Xi^KA,monic_D.
Scalar ka_xi_factor_constant(const ParameterSet& ps, const IndexSet& D);

// State-adding deformation with labels d_j = N+1+m_j on the grid -M..N.
class QSystem {
public:
    QSystem(ParameterSet ps, IndexSet D, Fault fault = Fault::none);

    const ParameterSet& params() const { return ps_; }
    const IndexSet& D() const { return D_; }
    const IndexSet& Dprime() const { return Dp_; }
    int M() const { return D_.M(); }
    long lo() const { return -M(); }
    long hi() const { return ps_.N(); }
    const std::vector<long>& levels() const { return levels_; }  // {0..N} and D
    Fault fault() const { return fault_; }

    Scalar xi_monic(long x) const;
    Scalar xi_shift_monic(long x) const;  // lambda + delta variant
    Scalar xi(long x) const;              // normalized, xi(-M) = 1
    bool regular() const;

    // Fitted monic polynomial in eta(x; lambda+M delta), for any n >= 0.
    const EtaFit& q_fit(long n) const;
    Scalar q_monic(long n, long x) const;
    Scalar q(long n, long x) const;  // q(n, -M) = 1
    std::vector<Scalar> q_vector(long n) const;

    Scalar potential_B(long x) const;
    Scalar potential_D(long x) const;
    Tridiagonal matrix() const;
    Scalar weight(long x) const;
    Scalar orthogonality_sum(long n, long m) const;
    Scalar norm_sq(long n) const;  // d^{Q,monic}_{D',n}^2

    SampleCache& cache() const { return *cache_; }

private:
    ParameterSet ps_;
    IndexSet D_, Dp_;
    Fault fault_;
    std::vector<long> levels_;
    std::shared_ptr<SampleCache> cache_;
    std::map<long, Scalar> xi_, xid_;
    Scalar xi_anchor_;
    struct FitStore {
        std::mutex mu;
        std::map<long, std::unique_ptr<EtaFit>> fits;
    };
    std::shared_ptr<FitStore> store_;
};

}  // namespace miop
