#pragma once

#include "miop/casoratian.hpp"
#include "miop/family.hpp"
#include "miop/fault.hpp"
#include "miop/index_set.hpp"
#include "miop/tridiagonal.hpp"

#include <map>
#include <memory>
#include <optional>

namespace miop {

// Normalization constants of the deleted-state polynomials.
Scalar ka_C(const ParameterSet& ps, const IndexSet& D);
Scalar ka_C_n(const ParameterSet& ps, const IndexSet& D, long n);

// Normalized denominator and multi-indexed polynomials (labels and n <= N).
Scalar ka_xi(const ParameterSet& ps, const IndexSet& D, long x, SampleCache* cache = nullptr);
Scalar ka_p(const ParameterSet& ps, const IndexSet& D, long n, long x, SampleCache* cache = nullptr);

// Monic versions built from monic seeds; any nonnegative labels.
Scalar ka_xi_monic(const ParameterSet& ps, const IndexSet& D, long x, SampleCache* cache = nullptr);
Scalar ka_p_monic(const ParameterSet& ps, const IndexSet& D, long n, long x,
                  SampleCache* cache = nullptr);

// Grid functions of the (monic) seed polynomials, with memo ids.
GridFunction seed_poly(const ParameterSet& ps, long n);
GridFunction seed_poly_monic(const ParameterSet& ps, long n);

// State-deleting deformation with labels d_j <= N on the grid 0..N-M.
class KASystem {
public:
    KASystem(ParameterSet ps, IndexSet D, Fault fault = Fault::none);

    const ParameterSet& params() const { return ps_; }
    const IndexSet& D() const { return D_; }
    int M() const { return D_.M(); }
    long lo() const { return 0; }
    long hi() const { return ps_.N() - M(); }
    const std::vector<long>& levels() const { return levels_; }  // {0..N} minus D
    bool admissible() const { return ka_admissible(D_); }

    Scalar C() const { return C_; }
    Scalar C_n(long n) const { return ka_C_n(ps_, D_, n); }

    Scalar xi(long x) const;
    Scalar p(long n, long x) const;
    std::vector<Scalar> p_vector(long n) const;

    Scalar potential_B(long x) const;
    Scalar potential_D(long x) const;
    // Same potentials built from level n instead of mu.
    Scalar potential_B(long x, long n) const;
    Scalar potential_D(long x, long n) const;
    Scalar diagonal(long x) const;
    // Xi is nonzero on [lo, hi+1], so the deformed matrix and weight exist.
    bool regular() const;
    Tridiagonal matrix() const;

    Scalar weight(long x) const;
    Scalar orthogonality_sum(long n, long m) const;
    Scalar norm_sq(long n) const;  // closed form of d^KA_{D,n}^2

private:
    Scalar kappa_M() const;
    Scalar cached(const std::map<long, std::optional<Scalar>>& t, long x,
                  const std::function<Scalar(long)>& direct) const;

    ParameterSet ps_;
    IndexSet D_;
    Fault fault_;
    std::vector<long> levels_;
    Scalar C_;
    std::shared_ptr<SampleCache> cache_;
    std::map<long, std::optional<Scalar>> xi_;
    std::map<long, std::map<long, std::optional<Scalar>>> p_;
};

}  // namespace miop
