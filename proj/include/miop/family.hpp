#pragma once

#include "miop/scalar.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace miop {

enum class FamilyId { H, K, R, dH, dqqK, qH, qK, qqK, aqK, qR, dqH, dqK };

// Structural type of the sinusoidal coordinate, numbered (i)..(v).
enum class EtaType { I, II, III, IV, V };
// Structural type of the energy spectrum, numbered (i)'..(v)'.
enum class EnergyType { I, II, III, IV, V };

struct FamilyInfo {
    FamilyId id;
    const char* name;
    bool is_q;
    std::vector<std::string> params;  // free parameters, N excluded
    std::vector<int> delta;           // shift on the free parameters; N always shifts by -1
    std::vector<int> delta_bar;
    int kappa_exp;  // kappa = q^kappa_exp (1 for non-q families)
    int rho_exp;
    EtaType eta;
    EnergyType energy;
    char positivity_class;  // 'a' or 'b'
};

const FamilyInfo& family_info(FamilyId f);
const std::vector<FamilyId>& all_families();
FamilyId parse_family(const std::string& name);
std::string family_name(FamilyId f);
int roman(EtaType t);
int roman(EnergyType t);

// A concrete parameter point. For R and qR the parameter a is not stored:
// it is -N resp. q^{-N}. N may be negative for reflected parameter sets,
// which are only ever used as arguments of polynomial evaluations.
class ParameterSet {
public:
    ParameterSet() = default;
    ParameterSet(FamilyId f, long N, std::map<std::string, Scalar> values, Scalar q = Scalar(1, 2));

    FamilyId family() const { return fam_; }
    const FamilyInfo& info() const { return family_info(fam_); }
    bool is_q() const { return info().is_q; }
    long N() const { return N_; }
    const Scalar& q() const { return q_; }
    const std::vector<Scalar>& values() const { return vals_; }
    const Scalar& value(const std::string& name) const;

    Scalar a() const;
    Scalar b() const { return value("b"); }
    Scalar c() const { return value("c"); }
    Scalar d() const { return value("d"); }
    Scalar p() const { return value("p"); }

    Scalar kappa() const { return q_.pow(info().kappa_exp); }
    Scalar rho() const { return q_.pow(info().rho_exp); }

    // lambda + k_delta*delta + k_delta_bar*delta_bar.
    ParameterSet shifted(long k_delta, long k_delta_bar) const;
    // lambda' = lambda + (N+1)(delta + delta_bar), with N' = -N-2.
    ParameterSet reflected() const { return shifted(N_ + 1, N_ + 1); }

    // Parameter of the sinusoidal coordinate for types (ii) and (v).
    Scalar eta_d() const;
    // Parameter d~ of the energy for types (ii)' and (v)'.
    Scalar energy_d() const;

    // q^k as an exact rational (only for q-families; 1 otherwise).
    Scalar qpow(long k) const { return q_.pow(k); }

    std::map<std::string, std::string> to_strings() const;
    std::string describe() const;

    friend bool operator==(const ParameterSet& x, const ParameterSet& y) {
        return x.fam_ == y.fam_ && x.N_ == y.N_ && x.q_ == y.q_ && x.vals_ == y.vals_;
    }

private:
    FamilyId fam_ = FamilyId::H;
    long N_ = 0;
    Scalar q_ = Scalar(1, 2);
    std::vector<Scalar> vals_;
};

// Coordinate-free family data, evaluated at integer points.
Scalar energy(const ParameterSet& ps, long n);
Scalar eta(const ParameterSet& ps, long x);
Scalar potential_B(const ParameterSet& ps, long x);
Scalar potential_D(const ParameterSet& ps, long x);
// (eta(x+1)-eta(x))/eta(1)
Scalar varphi(const ParameterSet& ps, long x);

// phi_0(x)^2 as the product of B(y)/D(y+1), y = 0..x-1 (x >= 0).
Scalar phi0_squared(const ParameterSet& ps, long x);
// Tabulated closed form, valid for 0 <= x <= N.
Scalar phi0_squared_closed(const ParameterSet& ps, long x);

// Monic polynomial of degree n in eta(x), from the explicit finite sum.
Scalar poly_monic(const ParameterSet& ps, int n, long x);
// Normalized polynomial c_n * monic, only for 0 <= n <= N.
Scalar poly(const ParameterSet& ps, int n, long x);

// Tabulated leading coefficient; throws std::domain_error for n > N.
Scalar leading_coeff(const ParameterSet& ps, int n);
// Universal product form of the leading coefficient.
Scalar leading_coeff_universal(const ParameterSet& ps, int n);

// The factor (-N)_n or (q^{-N};q)_n that makes c_n and d_n^2 singular beyond N.
Scalar singular_factor(const ParameterSet& ps, int n);
// c_n * singular_factor(n) and d_n^2 / singular_factor(n); defined for all n.
Scalar leading_coeff_regular(const ParameterSet& ps, int n);
Scalar norm_sq_regular(const ParameterSet& ps, int n);

// d_n^2 (0 <= n <= N), its monic version c_n^2 d_n^2, and 1/d_n^2.
Scalar norm_squared(const ParameterSet& ps, int n);
Scalar norm_squared_monic(const ParameterSet& ps, int n);
Scalar norm_squared_inv(const ParameterSet& ps, int n);
// The regularized monic norm for n = N+1+m.
Scalar norm_squared_monic_prime(const ParameterSet& ps, int n);

// First-order coefficients of the N -> N+eps expansion.
Scalar ptilde1(const ParameterSet& ps, int n, long x);
Scalar ptilde2(const ParameterSet& ps, int m, long x);
// Simplifying constant of the second expansion.
long ptilde2_shift_const(FamilyId f, int m);

// Positivity range of the original system (B, D > 0 inside the grid).
bool in_range(const ParameterSet& ps);
// Range for which the state-adding deformation with M seeds keeps phi_0 positive.
bool in_range_M(const ParameterSet& ps, int M);

// Documented default parameters used by campaigns.
ParameterSet default_parameters(FamilyId f, long N);

}  // namespace miop
