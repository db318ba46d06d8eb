#pragma once

#include <string>
#include <vector>

namespace miop {

// Deliberate single-prefactor corruptions, used to show that the suites notice them.
enum class Fault {
    none,
    drop_rho_binom,    // rho^{binom(M,2) N} in the added-state polynomials
    drop_rho_minus_n,  // rho^{-n} in the n = d_i member
    perturb_norm,      // closed-form norms doubled
    drop_kappa_M,      // kappa^M in the deleted-state operator
    drop_ptilde1,      // first-order polynomial term of R_j
    drop_y_term,       // Y_{M,j} term of R_j
};

Fault parse_fault(const std::string& name);
std::string fault_name(Fault f);
const std::vector<Fault>& all_faults();  // excluding none

}  // namespace miop
