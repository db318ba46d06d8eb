#include "miop/fault.hpp"

#include <stdexcept>

namespace miop {

namespace {

const std::vector<std::pair<Fault, const char*>>& table() {
    static const std::vector<std::pair<Fault, const char*>> t{
        {Fault::none, "none"},
        {Fault::drop_rho_binom, "drop_rho_binom"},
        {Fault::drop_rho_minus_n, "drop_rho_minus_n"},
        {Fault::perturb_norm, "perturb_norm"},
        {Fault::drop_kappa_M, "drop_kappa_M"},
        {Fault::drop_ptilde1, "drop_ptilde1"},
        {Fault::drop_y_term, "drop_y_term"},
    };
    return t;
}

}  // namespace

Fault parse_fault(const std::string& name) {
    for (const auto& [f, n] : table())
        if (name == n) return f;
    throw std::invalid_argument("unknown fault '" + name + "'");
}

std::string fault_name(Fault f) {
    for (const auto& [g, n] : table())
        if (g == f) return n;
    return "none";
}

const std::vector<Fault>& all_faults() {
    static const std::vector<Fault> v = [] {
        std::vector<Fault> out;
        for (const auto& [f, n] : table())
            if (f != Fault::none) out.push_back(f);
        return out;
    }();
    return v;
}

}  // namespace miop
