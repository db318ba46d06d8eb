#pragma once

#include "miop/family.hpp"
#include "miop/index_set.hpp"

#include <optional>
#include <string>
#include <vector>

namespace miop {

class KASystem;
class QSystem;

struct PositivityVerdict {
    bool phi0_positive = false;
    bool xi_product_positive = false;
    std::optional<long> first_violation;  // smallest grid point where a sign test fails
    bool positive() const { return phi0_positive && xi_product_positive; }
};

char family_class(FamilyId f);

// Exact sign tests on the deformed grid; zeros count as violations.
PositivityVerdict scan(const QSystem& sys);
PositivityVerdict scan(const KASystem& sys);

struct ScanRow {
    ParameterSet params;
    IndexSet D;
    char cls = 'a';
    bool parity = false;
    PositivityVerdict verdict;
};

// Every D = {N+1+m_j} of size M with 0 <= m_j <= m_max.
std::vector<ScanRow> scan_added(const ParameterSet& ps, int M, long m_max, int jobs = 1);

// Class (b): parameter sets along the documented steering direction of one
// parameter, each kept inside the M-dependent range.
std::vector<ParameterSet> steering_points(FamilyId f, long N, int M);
const char* steering_parameter(FamilyId f);
// Scans parity-satisfying D (m_j <= m_max) along the steering points and
// returns the positive instances.
std::vector<ScanRow> class_b_search(FamilyId f, long N, int M, long m_max, int jobs = 1);

std::string scan_csv_header();
std::string scan_csv_row(const ScanRow& row);

}  // namespace miop
