#pragma once

#include "miop/family.hpp"
#include "miop/fault.hpp"
#include "miop/index_set.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace miop {

using json = nlohmann::ordered_json;

enum class Suite { original, identity, ka, q };

Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);

struct VerificationCase {
    ParameterSet params;
    IndexSet D;  // ignored by original and identity suites
    int M = 0;   // identity suite: largest M to exercise
    Suite suite = Suite::original;
    Fault fault = Fault::none;

    json to_json() const;
    // Throws std::invalid_argument on malformed input.
    static VerificationCase from_json(const json& j);
    std::string label() const;
};

// Parameter set from a family name, N, and "name=value" strings (q optional).
ParameterSet make_parameters(const std::string& family, long N, const std::map<std::string, std::string>& values);
json params_to_json(const ParameterSet& ps);
ParameterSet params_from_json(const json& j);

enum class Status { pass, fail, info };
std::string status_name(Status s);

struct Counterexample {
    std::optional<long> x, n, m;
    std::string lhs, rhs;
};

struct CheckResult {
    std::string name;
    Status status = Status::pass;
    long evaluations = 0;
    std::string detail;
    std::optional<Counterexample> counterexample;
};

struct CaseReport {
    VerificationCase vcase;
    std::vector<CheckResult> checks;
    double elapsed_ms = 0;
    std::size_t failures() const;
};

struct Report {
    json config;
    std::vector<CaseReport> cases;
    std::size_t failures() const;
    bool all_pass() const { return failures() == 0; }
    // Timing fields are omitted when `timing` is false, making the output
    // byte-identical across runs.
    json to_json(bool timing = true) const;
};

CaseReport run_suite(const VerificationCase& c);
// Runs the cases on up to `jobs` threads; the report keeps input order.
Report campaign(const std::vector<VerificationCase>& cases, int jobs = 1, json config = json::object());

// 12 families x {original, deleted-state M=1,2, added-state M=1,2} x N in {3,4,5}.
std::vector<VerificationCase> default_campaign();
std::vector<VerificationCase> named_campaign(const std::string& name);

}  // namespace miop
