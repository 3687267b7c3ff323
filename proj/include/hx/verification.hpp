#pragma once

#include <string>
#include <vector>

namespace hx {

struct Refinement {
    int a = 16;
    int b = 16;
    int c = 32;
    bool operator==(const Refinement&) const = default;
};

// One verification record.  measured is the worst sub-residual of the check,
// normalized by that sub-check's tolerance, so pass == (measured <= 1) and
// the tolerance field is always 1.  Boolean sub-checks (e.g. "error decreases
// under refinement") contribute 0 when satisfied and 2 when violated.
struct CheckRecord {
    std::string theorem_id;
    Refinement refinement;
    double tolerance = 1.0;
    double measured = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    Refinement single{16, 16, 32};  // single-integral checks
    Refinement dbl{16, 16, 32};     // iterated double-integral checks
    int grid_m = 17;                // points per axis for volume grids
    int workers = 1;
};

struct VerifyOutcome {
    std::vector<CheckRecord> records;
    std::vector<std::string> notes;  // human-readable detail, one line each
    bool all_pass = true;
};

// Runs the full battery: cauchy_formula, plemelj, involution, alpha,
// lemma_iterated_zero, poincare_bertrand, composition, n1, n2,
// n2sq_nonzero, k2_double_zero, cimmino, fundamental_solution.
VerifyOutcome run_verification(const VerifyOptions& opt);

}  // namespace hx
