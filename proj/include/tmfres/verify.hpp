#pragma once

#include <string>
#include <vector>

namespace tmfres {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Default location of tables/ and fixtures/ (set at build time, overridable).
std::string default_data_dir();

// Reproduction checks, grouped as the CLI flags group them.  Each returns
// one result per named check; a failed comparison carries a diff in detail.
std::vector<CheckResult> verify_tables(const std::string& data_dir);      // x^k and f_j tables
std::vector<CheckResult> verify_remark54();                               // displayed splittings
std::vector<CheckResult> verify_series_oracle();                          // h^n vs brute force
std::vector<CheckResult> verify_structural();                             // parity + mod-y laws
std::vector<CheckResult> verify_duality();                                // D involution etc.
std::vector<CheckResult> verify_appendix(const std::string& data_dir);    // module fixtures
std::vector<CheckResult> verify_ext_oracle(int t_plain, int t_square);    // resolver vs bar
std::vector<CheckResult> verify_v0_towers(int n_max);                     // tower census
std::vector<CheckResult> verify_census(int weight_max);                   // g-local census

std::vector<CheckResult> verify_all(const std::string& data_dir);

}  // namespace tmfres
