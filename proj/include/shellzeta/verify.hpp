#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shellzeta::verify {

struct CheckResult {
    int criterion = 0;  // acceptance criterion number (0 = supplementary)
    std::string suite;  // contents | zeta | two-param | sphere | surface
    std::string name;
    std::string expected;  // expected value and where it comes from
    double observed = 0.0;
    double deviation = 0.0;  // |observed - expected|, or -slack for inequalities
    double tolerance = 0.0;
    bool pass = false;
};

struct Options {
    std::uint64_t seed = 42;
    int strata = 16;
    int samples_per_stratum = 20000;
};

// selection: all | contents | zeta | two-param | sphere | surface
std::vector<CheckResult> run_suite(const std::string& selection, const Options& opt);

std::string render_report(const std::vector<CheckResult>& checks);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace shellzeta::verify
