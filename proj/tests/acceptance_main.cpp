// Acceptance suite: one pass/fail line per criterion, plus the determinism
// and runtime gates.  Optional argv[1] is the CLI binary, used for the
// byte-identical double-run check.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "shellzeta/closed_forms.hpp"
#include "shellzeta/content.hpp"
#include "shellzeta/region.hpp"
#include "shellzeta/shell_volume.hpp"
#include "shellzeta/verify.hpp"
#include "shellzeta/zeta.hpp"

using namespace shellzeta;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return {};
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe.get()))
        out.append(buf, n);
    return out;
}

const char* criterion_labels[12] = {
    "",
    "full-space shell content 3*pi and dimension 0",
    "envelope b=1: dimension -2, content log(phi)",
    "strip: dimension -1, content 2h(phi-1), residues 2h",
    "tent q=1/2: piecewise shell function, empty shells, dimension -1.5",
    "two-parameter family: quadrature zeta matches the closed form",
    "two-parameter family: pole lattice",
    "inequality suites (content comparisons, residue sandwich, sphere)",
    "layer-cake identity and divergence detection",
    "zeta derivative vs central difference",
    "sphere and surface checks",
    "determinism and runtime",
};

}  // namespace

int main(int argc, char** argv) {
    const auto t_start = std::chrono::steady_clock::now();
    verify::Options opt;
    opt.seed = 42;
    opt.strata = 16;
    opt.samples_per_stratum = 20000;

    // timed subset: criterion 1 must finish in 10 s on its own
    const auto t1_start = std::chrono::steady_clock::now();
    {
        GridSpec grid;
        SamplingPlan plan;
        plan.seed = opt.seed;
        plan.samples_per_stratum = opt.samples_per_stratum;
        const Region r2 = build_full_space(2);
        (void)phi_shell_content(r2, 2.0, 0.0, grid, plan);
        (void)estimate_phi_dimension(r2, 2.0, grid, plan);
    }
    const double t_criterion1 = seconds_since(t1_start);

    // timed subset: criterion 5 must finish in 30 s on its own
    const auto t5_start = std::chrono::steady_clock::now();
    {
        SamplingPlan plan;
        plan.seed = opt.seed;
        const Region stacked = build_stacked_two_param(1.0 / 3.0, 2.0);
        const TwoParamFamily fam(1.0 / 3.0, 2.0);
        const std::complex<double> pts[] = {
            {-2.15, 0.0}, {-2.05, 0.0}, {-1.5, 0.0}, {-1.0, 0.0}, {-0.5, 0.0},
            {0.0, 0.0},   {1.0, 0.0},  {2.0, 0.0},  {-1.0, 2.0}, {0.5, -3.0},
        };
        for (const auto& s : pts) (void)zeta_eval(stacked, s, 1.0, plan);
    }
    const double t_criterion5 = seconds_since(t5_start);

    const auto checks = verify::run_suite("all", opt);

    std::map<int, std::pair<int, int>> by_criterion;  // criterion -> (pass, total)
    for (const auto& c : checks) {
        auto& [pass, total] = by_criterion[c.criterion];
        if (c.pass) ++pass;
        ++total;
    }

    bool all_ok = true;
    for (int k = 1; k <= 10; ++k) {
        const auto it = by_criterion.find(k);
        const int pass = (it == by_criterion.end()) ? 0 : it->second.first;
        const int total = (it == by_criterion.end()) ? 0 : it->second.second;
        bool ok = total > 0 && pass == total;
        if (k == 1 && t_criterion1 > 10.0) ok = false;
        if (k == 5 && t_criterion5 > 30.0) ok = false;
        all_ok = all_ok && ok;
        std::printf("criterion %2d: %s (%d/%d checks) %s\n", k,
                    ok ? "PASS" : "FAIL", pass, total, criterion_labels[k]);
        if (k == 1)
            std::printf("              runtime %.2f s (budget 10 s)\n", t_criterion1);
        if (k == 5)
            std::printf("              runtime %.2f s (budget 30 s)\n", t_criterion5);
    }

    // criterion 11: determinism (library report and, when available, the CLI)
    bool deterministic = true;
    {
        const auto again = verify::run_suite("all", opt);
        deterministic = verify::render_report(checks) == verify::render_report(again);
        if (argc > 1) {
            const std::string a = run_cli(argv[1], "verify all --seed 42");
            const std::string b = run_cli(argv[1], "verify all --seed 42");
            deterministic = deterministic && !a.empty() && a == b;
        }
    }
    const double total_time = seconds_since(t_start);
    const bool runtime_ok = total_time < 300.0;
    const bool c11 = deterministic && runtime_ok;
    all_ok = all_ok && c11;
    std::printf("criterion 11: %s %s (total runtime %.1f s, budget 300 s)\n",
                c11 ? "PASS" : "FAIL", criterion_labels[11], total_time);

    if (!all_ok) {
        std::printf("\nfailing checks:\n");
        for (const auto& c : checks) {
            if (!c.pass)
                std::printf("  [%s] %s | expected %s | observed %.17g | tol %.17g\n",
                            c.suite.c_str(), c.name.c_str(), c.expected.c_str(),
                            c.observed, c.tolerance);
        }
    }
    std::size_t pass_count = 0;
    for (const auto& c : checks)
        if (c.pass) ++pass_count;
    std::printf("\n%zu/%zu verification checks passed\n", pass_count, checks.size());
    return all_ok ? 0 : 1;
}
