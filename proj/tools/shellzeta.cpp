// shellzeta: shell contents, dimensions and zeta functions at infinity for
// unbounded regions, with a verification suite replaying the closed-form
// examples the library is built around.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shellzeta/closed_forms.hpp"
#include "shellzeta/content.hpp"
#include "shellzeta/errors.hpp"
#include "shellzeta/region.hpp"
#include "shellzeta/shell_volume.hpp"
#include "shellzeta/sphere.hpp"
#include "shellzeta/util.hpp"
#include "shellzeta/verify.hpp"
#include "shellzeta/zeta.hpp"

using nlohmann::json;
using namespace shellzeta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitVerifyFailed = 4;

std::complex<double> parse_complex(std::string text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw input_error("empty complex number");
    if (s.back() != 'i' && s.back() != 'I') {
        std::size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) throw input_error("cannot parse complex number: " + text);
        return {re, 0.0};
    }
    s.pop_back();  // drop the trailing i
    if (s.empty()) return {0.0, 1.0};
    // find the sign splitting real and imaginary parts (not leading, not an
    // exponent sign)
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            if (s == "+") return {0.0, 1.0};
            if (s == "-") return {0.0, -1.0};
            return {0.0, std::stod(s)};
        }
        const double re = std::stod(s.substr(0, split));
        std::string im_part = s.substr(split);
        if (im_part == "+") im_part = "1";
        if (im_part == "-") im_part = "-1";
        return {re, std::stod(im_part)};
    } catch (const std::exception&) {
        throw input_error("cannot parse complex number: " + text);
    }
}

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    double a = 0, b = 0;
    int ppd = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &a, &b, &ppd) != 3)
        throw input_error("grid must look like t_min:t_max:points_per_decade, got \"" +
                          text + "\"");
    g.t_min = a;
    g.t_max = b;
    g.points_per_decade = ppd;
    g.validate();
    return g;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw input_error("cannot open output file: " + out_path);
    f << text;
}

json volume_json(const VolumeResult& v) {
    return json{{"value", v.value},
                {"abs_error", v.abs_error},
                {"method", v.method == VolumeMethod::exact ? "exact" : "monte_carlo"},
                {"samples_used", v.samples_used}};
}

json inequality_json(const InequalityReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries) {
        entries.push_back(json{{"name", e.name},
                               {"lhs", e.lhs},
                               {"rhs", e.rhs},
                               {"slack", e.slack},
                               {"tolerance", e.tolerance},
                               {"pass", e.pass},
                               {"note", e.note}});
    }
    return json{{"entries", entries}, {"all_pass", rep.all_pass()}};
}

struct CommonArgs {
    std::string region_path;
    std::uint64_t seed = 42;
    int samples = 100000;
    int strata = 16;
    double tol = 1e-6;
    std::string out_path;
    std::string format = "json";

    SamplingPlan plan() const {
        SamplingPlan p;
        p.seed = seed;
        p.strata = strata;
        p.samples_per_stratum = samples;
        return p;
    }
    Region region() const {
        if (region_path.empty()) throw input_error("--region is required");
        return load_region_file(region_path);
    }
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_region = true) {
    if (needs_region)
        cmd->add_option("--region", a.region_path, "region spec file (JSON)");
    cmd->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--samples", a.samples, "Monte Carlo samples per stratum")
        ->capture_default_str();
    cmd->add_option("--strata", a.strata, "radial strata")->capture_default_str();
    cmd->add_option("--tol", a.tol, "report tolerance")->capture_default_str();
    cmd->add_option("--out", a.out_path, "write output to this path");
    cmd->add_option("--format", a.format, "output format: json or csv")
        ->capture_default_str();
}

std::string csv_table(const std::vector<std::array<double, 4>>& rows) {
    std::string s = "t,shell_volume,abs_error,normalized\n";
    for (const auto& r : rows) {
        s += format_double(r[0]) + "," + format_double(r[1]) + "," +
             format_double(r[2]) + "," + format_double(r[3]) + "\n";
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "shell contents, dimensions and zeta functions at infinity for unbounded "
        "regions"};
    app.require_subcommand(1);

    // ---- dim
    CommonArgs dim_args;
    double dim_phi = 2.0;
    std::string dim_grid = "1e2:1e6:16";
    auto* dim_cmd = app.add_subcommand("dim", "estimate shell dimensions at infinity");
    add_common(dim_cmd, dim_args);
    dim_cmd->add_option("--phi", dim_phi, "shell width parameter")->capture_default_str();
    dim_cmd->add_option("--grid", dim_grid, "t_min:t_max:points_per_decade")
        ->capture_default_str();

    // ---- content
    CommonArgs content_args;
    double content_phi = 2.0, content_r = 0.0;
    std::string content_grid = "1e2:1e6:16";
    auto* content_cmd =
        app.add_subcommand("content", "windowed shell content estimates");
    add_common(content_cmd, content_args);
    content_cmd->add_option("--phi", content_phi, "shell width parameter")
        ->capture_default_str();
    content_cmd->add_option("--r", content_r, "normalization exponent")
        ->capture_default_str();
    content_cmd->add_option("--grid", content_grid, "t_min:t_max:points_per_decade")
        ->capture_default_str();

    // ---- zeta
    CommonArgs zeta_args;
    std::string zeta_s = "1";
    double zeta_T = 1.0;
    bool zeta_deriv = false;
    auto* zeta_cmd = app.add_subcommand("zeta", "evaluate the zeta function at infinity");
    add_common(zeta_cmd, zeta_args);
    zeta_cmd->add_option("--s", zeta_s, "complex exponent, e.g. \"0.5+2i\"")
        ->capture_default_str();
    zeta_cmd->add_option("--T", zeta_T, "truncation radius")->capture_default_str();
    zeta_cmd->add_flag("--derivative", zeta_deriv, "evaluate d/ds instead");

    // ---- residue
    CommonArgs res_args;
    double res_D = 0.0, res_T = 1.0;
    auto* res_cmd =
        app.add_subcommand("residue", "residue of the zeta function at the dimension");
    add_common(res_cmd, res_args);
    res_cmd->add_option("--D", res_D, "pole location (the shell dimension)")
        ->required();
    res_cmd->add_option("--T", res_T, "truncation radius")->capture_default_str();

    // ---- poles
    CommonArgs poles_args;
    double poles_a = 0.0, poles_b = 0.0;
    double poles_im_max = 10.0, poles_im_min = 0.0, poles_re_min = -1e9;
    auto* poles_cmd = app.add_subcommand(
        "poles", "complex-dimension lattice of the two-parameter family");
    add_common(poles_cmd, poles_args, /*needs_region=*/false);
    poles_cmd->add_option("--a", poles_a, "family parameter a in (0, 1/2)")->required();
    poles_cmd->add_option("--b", poles_b, "family parameter b > log_{1/a} 2")->required();
    poles_cmd->add_option("--im-max", poles_im_max, "upper imaginary cutoff")
        ->capture_default_str();
    auto* im_min_opt =
        poles_cmd->add_option("--im-min", poles_im_min,
                              "lower imaginary cutoff (default: -im-max)");
    poles_cmd->add_option("--re-min", poles_re_min, "real-part cutoff of the window")
        ->capture_default_str();

    // ---- sphere
    CommonArgs sphere_args;
    std::string sphere_mode = "volume";
    std::string sphere_x;
    std::string sphere_delta_grid = "1e-6:1e-2:16";
    double sphere_r = 0.0;
    std::string sphere_tgrid = "1e2:1e6:16";
    auto* sphere_cmd = app.add_subcommand(
        "sphere", "stereographic projection and spherical contents");
    add_common(sphere_cmd, sphere_args);
    sphere_cmd->add_option("--mode", sphere_mode, "project | volume | content | compare")
        ->capture_default_str();
    sphere_cmd->add_option("--x", sphere_x, "point to project, comma-separated");
    sphere_cmd->add_option("--delta-grid", sphere_delta_grid,
                           "delta_min:delta_max:points_per_decade")
        ->capture_default_str();
    sphere_cmd->add_option("--r", sphere_r, "content exponent")->capture_default_str();
    sphere_cmd->add_option("--grid", sphere_tgrid, "t-grid for the comparison mode")
        ->capture_default_str();

    // ---- surface
    CommonArgs surface_args;
    double surface_r = 0.0, surface_t = 0.0;
    std::string surface_grid = "1e2:1e6:16";
    auto* surface_cmd =
        app.add_subcommand("surface", "surface measures and surface contents");
    add_common(surface_cmd, surface_args);
    surface_cmd->add_option("--r", surface_r, "content exponent")->capture_default_str();
    surface_cmd->add_option("--t", surface_t,
                            "single radius: emit the surface measure there");
    surface_cmd->add_option("--grid", surface_grid, "t_min:t_max:points_per_decade")
        ->capture_default_str();

    // ---- verify
    CommonArgs verify_args;
    verify_args.samples = 20000;
    std::string verify_selection = "all";
    auto* verify_cmd =
        app.add_subcommand("verify", "replay the closed-form verification suite");
    verify_cmd->add_option("selection", verify_selection,
                           "all | contents | zeta | two-param | sphere | surface")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_args.seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("--samples", verify_args.samples,
                           "Monte Carlo samples per stratum")
        ->capture_default_str();
    verify_cmd->add_option("--strata", verify_args.strata, "radial strata")
        ->capture_default_str();
    verify_cmd->add_option("--out", verify_args.out_path, "write report to this path");

    // ---- emit
    CommonArgs emit_args;
    double emit_phi = 2.0, emit_r = 0.0;
    std::string emit_grid = "1e2:1e6:16";
    auto* emit_cmd = app.add_subcommand(
        "emit", "emit the shell function on a grid as CSV for external plotting");
    add_common(emit_cmd, emit_args);
    emit_cmd->add_option("--phi", emit_phi, "shell width parameter")
        ->capture_default_str();
    emit_cmd->add_option("--r", emit_r, "normalization exponent")->capture_default_str();
    emit_cmd->add_option("--grid", emit_grid, "t_min:t_max:points_per_decade")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (dim_cmd->parsed()) {
            const Region region = dim_args.region();
            const GridSpec grid = parse_grid(dim_grid);
            const DimensionEstimate d =
                estimate_phi_dimension(region, dim_phi, grid, dim_args.plan());
            json j{{"phi", d.phi},
                   {"upper_dim", d.upper_dim},
                   {"slope", d.slope_fit.slope},
                   {"intercept", d.slope_fit.intercept},
                   {"residual_rms", d.slope_fit.residual_rms},
                   {"warnings", d.warnings}};
            if (d.lower_is_minus_infinity)
                j["lower_dim"] = "-inf";
            else
                j["lower_dim"] = d.lower_dim;
            write_output(j.dump(2) + "\n", dim_args.out_path);
        } else if (content_cmd->parsed()) {
            const Region region = content_args.region();
            const GridSpec grid = parse_grid(content_grid);
            const ContentEstimate c = phi_shell_content(region, content_phi, content_r,
                                                        grid, content_args.plan());
            if (content_args.format == "csv") {
                std::vector<std::array<double, 4>> rows;
                const SamplingPlan plan = content_args.plan();
                for (double t : grid.points()) {
                    const VolumeResult v = shell_volume(region, t, content_phi, plan);
                    rows.push_back(
                        {t, v.value, v.abs_error,
                         v.value / std::pow(t, region.ambient_dim + content_r)});
                }
                write_output(csv_table(rows), content_args.out_path);
            } else {
                json j{{"phi", c.phi},
                       {"r", c.r},
                       {"upper", c.upper},
                       {"lower", c.lower},
                       {"upper_error", c.upper_error},
                       {"lower_error", c.lower_error},
                       {"window",
                        {{"t_min", c.window.t_min}, {"t_max", c.window.t_max}}},
                       {"warnings", c.warnings}};
                write_output(j.dump(2) + "\n", content_args.out_path);
            }
        } else if (zeta_cmd->parsed()) {
            const Region region = zeta_args.region();
            const std::complex<double> s = parse_complex(zeta_s);
            const ZetaValue z =
                zeta_deriv ? zeta_derivative(region, s, zeta_T, zeta_args.plan())
                           : zeta_eval(region, s, zeta_T, zeta_args.plan());
            json j{{"s", {{"re", s.real()}, {"im", s.imag()}}},
                   {"T", z.T},
                   {"value_re", z.value.real()},
                   {"value_im", z.value.imag()},
                   {"quad_error", z.quad_error},
                   {"note", z.T_note}};
            write_output(j.dump(2) + "\n", zeta_args.out_path);
        } else if (res_cmd->parsed()) {
            const Region region = res_args.region();
            const ResidueEstimate r =
                residue_at_dimension(region, res_D, res_T, res_args.plan());
            json j{{"D", r.D},
                   {"value", r.value},
                   {"extrapolation_error", r.extrapolation_error},
                   {"warnings", r.warnings}};
            write_output(j.dump(2) + "\n", res_args.out_path);
        } else if (poles_cmd->parsed()) {
            PoleWindow w;
            w.re_min = poles_re_min;
            w.im_max = poles_im_max;
            w.im_min = (im_min_opt->count() > 0) ? poles_im_min : -poles_im_max;
            const ComplexDimensionLattice lat =
                two_param_complex_dimensions(poles_a, poles_b, w);
            json poles = json::array();
            for (const auto& p : lat.poles) {
                poles.push_back(json{{"re", p.location.real()},
                                     {"im", p.location.imag()},
                                     {"residue_re", p.residue.real()},
                                     {"residue_im", p.residue.imag()},
                                     {"kind", p.principal ? "principal" : "lattice"}});
            }
            json j{{"principal_pole", lat.principal_pole},
                   {"lattice_real", lat.lattice_real},
                   {"imag_spacing", lat.imag_spacing},
                   {"poles", poles}};
            write_output(j.dump(2) + "\n", poles_args.out_path);
        } else if (sphere_cmd->parsed()) {
            if (sphere_mode == "project") {
                if (sphere_x.empty())
                    throw input_error("sphere --mode project needs --x \"x1,x2,...\"");
                std::vector<double> coords;
                std::stringstream ss(sphere_x);
                std::string tok;
                while (std::getline(ss, tok, ',')) coords.push_back(std::stod(tok));
                Eigen::VectorXd x(coords.size());
                for (std::size_t i = 0; i < coords.size(); ++i) x(i) = coords[i];
                const Eigen::VectorXd y = stereographic_project(x);
                json jy = json::array();
                for (Eigen::Index i = 0; i < y.size(); ++i) jy.push_back(y(i));
                write_output(json{{"point", jy}}.dump(2) + "\n", sphere_args.out_path);
            } else if (sphere_mode == "volume") {
                const Region region = sphere_args.region();
                const double v = spherical_volume(region, sphere_args.plan());
                write_output(json{{"spherical_volume", v}}.dump(2) + "\n",
                             sphere_args.out_path);
            } else if (sphere_mode == "content") {
                const Region region = sphere_args.region();
                DeltaGrid dg;
                double a = 0, b = 0;
                int ppd = 0;
                if (std::sscanf(sphere_delta_grid.c_str(), "%lf:%lf:%d", &a, &b,
                                &ppd) != 3)
                    throw input_error(
                        "delta grid must look like min:max:points_per_decade");
                dg.delta_min = a;
                dg.delta_max = b;
                dg.points_per_decade = ppd;
                const SphericalContentEstimate c =
                    spherical_content(region, sphere_r, dg, sphere_args.plan());
                json j{{"r", c.r},
                       {"upper", c.upper},
                       {"lower", c.lower},
                       {"delta_window",
                        {{"delta_min", dg.delta_min}, {"delta_max", dg.delta_max}}}};
                write_output(j.dump(2) + "\n", sphere_args.out_path);
            } else if (sphere_mode == "compare") {
                const Region region = sphere_args.region();
                const InequalityReport rep = check_sphere_comparison(
                    region, sphere_r, parse_grid(sphere_tgrid), sphere_args.plan());
                write_output(inequality_json(rep).dump(2) + "\n", sphere_args.out_path);
            } else {
                throw input_error("unknown sphere mode \"" + sphere_mode + "\"");
            }
        } else if (surface_cmd->parsed()) {
            const Region region = surface_args.region();
            if (surface_cmd->count("--t") > 0) {
                const VolumeResult v =
                    surface_measure(region, surface_t, surface_args.plan());
                write_output(
                    json{{"t", surface_t}, {"surface_measure", volume_json(v)}}.dump(2) +
                        "\n",
                    surface_args.out_path);
            } else if (surface_args.format == "csv") {
                const GridSpec grid = parse_grid(surface_grid);
                std::string s = "t,surface_measure,abs_error,normalized\n";
                const SamplingPlan plan = surface_args.plan();
                for (double t : grid.points()) {
                    const VolumeResult v = surface_measure(region, t, plan);
                    s += format_double(t) + "," + format_double(v.value) + "," +
                         format_double(v.abs_error) + "," +
                         format_double(v.value / std::pow(t, region.ambient_dim - 1 +
                                                                 surface_r)) +
                         "\n";
                }
                write_output(s, surface_args.out_path);
            } else {
                const GridSpec grid = parse_grid(surface_grid);
                const SurfaceContentEstimate c =
                    surface_content(region, surface_r, grid, surface_args.plan());
                json j{{"r", c.r},
                       {"upper", c.upper},
                       {"lower", c.lower},
                       {"window", {{"t_min", grid.t_min}, {"t_max", grid.t_max}}}};
                write_output(j.dump(2) + "\n", surface_args.out_path);
            }
        } else if (verify_cmd->parsed()) {
            verify::Options opt;
            opt.seed = verify_args.seed;
            opt.strata = verify_args.strata;
            opt.samples_per_stratum = verify_args.samples;
            const auto checks = verify::run_suite(verify_selection, opt);
            write_output(verify::render_report(checks), verify_args.out_path);
            if (!verify::all_pass(checks)) return kExitVerifyFailed;
        } else if (emit_cmd->parsed()) {
            const Region region = emit_args.region();
            const GridSpec grid = parse_grid(emit_grid);
            std::vector<std::array<double, 4>> rows;
            const SamplingPlan plan = emit_args.plan();
            for (double t : grid.points()) {
                const VolumeResult v = shell_volume(region, t, emit_phi, plan);
                rows.push_back({t, v.value, v.abs_error,
                                v.value / std::pow(t, region.ambient_dim + emit_r)});
            }
            write_output(csv_table(rows), emit_args.out_path);
        }
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const divergence_error& e) {
        std::cerr << "divergence error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
