#include "shellzeta/region.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shellzeta/closed_forms.hpp"
#include "shellzeta/errors.hpp"

namespace shellzeta {

double unit_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) {
    return n * unit_ball_volume(n);
}

bool Region::contains(const Eigen::VectorXd& p) const {
    if (p.size() != ambient_dim)
        throw input_error("point has " + std::to_string(p.size()) +
                          " coordinates, region lives in R^" +
                          std::to_string(ambient_dim));
    return membership(p);
}

// ---------------------------------------------------------------------------
// full space

Region build_full_space(int n, Norm norm) {
    if (n < 1) throw constraint_error("full space: ambient dimension must be >= 1");
    Region r;
    r.ambient_dim = n;
    r.norm = norm;
    r.measure_class = MeasureClass::infinite;
    r.name = "full_space";
    r.membership = [](const Eigen::VectorXd&) { return true; };
    const double coeff = (norm == Norm::euclidean) ? unit_ball_volume(n)
                                                   : std::pow(2.0, n);
    r.exact_tube_volume = [n, coeff](double T, double t) -> std::optional<double> {
        return coeff * (std::pow(t, n) - std::pow(T, n));
    };
    if (norm == Norm::euclidean) {
        const double area = unit_sphere_area(n);
        r.exact_surface_measure = [n, area](double t) -> std::optional<double> {
            return area * std::pow(t, n - 1);
        };
    }
    r.declared_dimension = 0.0;
    r.min_radius = 0.0;
    return r;
}

// ---------------------------------------------------------------------------
// strip {0 < y < h} in R^2

namespace {

double strip_ball_area(double h, double t) {
    // |B_t(0) ∩ {0 < y < h}|
    if (t <= 0.0) return 0.0;
    if (t <= h) return 0.5 * M_PI * t * t;
    return h * std::sqrt(t * t - h * h) + t * t * std::asin(h / t);
}

}  // namespace

Region build_strip(double h) {
    if (!(h > 0.0)) throw constraint_error("strip: height h must be positive");
    Region r;
    r.ambient_dim = 2;
    r.norm = Norm::euclidean;
    r.measure_class = MeasureClass::infinite;
    r.name = "strip";
    r.membership = [h](const Eigen::VectorXd& p) {
        return p(1) > 0.0 && p(1) < h;
    };
    r.exact_tube_volume = [h](double T, double t) -> std::optional<double> {
        return std::max(0.0, strip_ball_area(h, t) - strip_ball_area(h, T));
    };
    r.exact_surface_measure = [h](double t) -> std::optional<double> {
        if (t <= 0.0) return 0.0;
        if (t <= h) return M_PI * t;
        return 2.0 * t * std::asin(h / t);
    };
    r.declared_dimension = -1.0;
    r.min_radius = 0.0;
    r.nonsmooth_radii = [h](double lo, double hi) {
        std::vector<double> out;
        if (h >= lo && h <= hi) out.push_back(h);
        return out;
    };
    return r;
}

// ---------------------------------------------------------------------------
// envelope region {x > x0, 0 < y < x^{-b}} in R^2

namespace {

struct EnvelopeGeom {
    double x0;
    double b;

    double env(double x) const { return std::pow(x, -b); }
    double rho2(double x) const { return x * x + std::pow(x, -2.0 * b); }
    double rho(double x) const { return std::sqrt(rho2(x)); }
    // argmin of rho on (0, inf)
    double x_crit() const { return std::pow(b, 1.0 / (2.0 * b + 2.0)); }

    double env_integral(double lo, double hi) const {
        if (hi <= lo) return 0.0;
        if (b == 1.0) return std::log(hi / lo);
        return (std::pow(hi, 1.0 - b) - std::pow(lo, 1.0 - b)) / (1.0 - b);
    }

    // integral of sqrt(c^2 - u^2) over [x, c], written without the pi c^2/4
    // offset so values near the circle edge keep full precision; s is the
    // circle height at x (passed in so envelope crossings can supply their
    // exact height env(x) instead of the cancellation-prone sqrt(c^2-x^2))
    static double circle_tail(double c, double x, double s) {
        if (x >= c || s <= 0.0) return 0.0;
        return 0.5 * (c * c * std::asin(std::min(1.0, s / c)) - std::max(x, 0.0) * s);
    }
    static double circle_height(double c, double x) {
        if (x >= c) return 0.0;
        const double xc = std::max(x, 0.0);
        return std::sqrt((c - xc) * (c + xc));
    }

    // ascending solutions of rho(x) = c with x >= x0 (0, 1 or 2 of them)
    std::vector<double> rho_roots(double c) const {
        std::vector<double> out;
        if (!(c > 0.0)) return out;
        const double c2 = c * c;
        auto g = [&](double x) { return x * x + std::pow(x, -2.0 * b) - c2; };
        auto bisect = [&](double lo, double hi, bool increasing) {
            for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, lo); ++i) {
                const double m = 0.5 * (lo + hi);
                const bool below = increasing ? (g(m) < 0.0) : (g(m) > 0.0);
                if (below) lo = m; else hi = m;
            }
            return 0.5 * (lo + hi);
        };
        const double xc = x_crit();
        if (xc > x0 && g(x0) >= 0.0 && g(xc) <= 0.0)
            out.push_back(bisect(x0, xc, false));
        const double lo = std::max(x0, xc);
        if (g(lo) <= 0.0) {
            double hi = std::max(lo, c) + 1.0;  // rho(x) > x so g(c+1) > 0
            out.push_back(bisect(lo, hi, true));
        }
        return out;
    }
};

// circle segment over [p, q] against the circle of radius c; edges that are
// envelope crossings of that circle carry their exact height env(x)
double envelope_circle_segment(const EnvelopeGeom& g, double c,
                               const std::vector<double>& crossings, double p,
                               double q) {
    auto height = [&](double x) {
        for (double r : crossings)
            if (r == x) return g.env(x);
        return EnvelopeGeom::circle_height(c, x);
    };
    if (q <= p) return 0.0;
    return std::max(0.0, EnvelopeGeom::circle_tail(c, p, height(p)) -
                             EnvelopeGeom::circle_tail(c, q, height(q)));
}

double envelope_tube(const EnvelopeGeom& g, double T, double t) {
    if (t <= g.x0) return 0.0;
    const auto roots_T = g.rho_roots(T);
    const auto roots_t = g.rho_roots(t);
    std::vector<double> edges{g.x0, t};
    auto push = [&](double x) {
        if (x > g.x0 && x < t) edges.push_back(x);
    };
    push(T);
    push(g.x_crit());
    for (double x : roots_T) push(x);
    for (double x : roots_t) push(x);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double p = edges[i], q = edges[i + 1];
        const double xm = 0.5 * (p + q);
        const double rm = g.rho(xm);
        const bool below_T = xm < T;
        if (below_T && rm <= T) continue;  // column entirely inside the inner ball
        const double up = (rm <= t) ? g.env_integral(p, q)
                                    : envelope_circle_segment(g, t, roots_t, p, q);
        const double lo =
            below_T ? envelope_circle_segment(g, T, roots_T, p, q) : 0.0;
        acc += std::max(0.0, up - lo);
    }
    return acc;
}

double envelope_complement(const EnvelopeGeom& g, double t) {
    // b > 1; |Ω ∩ B_t(0)^c| with no large-t cancellation
    const double start = std::max(t, g.x0);
    double acc = std::pow(start, 1.0 - g.b) / (g.b - 1.0);
    if (t <= g.x0) return acc;
    const auto roots_t = g.rho_roots(t);
    std::vector<double> edges{g.x0, t};
    auto push = [&](double x) {
        if (x > g.x0 && x < t) edges.push_back(x);
    };
    push(g.x_crit());
    for (double x : roots_t) push(x);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double p = edges[i], q = edges[i + 1];
        const double xm = 0.5 * (p + q);
        if (g.rho(xm) > t)
            acc += std::max(0.0, g.env_integral(p, q) -
                                     envelope_circle_segment(g, t, roots_t, p, q));
    }
    return acc;
}

double envelope_surface(const EnvelopeGeom& g, double t) {
    // length of {|p| = t} ∩ Ω; crossing angles come from the envelope height
    // env(x)/t, which stays exact where the crossing hugs the x-axis
    if (t <= g.x0) return 0.0;
    auto theta_boundary = [&](double x) {
        return std::asin(std::min(1.0, EnvelopeGeom::circle_height(t, x) / t));
    };
    auto theta_crossing = [&](double x) {
        return std::asin(std::clamp(g.env(x) / t, 0.0, 1.0));
    };
    const auto roots = g.rho_roots(t);
    double span = theta_boundary(g.x0);
    if (roots.size() == 2) {
        // rho < t on (roots[0], roots[1]): that stretch of the circle lies
        // above the envelope
        span -= theta_crossing(roots[0]) - theta_crossing(roots[1]);
    } else if (roots.size() == 1 && g.rho2(g.x0) < t * t) {
        // rho < t on [x0, root): the circle enters the region past the root
        span = theta_crossing(roots[0]);
    }
    return t * std::max(0.0, span);
}

}  // namespace

Region build_envelope(double x0, double b) {
    if (!(x0 > 0.0)) throw constraint_error("envelope: x0 must be positive");
    if (!(b > 0.0)) throw constraint_error("envelope: exponent b must be positive");
    EnvelopeGeom g{x0, b};
    Region r;
    r.ambient_dim = 2;
    r.norm = Norm::euclidean;
    r.measure_class = (b > 1.0) ? MeasureClass::finite : MeasureClass::infinite;
    r.name = "envelope";
    r.membership = [x0, b](const Eigen::VectorXd& p) {
        return p(0) > x0 && p(1) > 0.0 && p(1) < std::pow(p(0), -b);
    };
    r.exact_tube_volume = [g](double T, double t) -> std::optional<double> {
        return envelope_tube(g, T, t);
    };
    if (b > 1.0) {
        r.total_measure = std::pow(x0, 1.0 - b) / (b - 1.0);
        r.exact_complement_volume = [g](double t) -> std::optional<double> {
            return envelope_complement(g, t);
        };
    }
    r.exact_surface_measure = [g](double t) -> std::optional<double> {
        return envelope_surface(g, t);
    };
    r.declared_dimension = -1.0 - b;
    r.min_radius = x0;
    const double rho_corner = g.rho(x0);
    const double rho_dip = (g.x_crit() > x0) ? g.rho(g.x_crit()) : rho_corner;
    r.nonsmooth_radii = [x0, rho_corner, rho_dip](double lo, double hi) {
        std::vector<double> out;
        for (double v : {x0, rho_dip, rho_corner})
            if (v >= lo && v <= hi) out.push_back(v);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return r;
}

// ---------------------------------------------------------------------------
// tent example: union of (2^{2n+1}, 2^{2n+1} + 4^{-nq}) in R

namespace {

struct TentGeom {
    double q;
    double left(int n) const { return std::ldexp(1.0, 2 * n + 1); }
    double len(int n) const { return std::exp2(-2.0 * n * q); }
    double right(int n) const { return left(n) + len(n); }
    int first_candidate(double x) const {
        if (x <= 2.0) return 0;
        return std::max(0, static_cast<int>(std::floor((std::log2(x) - 1.0) / 2.0)) - 1);
    }
};

}  // namespace

Region build_tent(double q) {
    if (!(q > 0.0)) throw constraint_error("tent: exponent q must be positive");
    TentGeom g{q};
    Region r;
    r.ambient_dim = 1;
    r.norm = Norm::euclidean;
    r.measure_class = MeasureClass::finite;
    r.name = "tent";
    const double total = 1.0 / (1.0 - std::exp2(-2.0 * q));  // = 4^q/(4^q - 1)
    r.total_measure = total;
    r.membership = [g](const Eigen::VectorXd& p) {
        const double x = p(0);
        if (x <= 2.0) return false;
        for (int n = g.first_candidate(x); n <= g.first_candidate(x) + 3; ++n)
            if (x > g.left(n) && x < g.right(n)) return true;
        return false;
    };
    r.exact_tube_volume = [g](double T, double t) -> std::optional<double> {
        if (t <= 2.0) return 0.0;
        double acc = 0.0;
        for (int n = g.first_candidate(T);; ++n) {
            const double l = g.left(n);
            if (l >= t) break;
            const double lo = std::max(T, l);
            const double hi = std::min(t, g.right(n));
            if (hi > lo) acc += hi - lo;
        }
        return acc;
    };
    r.exact_complement_volume = [g, q](double t) -> std::optional<double> {
        double acc = 0.0;
        for (int n = g.first_candidate(t);; ++n) {
            if (g.left(n) >= t) {
                // all remaining intervals are complete
                acc += std::exp2(-2.0 * n * q) / (1.0 - std::exp2(-2.0 * q));
                break;
            }
            if (g.right(n) > t) acc += g.right(n) - t;
        }
        return acc;
    };
    r.exact_surface_measure = [g](double t) -> std::optional<double> {
        if (t <= 2.0) return 0.0;
        for (int n = g.first_candidate(t); n <= g.first_candidate(t) + 3; ++n)
            if (t > g.left(n) && t < g.right(n)) return 1.0;
        return 0.0;
    };
    r.declared_dimension = -1.0 - q;
    r.min_radius = 2.0;
    r.nonsmooth_radii = [g](double lo, double hi) {
        std::vector<double> out;
        for (int n = g.first_candidate(lo);; ++n) {
            const double l = g.left(n);
            if (l > hi) break;
            if (l >= lo) out.push_back(l);
            const double rr = g.right(n);
            if (rr >= lo && rr <= hi) out.push_back(rr);
        }
        return out;
    };
    return r;
}

// ---------------------------------------------------------------------------
// stacked two-parameter family

Region build_stacked_two_param(double a, double b, Norm norm) {
    TwoParamFamily fam(a, b);
    const double S = fam.strip_height();
    const double inv_a = 1.0 / a;
    Region r;
    r.ambient_dim = 2;
    r.norm = norm;
    r.measure_class = fam.finite_measure() ? MeasureClass::finite
                                           : MeasureClass::infinite;
    r.name = "stacked_two_param";
    if (auto tot = fam.total_measure()) r.total_measure = *tot;
    const double ab = std::pow(a, b);
    r.membership = [a, b, S, ab, inv_a](const Eigen::VectorXd& p) {
        const double x = p(0);
        const double y = p(1);
        if (y <= 0.0 || y >= S || x <= inv_a) return false;
        double base = 0.0;     // lower edge of the current level's block
        double w = ab;         // copy width a^{mb}
        double copies = 1.0;   // 2^{m-1}
        for (int m = 1; m <= 4000; ++m) {
            const double block = copies * w;
            if (y < base + block) {
                const double j = std::floor((y - base) / w);
                const double y_local = y - base - j * w;
                if (y_local <= 0.0) return false;
                if (x <= std::pow(inv_a, m)) return false;
                return y_local < std::pow(x, -b);
            }
            base += block;
            copies *= 2.0;
            w *= ab;
            if (block < 1e-300) break;
        }
        return false;
    };
    if (norm == Norm::sup) {
        r.exact_tube_volume = [fam, S, inv_a](double T,
                                              double t) -> std::optional<double> {
            if (t <= inv_a) return 0.0;
            if (T >= S) return fam.shell_volume(T, t);
            if (S <= inv_a) return fam.shell_volume(S, t);  // nothing below radius inv_a
            return std::nullopt;
        };
        if (fam.finite_measure()) {
            r.exact_complement_volume = [fam, S, inv_a](double t) -> std::optional<double> {
                if (t <= inv_a) return fam.total_measure();
                if (t >= S || S <= inv_a) return fam.complement_volume(std::max(t, S));
                return std::nullopt;
            };
        }
    }
    r.declared_dimension = fam.upper_dimension();
    r.min_radius = inv_a;
    r.nonsmooth_radii = [fam](double lo, double hi) {
        return fam.nonsmooth_radii(lo, hi);
    };
    return r;
}

// ---------------------------------------------------------------------------
// composites

Region build_disjoint_union(std::vector<Region> components) {
    if (components.empty())
        throw constraint_error("disjoint union: needs at least one component");
    const int n = components.front().ambient_dim;
    const Norm norm = components.front().norm;
    for (const auto& c : components) {
        if (c.ambient_dim != n)
            throw input_error("disjoint union: ambient dimensions differ");
        if (c.norm != norm)
            throw input_error("disjoint union: component norms differ");
    }
    Region r;
    r.ambient_dim = n;
    r.norm = norm;
    r.name = "disjoint_union";

    bool any_infinite = false, all_finite = true, all_known = true;
    double total = 0.0;
    bool have_total = true;
    bool have_tube = true, have_comp = true, have_surf = true, have_dim = true;
    double dim = kMinusInfinity;
    double min_rad = std::numeric_limits<double>::infinity();
    for (const auto& c : components) {
        if (c.measure_class == MeasureClass::infinite) any_infinite = true;
        if (c.measure_class != MeasureClass::finite) all_finite = false;
        if (c.measure_class == MeasureClass::unknown) all_known = false;
        if (c.total_measure) total += *c.total_measure; else have_total = false;
        if (!c.exact_tube_volume) have_tube = false;
        if (!c.exact_complement_volume) have_comp = false;
        if (!c.exact_surface_measure) have_surf = false;
        if (c.declared_dimension) dim = std::max(dim, *c.declared_dimension);
        else have_dim = false;
        min_rad = std::min(min_rad, c.min_radius);
    }
    r.measure_class = any_infinite ? MeasureClass::infinite
                     : (all_finite && all_known) ? MeasureClass::finite
                                                 : MeasureClass::unknown;
    if (r.measure_class == MeasureClass::finite && have_total) r.total_measure = total;
    r.min_radius = min_rad;
    if (have_dim) r.declared_dimension = dim;

    auto comps = std::make_shared<std::vector<Region>>(std::move(components));
    r.membership = [comps](const Eigen::VectorXd& p) {
        for (const auto& c : *comps)
            if (c.membership(p)) return true;
        return false;
    };
    if (have_tube) {
        r.exact_tube_volume = [comps](double T, double t) -> std::optional<double> {
            double acc = 0.0;
            for (const auto& c : *comps) {
                auto v = c.exact_tube_volume(T, t);
                if (!v) return std::nullopt;
                acc += *v;
            }
            return acc;
        };
    }
    if (have_comp && r.measure_class == MeasureClass::finite) {
        r.exact_complement_volume = [comps](double t) -> std::optional<double> {
            double acc = 0.0;
            for (const auto& c : *comps) {
                auto v = c.exact_complement_volume(t);
                if (!v) return std::nullopt;
                acc += *v;
            }
            return acc;
        };
    }
    if (have_surf) {
        r.exact_surface_measure = [comps](double t) -> std::optional<double> {
            double acc = 0.0;
            for (const auto& c : *comps) {
                auto v = c.exact_surface_measure(t);
                if (!v) return std::nullopt;
                acc += *v;
            }
            return acc;
        };
    }
    r.nonsmooth_radii = [comps](double lo, double hi) {
        std::vector<double> out;
        for (const auto& c : *comps) {
            auto v = c.nonsmooth_in(lo, hi);
            out.insert(out.end(), v.begin(), v.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return r;
}

Region build_translate(Region inner, const Eigen::VectorXd& offset) {
    if (offset.size() != inner.ambient_dim)
        throw input_error("translate: offset dimension mismatch");
    if (inner.name == "full_space") return inner;  // tube volumes are unaffected

    Region r;
    r.ambient_dim = inner.ambient_dim;
    r.norm = inner.norm;
    r.measure_class = inner.measure_class;
    r.total_measure = inner.total_measure;
    r.declared_dimension = inner.declared_dimension;  // invariant at infinity
    r.name = inner.name + "_translated";

    const double off_norm = inner.norm == Norm::euclidean
                                ? offset.norm()
                                : offset.lpNorm<Eigen::Infinity>();
    auto base = std::make_shared<Region>(std::move(inner));
    const Eigen::VectorXd v = offset;
    r.membership = [base, v](const Eigen::VectorXd& p) {
        return base->membership(p - v);
    };

    const bool shifted_1d_exact = base->ambient_dim == 1 && base->min_radius > 0.0 &&
                                  base->min_radius + v(0) > 0.0;
    if (shifted_1d_exact) {
        // the 1-D built-ins live on the positive axis; a shift that keeps them
        // there maps radial windows to shifted intervals
        const double s = v(0);
        const double floor_rad = 0.5 * base->min_radius;
        r.min_radius = base->min_radius + s;
        if (base->exact_tube_volume) {
            r.exact_tube_volume = [base, s, floor_rad](double T, double t)
                -> std::optional<double> {
                const double lo = std::max(T - s, floor_rad);
                const double hi = std::max(t - s, floor_rad);
                if (hi <= lo) return 0.0;
                return base->exact_tube_volume(lo, hi);
            };
        }
        if (base->exact_complement_volume) {
            r.exact_complement_volume = [base, s, floor_rad](double t)
                -> std::optional<double> {
                return base->exact_complement_volume(std::max(t - s, floor_rad));
            };
        }
        if (base->exact_surface_measure) {
            r.exact_surface_measure = [base, s](double t) -> std::optional<double> {
                if (t - s <= 0.0) return 0.0;
                return base->exact_surface_measure(t - s);
            };
        }
        r.nonsmooth_radii = [base, s](double lo, double hi) {
            auto pts = base->nonsmooth_in(lo - s, hi - s);
            for (double& x : pts) x += s;
            return pts;
        };
    } else {
        // closed forms would be wrong after a general shift: drop them
        r.min_radius = std::max(0.0, base->min_radius - off_norm);
        r.nonsmooth_radii = {};
    }
    return r;
}

Region build_scale(Region inner, double factor) {
    if (!(factor > 0.0)) throw constraint_error("scale: factor must be positive");
    Region r;
    r.ambient_dim = inner.ambient_dim;
    r.norm = inner.norm;
    r.measure_class = inner.measure_class;
    r.declared_dimension = inner.declared_dimension;  // scaling-invariant
    r.name = inner.name + "_scaled";
    const int n = inner.ambient_dim;
    const double vol_factor = std::pow(factor, n);
    if (inner.total_measure) r.total_measure = *inner.total_measure * vol_factor;
    r.min_radius = inner.min_radius * factor;

    auto base = std::make_shared<Region>(std::move(inner));
    const double f = factor;
    r.membership = [base, f](const Eigen::VectorXd& p) {
        return base->membership(p / f);
    };
    if (base->exact_tube_volume) {
        r.exact_tube_volume = [base, f, vol_factor](double T, double t)
            -> std::optional<double> {
            auto v = base->exact_tube_volume(T / f, t / f);
            if (!v) return std::nullopt;
            return *v * vol_factor;
        };
    }
    if (base->exact_complement_volume) {
        r.exact_complement_volume = [base, f, vol_factor](double t)
            -> std::optional<double> {
            auto v = base->exact_complement_volume(t / f);
            if (!v) return std::nullopt;
            return *v * vol_factor;
        };
    }
    if (base->exact_surface_measure) {
        const double surf_factor = std::pow(f, n - 1);
        r.exact_surface_measure = [base, f, surf_factor](double t)
            -> std::optional<double> {
            auto v = base->exact_surface_measure(t / f);
            if (!v) return std::nullopt;
            return *v * surf_factor;
        };
    }
    r.nonsmooth_radii = [base, f](double lo, double hi) {
        auto pts = base->nonsmooth_in(lo / f, hi / f);
        for (double& x : pts) x *= f;
        return pts;
    };
    return r;
}

// ---------------------------------------------------------------------------
// JSON region documents

namespace {

using nlohmann::json;

Norm parse_norm(const json& doc, Norm fallback) {
    if (!doc.contains("norm")) return fallback;
    const std::string s = doc.at("norm").get<std::string>();
    if (s == "euclidean") return Norm::euclidean;
    if (s == "sup") return Norm::sup;
    throw input_error("region spec: unknown norm \"" + s + "\"");
}

double need_number(const json& params, const char* key, const char* kind) {
    if (!params.contains(key))
        throw input_error(std::string("region spec: \"") + kind +
                          "\" requires parameter \"" + key + "\"");
    if (!params.at(key).is_number())
        throw input_error(std::string("region spec: parameter \"") + key +
                          "\" must be a number");
    return params.at(key).get<double>();
}

Region sup_membership_only(Region r) {
    // exact radial forms assume Euclidean geometry; keep only the predicate
    r.norm = Norm::sup;
    r.exact_tube_volume = {};
    r.exact_complement_volume = {};
    r.exact_surface_measure = {};
    r.nonsmooth_radii = {};
    r.min_radius = r.min_radius / std::sqrt(static_cast<double>(r.ambient_dim));
    return r;
}

Region region_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("kind"))
        throw input_error("region spec: expected an object with a \"kind\" field");
    const std::string kind = doc.at("kind").get<std::string>();
    const json params = doc.value("params", json::object());

    if (kind == "full_space") {
        const int n = static_cast<int>(need_number(params, "n", "full_space"));
        return build_full_space(n, parse_norm(doc, Norm::euclidean));
    }
    if (kind == "strip") {
        Region r = build_strip(need_number(params, "h", "strip"));
        if (parse_norm(doc, Norm::euclidean) == Norm::sup) r = sup_membership_only(r);
        return r;
    }
    if (kind == "envelope") {
        Region r = build_envelope(need_number(params, "x0", "envelope"),
                                  need_number(params, "b", "envelope"));
        if (parse_norm(doc, Norm::euclidean) == Norm::sup) r = sup_membership_only(r);
        return r;
    }
    if (kind == "tent") {
        Region r = build_tent(need_number(params, "q", "tent"));
        r.norm = parse_norm(doc, Norm::euclidean);  // norms coincide in R^1
        return r;
    }
    if (kind == "stacked_two_param") {
        return build_stacked_two_param(need_number(params, "a", "stacked_two_param"),
                                       need_number(params, "b", "stacked_two_param"),
                                       parse_norm(doc, Norm::sup));
    }
    if (kind == "disjoint_union") {
        if (!params.contains("components") || !params.at("components").is_array())
            throw input_error("region spec: disjoint_union needs a \"components\" array");
        std::vector<Region> comps;
        for (const auto& c : params.at("components"))
            comps.push_back(region_from_json(c));
        return build_disjoint_union(std::move(comps));
    }
    if (kind == "translate") {
        if (!params.contains("inner"))
            throw input_error("region spec: translate needs an \"inner\" region");
        if (!params.contains("offset") || !params.at("offset").is_array())
            throw input_error("region spec: translate needs an \"offset\" array");
        Region inner = region_from_json(params.at("inner"));
        const auto& arr = params.at("offset");
        Eigen::VectorXd v(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
        return build_translate(std::move(inner), v);
    }
    if (kind == "scale") {
        if (!params.contains("inner"))
            throw input_error("region spec: scale needs an \"inner\" region");
        Region inner = region_from_json(params.at("inner"));
        return build_scale(std::move(inner), need_number(params, "factor", "scale"));
    }
    throw input_error("region spec: unknown kind \"" + kind + "\"");
}

}  // namespace

Region load_region(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // report line/column from the byte offset
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < std::min(json_text.size(), e.byte); ++i) {
            if (json_text[i] == '\n') { ++line; col = 1; } else { ++col; }
        }
        throw input_error("region spec: malformed JSON at line " +
                          std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + e.what());
    }
    return region_from_json(doc);
}

Region load_region_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open region spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_region(ss.str());
}

}  // namespace shellzeta
