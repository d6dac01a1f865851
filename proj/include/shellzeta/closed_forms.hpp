#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shellzeta/types.hpp"

namespace shellzeta {

struct Region;

// The two-parameter stacked family: for each m >= 1 take 2^{m-1} copies of
// {x > a^{-m}, 0 < y < x^{-b}} and stack them disjointly along the y-axis
// into the strip {0 <= y <= S}, S = a^b / (1 - 2 a^b).  All of its metric
// quantities below are taken in the sup norm, where shells beyond the strip
// height reduce to vertical slabs in x.
class TwoParamFamily {
public:
    TwoParamFamily(double a, double b);  // a in (0, 1/2), b > log_{1/a} 2

    double a() const { return a_; }
    double b() const { return b_; }
    double strip_height() const { return strip_height_; }
    bool finite_measure() const;  // b > 1 + log_{1/a} 2
    std::optional<double> total_measure() const;

    // |shell between sup-radii t1 and t2 intersected with the set|,
    // requires strip_height <= t1 <= t2.
    double shell_volume(double t1, double t2) const;

    // |set outside sup-radius t|; finite-measure case only, t >= strip_height.
    double complement_volume(double t) const;

    std::complex<double> zeta(std::complex<double> s) const;

    double upper_dimension() const;  // log_{1/a} 2 - (b + 1)
    double principal_pole() const { return -(b_ + 1.0); }
    double lattice_real() const;
    double imag_spacing() const;     // 2*pi / log(1/a)

    // largest sup-radii <= hi at which the slab shell function has kinks
    std::vector<double> nonsmooth_radii(double lo, double hi) const;

private:
    double a_;
    double b_;
    double strip_height_;
};

std::complex<double> two_param_zeta(double a, double b, std::complex<double> s);
double two_param_shell_volume(double a, double b, double t1, double t2);

struct Pole {
    std::complex<double> location;
    std::complex<double> residue;
    bool principal = false;
};

struct PoleWindow {
    double re_min = -1e9;
    double im_min = -10.0;
    double im_max = 10.0;
};

struct ComplexDimensionLattice {
    double principal_pole = 0.0;
    double lattice_real = 0.0;
    double imag_spacing = 0.0;
    PoleWindow window;
    std::vector<Pole> poles;  // sorted by imaginary part, principal first
};

ComplexDimensionLattice two_param_complex_dimensions(double a, double b,
                                                     const PoleWindow& window);

// Profile G(tau) = H(tau, ..., tau) built from periodic components sampled
// over one period each.  Components must be nonconstant; profiles declared
// infinite are truncated to kMaxComponents.
class QuasiperiodicProfile {
public:
    enum class Kind { algebraic, transcendental };  // declared metadata, never computed

    struct Component {
        double period = 1.0;
        std::vector<double> samples;  // values over one period, >= 4 points
    };

    static constexpr int kMaxComponents = 8;

    // combiner defaults to the sum of the component values
    QuasiperiodicProfile(std::vector<Component> components, Kind kind,
                         bool declared_infinite = false,
                         std::function<double(const std::vector<double>&)> combiner = {});

    double eval(double tau) const;
    const std::vector<double>& quasiperiods() const { return periods_; }
    Kind kind() const { return kind_; }
    bool declared_infinite() const { return declared_infinite_; }

private:
    std::vector<Component> components_;
    std::vector<double> periods_;
    Kind kind_;
    bool declared_infinite_ = false;
    std::function<double(const std::vector<double>&)> combiner_;
};

struct AsymptoticsFit {
    double rms_misfit = 0.0;          // over the top decade of the grid
    std::vector<double> decade_rms;   // one value per decade, ascending t
};

// Compares normalized tube volumes V(T,t)/t^{N+D} against G(log t).
AsymptoticsFit fit_asymptotics(const Region& region, double D,
                               const QuasiperiodicProfile& profile,
                               const GridSpec& grid, const SamplingPlan& plan);

// Same misfit with the best constant in place of G (constant profiles are
// rejected by the profile type).
AsymptoticsFit fit_asymptotics_constant(const Region& region, double D,
                                        const GridSpec& grid,
                                        const SamplingPlan& plan);

// The log-periodic profile of the stacked family (single period log(1/a)).
QuasiperiodicProfile two_param_profile(double a, double b, int samples_per_period = 512);

}  // namespace shellzeta
