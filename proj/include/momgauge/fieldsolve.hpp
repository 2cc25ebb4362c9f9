#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "momgauge/errors.hpp"

namespace momgauge {

// Static 1D reductions of the momentum-space field equation
// d^2 C / dp_z^2 = -4*pi*rho, for delta-sheet sources along p_z.
// "field" means the physically monitored component: E_z = -dC^0/dp_z for
// charge sheets, B_x = -dC^y/dp_z for y-directed current sheets.

enum class SheetKind { Charge, CurrentY, CurrentZ };

struct Sheet {
    double position = 0.0;
    double strength = 0.0;
    SheetKind kind = SheetKind::Charge;
};

struct MomentumSource1D {
    std::vector<Sheet> sheets;
    std::string axis = "pz";
};

/// Piecewise-constant field with its piecewise-linear potential.
/// Interval i covers (breakpoints[i-1], breakpoints[i]); potential is
/// a + b*p per interval, gauge-fixed even and zero at the origin for the
/// symmetric two-sheet problems.
struct PiecewiseField1D {
    std::vector<double> breakpoints;
    std::vector<double> field;                          // breakpoints.size()+1 values
    std::vector<std::pair<double, double>> potential;   // (a, b) per interval

    double field_at(double p) const;
    double potential_at(double p) const;
};

/// Like-sign charge sheets at +-p_a: E_z = +-4*pi*sigma outside, 0 between.
PiecewiseField1D solve_capacitor(double sigma, double pa);

/// Same-direction current sheets at +-p_a: B_x = +-4*pi*j outside, 0 between.
PiecewiseField1D solve_sheets(double j, double pa);

struct PoissonSolution {
    std::vector<double> nodes;
    std::vector<double> potential;
    std::vector<double> field;    // centered difference of -potential
    std::vector<double> density;  // deposited source, per node
    double spacing = 0.0;
};

/// Second-order tridiagonal solve of C'' = -4*pi*rho with delta sheets
/// deposited on the nearest node (weight strength/spacing).  Boundary
/// values default to the analytic far-field superposition, gauge-fixed to
/// zero potential at the origin.
PoissonSolution poisson_solve_1d(const MomentumSource1D& source, int n_nodes,
                                 double half_extent,
                                 std::optional<std::pair<double, double>> bc = std::nullopt);

struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    std::size_t nodes = 0;
};

/// Discrete residual C'' + 4*pi*rho over interior nodes.
ResidualReport laplacian_residual(const PoissonSolution& solution);

/// Same residual for an externally sampled potential; nodes within
/// skip_cells of a sheet are excluded.
ResidualReport laplacian_residual(const std::vector<double>& nodes,
                                  const std::vector<double>& potential,
                                  const MomentumSource1D& source, int skip_cells = 0);

/// Flux of the radial field of C^0 = g_c/p through a sphere of the given
/// radius; expected 4*pi*g_c independent of radius.
double coulomb_flux_check(double gc, double radius, int n_samples);

/// Minkowski 4-vector, metric (+,-,-,-), index 0 time-like.
struct FourVector {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;
    double dot(const FourVector& o) const { return t * o.t - x * o.x - y * o.y - z * o.z; }
    double euclidean2() const { return t * t + x * x + y * y + z * z; }
};

/// |x0 . x0|: the wave-operator residual of the phase e^{i p . x0};
/// zero exactly on the light cone.
double plane_wave_residual(const FourVector& x0);

/// Transverse projection V - x (V.x)/(x.x); satisfies x . result = 0.
/// Throws singular_error for null or zero x.
FourVector transverse_current(const FourVector& v, const FourVector& x);

struct ConservationReport {
    bool conserved = true;
    // Sampled divergence contribution of each sheet.
    std::vector<double> divergence_samples;
};

/// Structural check of d_mu J^mu = 0 for static sheet sources.
ConservationReport conservation_check(const MomentumSource1D& source);

}  // namespace momgauge
