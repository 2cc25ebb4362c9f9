#include "momgauge/fieldsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "momgauge/gaugefield.hpp"

namespace momgauge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

std::size_t interval_index(const std::vector<double>& breakpoints, double p) {
    std::size_t i = 0;
    while (i < breakpoints.size() && p > breakpoints[i]) ++i;
    return i;
}

PiecewiseField1D symmetric_pair(double strength, double pa) {
    if (!(pa > 0.0)) throw config_error("sheet solve: p_a must be > 0");
    PiecewiseField1D f;
    f.breakpoints = {-pa, pa};
    const double v = kFourPi * strength;
    f.field = {-v, 0.0, v};
    // field = -d(potential)/dp on each interval; potential even, zero at 0.
    f.potential = {{v * pa, v}, {0.0, 0.0}, {v * pa, -v}};
    return f;
}

}  // namespace

double PiecewiseField1D::field_at(double p) const { return field[interval_index(breakpoints, p)]; }

double PiecewiseField1D::potential_at(double p) const {
    auto [a, b] = potential[interval_index(breakpoints, p)];
    return a + b * p;
}

PiecewiseField1D solve_capacitor(double sigma, double pa) { return symmetric_pair(sigma, pa); }

PiecewiseField1D solve_sheets(double j, double pa) { return symmetric_pair(j, pa); }

PoissonSolution poisson_solve_1d(const MomentumSource1D& source, int n_nodes,
                                 double half_extent,
                                 std::optional<std::pair<double, double>> bc) {
    if (n_nodes < 64) throw config_error("poisson solve: need >= 64 nodes");
    if (!(half_extent > 0.0)) throw config_error("poisson solve: extent must be > 0");
    for (const auto& s : source.sheets) {
        if (!std::isfinite(s.strength)) throw config_error("poisson solve: non-finite strength");
        if (s.kind == SheetKind::CurrentZ)
            throw config_error("poisson solve: longitudinal current sheets have no 1D channel");
        if (!source.sheets.empty() && s.kind != source.sheets.front().kind)
            throw config_error("poisson solve: sheets must share one kind");
    }

    PoissonSolution sol;
    sol.spacing = 2.0 * half_extent / (n_nodes - 1);
    sol.nodes.resize(n_nodes);
    for (int i = 0; i < n_nodes; ++i) sol.nodes[i] = -half_extent + i * sol.spacing;

    sol.density.assign(n_nodes, 0.0);
    for (const auto& s : source.sheets) {
        int k = static_cast<int>(std::lround((s.position + half_extent) / sol.spacing));
        if (k < 1 || k > n_nodes - 2)
            throw config_error("poisson solve: sheet not strictly interior");
        sol.density[k] += s.strength / sol.spacing;
    }

    double bl, br;
    if (bc) {
        bl = bc->first;
        br = bc->second;
    } else {
        // Analytic far-field superposition, zero at the origin.
        auto phi = [&](double p) {
            double v = 0.0;
            for (const auto& s : source.sheets) v -= 2.0 * kPi * s.strength * std::abs(p - s.position);
            return v;
        };
        double c0 = phi(0.0);
        bl = phi(-half_extent) - c0;
        br = phi(half_extent) - c0;
    }

    // Thomas solve of (phi_{i-1} - 2 phi_i + phi_{i+1})/h^2 = -4 pi rho_i.
    const double h2 = sol.spacing * sol.spacing;
    const int m = n_nodes - 2;
    std::vector<double> diag(m, -2.0), rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = -kFourPi * sol.density[i + 1] * h2;
    rhs[0] -= bl;
    rhs[m - 1] -= br;
    for (int i = 1; i < m; ++i) {
        double w = 1.0 / diag[i - 1];
        diag[i] -= w;
        rhs[i] -= w * rhs[i - 1];
    }
    sol.potential.assign(n_nodes, 0.0);
    sol.potential[0] = bl;
    sol.potential[n_nodes - 1] = br;
    sol.potential[m] = rhs[m - 1] / diag[m - 1];
    for (int i = m - 2; i >= 0; --i)
        sol.potential[i + 1] = (rhs[i] - sol.potential[i + 2]) / diag[i];

    sol.field.assign(n_nodes, 0.0);
    for (int i = 1; i < n_nodes - 1; ++i)
        sol.field[i] = -(sol.potential[i + 1] - sol.potential[i - 1]) / (2.0 * sol.spacing);
    sol.field[0] = -(sol.potential[1] - sol.potential[0]) / sol.spacing;
    sol.field[n_nodes - 1] =
        -(sol.potential[n_nodes - 1] - sol.potential[n_nodes - 2]) / sol.spacing;
    return sol;
}

namespace {

ResidualReport residual_impl(const std::vector<double>& potential,
                             const std::vector<double>& density, double spacing,
                             const std::vector<bool>& skip) {
    ResidualReport rep;
    double sq = 0.0;
    const double h2 = spacing * spacing;
    for (std::size_t i = 1; i + 1 < potential.size(); ++i) {
        if (skip[i]) continue;
        double r = (potential[i - 1] - 2.0 * potential[i] + potential[i + 1]) / h2 +
                   kFourPi * density[i];
        rep.max_abs = std::max(rep.max_abs, std::abs(r));
        sq += r * r;
        ++rep.nodes;
    }
    rep.rms = rep.nodes ? std::sqrt(sq / rep.nodes) : 0.0;
    return rep;
}

}  // namespace

ResidualReport laplacian_residual(const PoissonSolution& solution) {
    std::vector<bool> skip(solution.nodes.size(), false);
    return residual_impl(solution.potential, solution.density, solution.spacing, skip);
}

ResidualReport laplacian_residual(const std::vector<double>& nodes,
                                  const std::vector<double>& potential,
                                  const MomentumSource1D& source, int skip_cells) {
    if (nodes.size() != potential.size() || nodes.size() < 3)
        throw config_error("laplacian residual: grid mismatch");
    const double spacing = nodes[1] - nodes[0];
    const double lo = nodes.front();
    std::vector<double> density(nodes.size(), 0.0);
    std::vector<bool> skip(nodes.size(), false);
    for (const auto& s : source.sheets) {
        int k = static_cast<int>(std::lround((s.position - lo) / spacing));
        if (k < 0 || k >= static_cast<int>(nodes.size()))
            throw config_error("laplacian residual: sheet outside grid");
        density[k] += s.strength / spacing;
        for (int d = -skip_cells; d <= skip_cells; ++d) {
            int idx = k + d;
            if (idx >= 0 && idx < static_cast<int>(nodes.size())) skip[idx] = true;
        }
    }
    return residual_impl(potential, density, spacing, skip);
}

double coulomb_flux_check(double gc, double radius, int n_samples) {
    if (!(radius > 0.0)) throw config_error("flux check: radius must be > 0");
    n_samples = std::max(n_samples, 16);
    const int nu = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_samples))));
    const int nphi = nu;
    const double du = 2.0 / nu;
    const double dphi = 2.0 * kPi / nphi;
    const MomentumGaugeConfig cfg = CoulombMomentum{gc};

    // Midpoint rule in (cos theta, phi); exact for the constant radial field.
    double flux = 0.0;
    for (int i = 0; i < nu; ++i) {
        double u = -1.0 + (i + 0.5) * du;
        double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int j = 0; j < nphi; ++j) {
            double phi = (j + 0.5) * dphi;
            Vec3 n(s * std::cos(phi), s * std::sin(phi), u);
            Vec3 e = momentum_electric(cfg, radius * n);
            flux += e.dot(n) * radius * radius * du * dphi;
        }
    }
    return flux;
}

double plane_wave_residual(const FourVector& x0) { return std::abs(x0.dot(x0)); }

FourVector transverse_current(const FourVector& v, const FourVector& x) {
    const double x2 = x.dot(x);
    if (std::abs(x2) <= 1e-14 * std::max(1e-300, x.euclidean2()))
        throw singular_error("transverse projector undefined on null or zero x");
    const double c = v.dot(x) / x2;
    return {v.t - c * x.t, v.x - c * x.x, v.y - c * x.y, v.z - c * x.z};
}

ConservationReport conservation_check(const MomentumSource1D& source) {
    ConservationReport rep;
    // Sheets vary only along p_z.  J^0(p_z) is p^0-independent and J^y(p_z)
    // has no p_y dependence, so both divergence terms vanish identically.
    // A z-directed current varying along p_z is structurally non-conserved;
    // its divergence is sampled on a smoothed sheet of width eps.
    const double eps = 0.1;
    for (const auto& s : source.sheets) {
        double div = 0.0;
        if (s.kind == SheetKind::CurrentZ)
            div = s.strength * std::exp(-0.5) / (std::sqrt(2.0 * kPi) * eps * eps);
        rep.divergence_samples.push_back(div);
        if (std::abs(div) > 1e-12) rep.conserved = false;
    }
    return rep;
}

}  // namespace momgauge
