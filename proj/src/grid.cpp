#include "momgauge/grid.hpp"

#include <cmath>
#include <numbers>

namespace momgauge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMap = Eigen::Map<RowMat>;
using ConstRowMap = Eigen::Map<const RowMat>;

/// Periodic spectral derivative d/dp on an N-point axis of spacing dp.
/// Built as F^H diag(i k) F with the Nyquist mode zeroed, so the matrix is
/// skew-Hermitian to roundoff.
Eigen::MatrixXcd spectral_derivative(int n, double dp) {
    Eigen::MatrixXcd f(n, n);
    const Complex im(0.0, 1.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            f(r, c) = s * std::exp(-im * (kTwoPi * r * c / n));
    Eigen::VectorXcd ik(n);
    for (int r = 0; r < n; ++r) {
        int m = (2 * r < n) ? r : r - n;
        if (n % 2 == 0 && r == n / 2) m = 0;
        ik(r) = im * (kTwoPi * m / (n * dp));
    }
    return f.adjoint() * ik.asDiagonal() * f;
}

Eigen::VectorXcd apply_along_axis(const MomentumGrid& grid, const Eigen::MatrixXcd& m,
                                  int axis, const Eigen::VectorXcd& v) {
    if (grid.dims == 1) return m * v;
    ConstRowMap in(v.data(), grid.points[0], grid.points[1]);
    Eigen::VectorXcd out(v.size());
    RowMap o(out.data(), grid.points[0], grid.points[1]);
    if (axis == 0)
        o = m * in;
    else
        o = in * m.transpose();
    return out;
}

}  // namespace

GridPtr make_grid(int dims, std::array<int, 2> points_per_axis,
                  std::array<double, 2> half_extent,
                  std::optional<std::array<double, 2>> offset) {
    if (dims != 1 && dims != 2) throw config_error("grid: dims must be 1 or 2");
    auto g = std::make_shared<MomentumGrid>();
    g->dims = dims;
    for (int a = 0; a < dims; ++a) {
        if (points_per_axis[a] < 8) throw config_error("grid: need >= 8 points per axis");
        if (!(half_extent[a] > 0.0)) throw config_error("grid: half_extent must be > 0");
        g->points[a] = points_per_axis[a];
        g->half_extent[a] = half_extent[a];
        g->spacing[a] = 2.0 * half_extent[a] / points_per_axis[a];
        g->offset[a] = offset ? (*offset)[a] : 0.5 * g->spacing[a];
    }
    if (dims == 1) g->points[1] = 1;
    return g;
}

GridPtr make_grid(int dims, int points_per_axis, double half_extent) {
    return make_grid(dims, {points_per_axis, points_per_axis}, {half_extent, half_extent});
}

double StateVector::norm() const { return std::sqrt(norm2()); }

Complex inner(const StateVector& a, const StateVector& b) {
    if (a.grid != b.grid) throw config_error("inner: grid mismatch");
    return a.amp.dot(b.amp) * a.grid->cell_volume();
}

StateVector LinearOperator::operator()(const StateVector& psi) const {
    if (psi.grid != grid) throw config_error("operator: grid mismatch");
    return {grid, apply_fn(psi.amp)};
}

LinearOperator position_operator(GridPtr grid, int axis, double hbar) {
    if (axis < 0 || axis >= grid->dims) throw config_error("position operator: axis out of range");
    auto d = std::make_shared<Eigen::MatrixXcd>(
        Complex(0.0, hbar) * spectral_derivative(grid->points[axis], grid->spacing[axis]));
    auto g = grid;
    return {grid,
            [g, d, axis](const Eigen::VectorXcd& v) { return apply_along_axis(*g, *d, axis, v); },
            true, "x_" + std::to_string(axis)};
}

LinearOperator momentum_operator(GridPtr grid, int axis) {
    if (axis < 0 || axis >= grid->dims) throw config_error("momentum operator: axis out of range");
    return multiplication_operator(
        grid, [axis](const Vec3& p) { return p[axis]; }, "p_" + std::to_string(axis));
}

LinearOperator multiplication_operator(GridPtr grid,
                                       const std::function<double(const Vec3&)>& f,
                                       const std::string& label) {
    auto values = std::make_shared<Eigen::VectorXd>(grid->size());
    for (std::size_t k = 0; k < grid->size(); ++k) (*values)(k) = f(grid->node(k));
    return {grid,
            [values](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
                return values->cast<Complex>().cwiseProduct(v);
            },
            true, label};
}

LinearOperator covariant_position(GridPtr grid, int axis, const MomentumGaugeConfig& config,
                                  double g, double hbar) {
    LinearOperator x = position_operator(grid, axis, hbar);
    // C component index: spatial axis 0/1 -> C^1/C^2.
    auto cvals = std::make_shared<Eigen::VectorXd>(grid->size());
    for (std::size_t k = 0; k < grid->size(); ++k)
        (*cvals)(k) = eval_c(config, grid->node(k))[axis + 1];
    auto xfn = x.apply_fn;
    return {grid,
            [xfn, cvals, g](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
                return xfn(v) - g * cvals->cast<Complex>().cwiseProduct(v);
            },
            true, "X_" + std::to_string(axis)};
}

StateVector commutator_apply(const LinearOperator& a, const LinearOperator& b,
                             const StateVector& psi) {
    if (a.grid != b.grid || a.grid != psi.grid)
        throw config_error("commutator: grid mismatch");
    return {psi.grid, a.apply_fn(b.apply_fn(psi.amp)) - b.apply_fn(a.apply_fn(psi.amp))};
}

StateVector gaussian_state(GridPtr grid, std::array<double, 2> center, double width) {
    if (!(width > 0.0)) throw config_error("gaussian state: width must be > 0");
    for (int a = 0; a < grid->dims; ++a) {
        if (grid->half_extent[a] - std::abs(center[a]) < 3.0 * width)
            throw config_error("gaussian state: center closer than 3 widths to the boundary");
    }
    StateVector psi{grid, Eigen::VectorXcd(grid->size())};
    for (std::size_t k = 0; k < grid->size(); ++k) {
        Vec3 p = grid->node(k);
        double q2 = 0.0;
        for (int a = 0; a < grid->dims; ++a) {
            double d = p[a] - center[a];
            q2 += d * d;
        }
        psi.amp(k) = std::exp(-q2 / (2.0 * width * width));
    }
    psi.amp /= psi.norm();
    return psi;
}

NoncommReport verify_noncommutativity(GridPtr grid, const MomentumGaugeConfig& config,
                                      double g, const std::vector<StateVector>& states,
                                      double hbar) {
    if (grid->dims != 2) throw config_error("noncommutativity check needs a 2D grid");
    if (states.empty()) throw config_error("noncommutativity check needs test states");

    LinearOperator x1 = covariant_position(grid, 0, config, g, hbar);
    LinearOperator x2 = covariant_position(grid, 1, config, g, hbar);
    Eigen::VectorXd g12(grid->size());
    for (std::size_t k = 0; k < grid->size(); ++k)
        g12(k) = field_strength(config, grid->node(k)).g(1, 2);

    NoncommPair pair{0, 1, 0.0, 0.0};
    const Complex im(0.0, 1.0);
    double theta_acc = 0.0;
    for (const auto& psi : states) {
        StateVector comm = commutator_apply(x1, x2, psi);
        Eigen::VectorXcd expected = im * g * g12.cast<Complex>().cwiseProduct(psi.amp);
        double res = (comm.amp - expected).norm() / psi.amp.norm();
        pair.residual = std::max(pair.residual, res);
        Complex theta = inner(psi, comm) / (im * inner(psi, psi));
        theta_acc += theta.real();
    }
    pair.theta_measured = theta_acc / static_cast<double>(states.size());

    NoncommReport report;
    report.pairs.push_back(pair);
    report.n_states = states.size();
    return report;
}

ReciprocityMap::ReciprocityMap(GridPtr grid) : grid_(std::move(grid)) {
    if (grid_->dims == 2 && !grid_->square())
        throw config_error("reciprocity map needs a square grid");
    for (int a = 0; a < grid_->dims; ++a) {
        if (std::abs(grid_->offset[a] - 0.5 * grid_->spacing[a]) > 1e-15 * grid_->spacing[a])
            throw config_error("reciprocity map needs the default half-cell offset");
    }
    const int n = grid_->points[0];
    kernel_.resize(n, n);
    const Complex im(0.0, 1.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        double aj = j + 0.5 - 0.5 * n;
        for (int k = 0; k < n; ++k) {
            double ak = k + 0.5 - 0.5 * n;
            kernel_(j, k) = s * std::exp(im * (kTwoPi * aj * ak / n));
        }
    }
}

StateVector ReciprocityMap::apply(const StateVector& psi) const {
    if (psi.grid != grid_) throw config_error("reciprocity: grid mismatch");
    if (grid_->dims == 1) return {grid_, kernel_ * psi.amp};
    ConstRowMap in(psi.amp.data(), grid_->points[0], grid_->points[1]);
    Eigen::VectorXcd out(psi.amp.size());
    RowMap o(out.data(), grid_->points[0], grid_->points[1]);
    o = kernel_ * in * kernel_.transpose();
    return {grid_, out};
}

StateVector ReciprocityMap::apply_inverse(const StateVector& psi) const {
    if (psi.grid != grid_) throw config_error("reciprocity: grid mismatch");
    Eigen::MatrixXcd inv = kernel_.conjugate();
    if (grid_->dims == 1) return {grid_, inv * psi.amp};
    ConstRowMap in(psi.amp.data(), grid_->points[0], grid_->points[1]);
    Eigen::VectorXcd out(psi.amp.size());
    RowMap o(out.data(), grid_->points[0], grid_->points[1]);
    o = inv * in * inv.transpose();
    return {grid_, out};
}

ReciprocityMap reciprocity_map(GridPtr grid) { return ReciprocityMap(std::move(grid)); }

double self_dual_extent(int points, double hbar) {
    // N * spacing^2 = 2*pi*hbar with spacing = 2L/N gives L = sqrt(pi*hbar*N/2).
    return std::sqrt(0.5 * std::numbers::pi * hbar * points);
}

}  // namespace momgauge
