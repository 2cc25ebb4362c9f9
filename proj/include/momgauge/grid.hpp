#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "momgauge/errors.hpp"
#include "momgauge/gaugefield.hpp"

namespace momgauge {

using Complex = std::complex<double>;

/// Uniform 1D or 2D momentum grid.  Node coordinates along each axis are
///   p_k = -half_extent + (k + 1/2) * spacing + (offset - spacing/2),
/// so the default offset of half a cell keeps p = 0 off the grid.
struct MomentumGrid {
    int dims = 1;
    std::array<int, 2> points{8, 1};
    std::array<double, 2> half_extent{1.0, 1.0};
    std::array<double, 2> offset{0.0, 0.0};
    std::array<double, 2> spacing{0.0, 0.0};

    std::size_t size() const {
        return static_cast<std::size_t>(points[0]) * (dims == 2 ? points[1] : 1);
    }
    double coord(int axis, int k) const {
        return -half_extent[axis] + (k + 0.5) * spacing[axis] +
               (offset[axis] - 0.5 * spacing[axis]);
    }
    /// Flat index: axis-0 major.
    std::size_t flat(int i0, int i1 = 0) const {
        return static_cast<std::size_t>(i0) * (dims == 2 ? points[1] : 1) + i1;
    }
    /// Full 3-momentum of a node (unused axes are zero).
    Vec3 node(std::size_t idx) const {
        if (dims == 1) return Vec3(coord(0, static_cast<int>(idx)), 0.0, 0.0);
        int i0 = static_cast<int>(idx) / points[1];
        int i1 = static_cast<int>(idx) % points[1];
        return Vec3(coord(0, i0), coord(1, i1), 0.0);
    }
    double cell_volume() const {
        return dims == 2 ? spacing[0] * spacing[1] : spacing[0];
    }
    bool square() const {
        return dims == 2 && points[0] == points[1] && half_extent[0] == half_extent[1] &&
               offset[0] == offset[1];
    }
};

using GridPtr = std::shared_ptr<const MomentumGrid>;

/// Build a grid; offset defaults to half a cell on every axis.
GridPtr make_grid(int dims, std::array<int, 2> points_per_axis,
                  std::array<double, 2> half_extent,
                  std::optional<std::array<double, 2>> offset = std::nullopt);

/// Convenience: same point count and extent on every axis.
GridPtr make_grid(int dims, int points_per_axis, double half_extent);

/// Complex amplitudes over the nodes of a grid.
struct StateVector {
    GridPtr grid;
    Eigen::VectorXcd amp;

    double norm2() const { return amp.squaredNorm() * grid->cell_volume(); }
    double norm() const;
};

Complex inner(const StateVector& a, const StateVector& b);

/// Linear map on states of a fixed grid, with a hermiticity claim.
struct LinearOperator {
    GridPtr grid;
    std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply_fn;
    bool hermitian = false;
    std::string label;

    StateVector operator()(const StateVector& psi) const;
};

/// Position operator x_axis = i*hbar * d/dp_axis (periodic spectral derivative).
LinearOperator position_operator(GridPtr grid, int axis, double hbar = 1.0);

/// Momentum operator: pointwise multiplication by the node coordinate.
LinearOperator momentum_operator(GridPtr grid, int axis);

/// Pointwise multiplication by an arbitrary real function of the node momentum.
LinearOperator multiplication_operator(GridPtr grid,
                                       const std::function<double(const Vec3&)>& f,
                                       const std::string& label = "mult");

/// Covariant position X_axis = x_axis - g * C_{axis+1}(p).
LinearOperator covariant_position(GridPtr grid, int axis,
                                  const MomentumGaugeConfig& config, double g,
                                  double hbar = 1.0);

/// (AB - BA) psi.  Throws config_error on grid mismatch.
StateVector commutator_apply(const LinearOperator& a, const LinearOperator& b,
                             const StateVector& psi);

/// Normalized Gaussian exp(-|p - center|^2 / (2 w^2)).  The center must sit
/// at least 3 widths from every grid boundary.
StateVector gaussian_state(GridPtr grid, std::array<double, 2> center, double width);

/// Residuals of [X_i, X_j] psi = i g G_ij(p) psi over a set of test states.
struct NoncommPair {
    int i = 0;
    int j = 1;
    double residual = 0.0;       // max over states of |[Xi,Xj]psi - i g Gij psi| / |psi|
    double theta_measured = 0.0; // <psi|[Xi,Xj]|psi> / (i <psi|psi>), state average
};

struct NoncommReport {
    std::vector<NoncommPair> pairs;
    std::size_t n_states = 0;
};

NoncommReport verify_noncommutativity(GridPtr grid, const MomentumGaugeConfig& config,
                                      double g, const std::vector<StateVector>& states,
                                      double hbar = 1.0);

/// Unitary quarter rotation of phase space: R x R^-1 = p, R p R^-1 = -x.
///
/// Realized as the centered discrete Fourier rotation, which is exactly
/// unitary with R^2 = parity and R^4 = 1 on any centered grid.  The operator
/// exchange identity additionally needs the grid to be self-dual,
/// N * spacing^2 = 2*pi*hbar per axis.
class ReciprocityMap {
  public:
    explicit ReciprocityMap(GridPtr grid);

    StateVector apply(const StateVector& psi) const;
    StateVector apply_inverse(const StateVector& psi) const;
    const GridPtr& grid() const { return grid_; }

  private:
    GridPtr grid_;
    Eigen::MatrixXcd kernel_;  // per-axis centered DFT
};

ReciprocityMap reciprocity_map(GridPtr grid);

/// Half-extent making an N-point grid self-dual for the quarter rotation.
double self_dual_extent(int points, double hbar = 1.0);

}  // namespace momgauge
