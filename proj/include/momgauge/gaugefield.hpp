#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "momgauge/errors.hpp"

namespace momgauge {

using Vec3 = Eigen::Vector3d;

// Catalog of momentum gauge field configurations C_mu(p).
//
// Components are stored contravariant: C^0, C^1, C^2, C^3 as functions of
// the contravariant 3-momentum.  Field strength convention (fixed once for
// the whole project):
//
//   spatial block:  G_ij  = dC^i/dp^j - dC^j/dp^i
//   mixed block:    G_0i  = -dC^0/dp^i          (static configs)
//
// so the momentum "magnetic" field is the plain curl of the spatial C
// (B_k = eps_kij dC^j/dp^i, equivalently G_ij = -eps_ijk B_k) and the
// momentum "electric" field is E_i = G_0i = -grad_i C^0.

/// Uniform momentum magnetic field: C = (1/2) B x p.
struct ConstantMagnetic {
    Vec3 field;  // B
};

/// Uniform momentum electric field: C^0 = -E . p, spatial C = 0.
struct ConstantElectric {
    Vec3 field;  // E
};

/// 2D symmetric gauge: C_1 = -(1/2) B p_y, C_2 = (1/2) B p_x.
struct SymmetricGauge2D {
    double field;  // B, along z
};

/// Two like-sign charge sheets at p_z = +-p_a; field plateaus outside.
struct CapacitorStack {
    double sigma;  // sheet strength
    double pa;     // sheet position, > 0
};

/// Two y-directed current sheets at p_z = +-p_a; B_x plateaus outside.
struct CurrentSheets {
    double current;  // J
    double pa;       // sheet position, > 0
};

/// Point source at p = 0: C^0 = g_c / |p|.
struct CoulombMomentum {
    double charge;  // g_c
};

/// Arbitrary user-supplied components; derivatives taken numerically.
struct CustomConfig {
    std::array<std::function<double(const Vec3&)>, 4> component;
};

using MomentumGaugeConfig =
    std::variant<ConstantMagnetic, ConstantElectric, SymmetricGauge2D,
                 CapacitorStack, CurrentSheets, CoulombMomentum, CustomConfig>;

/// Ordinary (position-space) gauge configurations used by the Landau sector.
struct OrdinaryGaugeConfig {
    enum class Kind { Zero, SymmetricGauge2D };
    Kind kind = Kind::Zero;
    double field = 0.0;  // B, along z
};

/// Polynomial gauge function eta(p), degree <= 4, with closed-form gradient.
class GaugeTransform {
  public:
    struct Monomial {
        double coeff;
        std::array<int, 3> powers;  // exponents of p_x, p_y, p_z
    };

    GaugeTransform() = default;
    explicit GaugeTransform(std::vector<Monomial> terms);

    double eval(const Vec3& p) const;
    Vec3 gradient(const Vec3& p) const;

    const std::vector<Monomial>& terms() const { return terms_; }

  private:
    std::vector<Monomial> terms_;
};

/// Antisymmetric field strength sampled at one momentum point.
struct FieldStrengthSample {
    Vec3 p;
    Eigen::Matrix4d g;  // G_{mu nu}, antisymmetric by construction
};

/// Evaluate (C^0, C^1, C^2, C^3) at p.  Throws singular_error on the
/// configuration's singular set (Coulomb at p = 0).
std::array<double, 4> eval_c(const MomentumGaugeConfig& config, const Vec3& p);

/// Field strength at p; closed forms for cataloged variants, five-point
/// central differences (step 1e-3 * max(1,|p|), exact through degree-4
/// polynomials) for CustomConfig.
FieldStrengthSample field_strength(const MomentumGaugeConfig& config, const Vec3& p);

/// Momentum "magnetic" field, the curl of the spatial C.
Vec3 momentum_magnetic(const MomentumGaugeConfig& config, const Vec3& p);

/// Momentum "electric" field E_i = G_0i.
Vec3 momentum_electric(const MomentumGaugeConfig& config, const Vec3& p);

/// Gauge-shift the spatial components: C_i' = C_i + (1/g) d(eta)/dp_i.
/// C^0 is unchanged.  Throws config_error when g = 0.
MomentumGaugeConfig apply_gauge_transform(const MomentumGaugeConfig& config,
                                          const GaugeTransform& eta, double g);

/// One constant region of a sampled piecewise map.
struct Plateau {
    double value;
    std::size_t first;  // node index range [first, last]
    std::size_t last;
};

/// Theta_{mu nu}(p) = g G_{mu nu}(p) sampled on supplied nodes.
struct ThetaMapResult {
    std::vector<Vec3> nodes;
    std::vector<Eigen::Matrix4d> theta;
    // For piecewise variants: the monitored component and its plateaus.
    int comp_mu = -1;
    int comp_nu = -1;
    std::vector<Plateau> plateaus;
    std::vector<std::size_t> transition_nodes;  // first index of each new plateau
};

ThetaMapResult theta_map(const MomentumGaugeConfig& config, double g,
                         const std::vector<Vec3>& nodes);

}  // namespace momgauge
