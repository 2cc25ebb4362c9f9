#include "momgauge/gaugefield.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace momgauge {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double sheet_envelope(double pz, double pa) {
    // Even, zero at the origin, kinked at +-pa: max(|pz| - pa, 0).
    return std::max(std::abs(pz) - pa, 0.0);
}

// Plateau field of two like-sign sheets at +-pa: sgn(pz) * 4*pi*S outside,
// zero strictly between.  Points exactly on a sheet take the outer value.
double sheet_plateau(double pz, double pa, double strength) {
    if (std::abs(pz) < pa) return 0.0;
    return (pz >= 0.0 ? 1.0 : -1.0) * kFourPi * strength;
}

void check_pa(double pa, const char* variant) {
    if (!(pa > 0.0)) throw config_error(std::string(variant) + ": p_a must be > 0");
}

}  // namespace

GaugeTransform::GaugeTransform(std::vector<Monomial> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (!std::isfinite(t.coeff)) throw config_error("gauge transform: non-finite coefficient");
        int deg = t.powers[0] + t.powers[1] + t.powers[2];
        if (deg < 0 || deg > 4 || t.powers[0] < 0 || t.powers[1] < 0 || t.powers[2] < 0)
            throw config_error("gauge transform: monomial degree must be in [0, 4]");
    }
}

double GaugeTransform::eval(const Vec3& p) const {
    double v = 0.0;
    for (const auto& t : terms_) {
        v += t.coeff * std::pow(p.x(), t.powers[0]) * std::pow(p.y(), t.powers[1]) *
             std::pow(p.z(), t.powers[2]);
    }
    return v;
}

Vec3 GaugeTransform::gradient(const Vec3& p) const {
    Vec3 g = Vec3::Zero();
    for (const auto& t : terms_) {
        for (int axis = 0; axis < 3; ++axis) {
            if (t.powers[axis] == 0) continue;
            double d = t.coeff * t.powers[axis];
            for (int k = 0; k < 3; ++k) {
                int pw = t.powers[k] - (k == axis ? 1 : 0);
                d *= std::pow(p[k], pw);
            }
            g[axis] += d;
        }
    }
    return g;
}

std::array<double, 4> eval_c(const MomentumGaugeConfig& config, const Vec3& p) {
    return std::visit(
        [&p](const auto& c) -> std::array<double, 4> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantMagnetic>) {
                Vec3 s = 0.5 * c.field.cross(p);
                return {0.0, s.x(), s.y(), s.z()};
            } else if constexpr (std::is_same_v<T, ConstantElectric>) {
                return {-c.field.dot(p), 0.0, 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, SymmetricGauge2D>) {
                return {0.0, -0.5 * c.field * p.y(), 0.5 * c.field * p.x(), 0.0};
            } else if constexpr (std::is_same_v<T, CapacitorStack>) {
                check_pa(c.pa, "capacitor");
                return {-kFourPi * c.sigma * sheet_envelope(p.z(), c.pa), 0.0, 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, CurrentSheets>) {
                check_pa(c.pa, "sheets");
                return {0.0, 0.0, -kFourPi * c.current * sheet_envelope(p.z(), c.pa), 0.0};
            } else if constexpr (std::is_same_v<T, CoulombMomentum>) {
                double r = p.norm();
                if (r < 1e-300) throw singular_error("coulomb config evaluated at p = 0");
                return {c.charge / r, 0.0, 0.0, 0.0};
            } else {
                static_assert(std::is_same_v<T, CustomConfig>);
                std::array<double, 4> out{};
                for (int mu = 0; mu < 4; ++mu)
                    out[mu] = c.component[mu] ? c.component[mu](p) : 0.0;
                return out;
            }
        },
        config);
}

namespace {

Eigen::Matrix4d custom_field_strength(const MomentumGaugeConfig& config, const Vec3& p) {
    const double h = 1e-3 * std::max(1.0, p.norm());
    // d[mu][axis] = dC^mu/dp_axis by five-point central differences.  The
    // fourth-order stencil is exact on polynomials through degree 4, so pure
    // gauge contributions from any admissible transform cancel to rounding.
    double d[4][3];
    for (int axis = 0; axis < 3; ++axis) {
        auto at = [&](double step) {
            Vec3 q = p;
            q[axis] += step;
            return eval_c(config, q);
        };
        auto cp2 = at(2.0 * h), cp1 = at(h), cm1 = at(-h), cm2 = at(-2.0 * h);
        for (int mu = 0; mu < 4; ++mu)
            d[mu][axis] = (-cp2[mu] + 8.0 * cp1[mu] - 8.0 * cm1[mu] + cm2[mu]) / (12.0 * h);
    }
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    for (int i = 1; i <= 3; ++i) {
        g(0, i) = -d[0][i - 1];
        g(i, 0) = -g(0, i);
        for (int j = i + 1; j <= 3; ++j) {
            g(i, j) = d[i][j - 1] - d[j][i - 1];
            g(j, i) = -g(i, j);
        }
    }
    return g;
}

Eigen::Matrix4d from_fields(const Vec3& bfield, const Vec3& efield) {
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    for (int i = 1; i <= 3; ++i) {
        g(0, i) = efield[i - 1];
        g(i, 0) = -efield[i - 1];
    }
    // G_ij = -eps_ijk B_k
    g(1, 2) = -bfield.z();
    g(2, 1) = bfield.z();
    g(2, 3) = -bfield.x();
    g(3, 2) = bfield.x();
    g(3, 1) = -bfield.y();
    g(1, 3) = bfield.y();
    return g;
}

}  // namespace

FieldStrengthSample field_strength(const MomentumGaugeConfig& config, const Vec3& p) {
    Eigen::Matrix4d g = std::visit(
        [&](const auto& c) -> Eigen::Matrix4d {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantMagnetic>) {
                return from_fields(c.field, Vec3::Zero());
            } else if constexpr (std::is_same_v<T, ConstantElectric>) {
                return from_fields(Vec3::Zero(), c.field);
            } else if constexpr (std::is_same_v<T, SymmetricGauge2D>) {
                return from_fields(Vec3(0, 0, c.field), Vec3::Zero());
            } else if constexpr (std::is_same_v<T, CapacitorStack>) {
                check_pa(c.pa, "capacitor");
                return from_fields(Vec3::Zero(),
                                   Vec3(0, 0, sheet_plateau(p.z(), c.pa, c.sigma)));
            } else if constexpr (std::is_same_v<T, CurrentSheets>) {
                check_pa(c.pa, "sheets");
                return from_fields(Vec3(sheet_plateau(p.z(), c.pa, c.current), 0, 0),
                                   Vec3::Zero());
            } else if constexpr (std::is_same_v<T, CoulombMomentum>) {
                double r = p.norm();
                if (r < 1e-300) throw singular_error("coulomb config evaluated at p = 0");
                return from_fields(Vec3::Zero(), c.charge * p / (r * r * r));
            } else {
                return custom_field_strength(config, p);
            }
        },
        config);
    return {p, g};
}

Vec3 momentum_magnetic(const MomentumGaugeConfig& config, const Vec3& p) {
    Eigen::Matrix4d g = field_strength(config, p).g;
    return Vec3(-g(2, 3), -g(3, 1), -g(1, 2));
}

Vec3 momentum_electric(const MomentumGaugeConfig& config, const Vec3& p) {
    Eigen::Matrix4d g = field_strength(config, p).g;
    return Vec3(g(0, 1), g(0, 2), g(0, 3));
}

MomentumGaugeConfig apply_gauge_transform(const MomentumGaugeConfig& config,
                                          const GaugeTransform& eta, double g) {
    if (g == 0.0) throw config_error("gauge transform requires g != 0");
    CustomConfig out;
    auto base = std::make_shared<MomentumGaugeConfig>(config);
    out.component[0] = [base](const Vec3& p) { return eval_c(*base, p)[0]; };
    for (int i = 1; i <= 3; ++i) {
        out.component[i] = [base, eta, g, i](const Vec3& p) {
            return eval_c(*base, p)[i] + eta.gradient(p)[i - 1] / g;
        };
    }
    return out;
}

ThetaMapResult theta_map(const MomentumGaugeConfig& config, double g,
                         const std::vector<Vec3>& nodes) {
    ThetaMapResult res;
    res.nodes = nodes;
    res.theta.reserve(nodes.size());
    for (const auto& p : nodes) res.theta.push_back(g * field_strength(config, p).g);

    // Plateau detection applies to the piecewise variants, monitored along
    // the sampled ordering of the nodes.
    if (std::holds_alternative<CapacitorStack>(config)) {
        res.comp_mu = 0;
        res.comp_nu = 3;
    } else if (std::holds_alternative<CurrentSheets>(config)) {
        res.comp_mu = 2;
        res.comp_nu = 3;
    } else {
        return res;
    }

    double scale = 0.0;
    for (const auto& th : res.theta)
        scale = std::max(scale, std::abs(th(res.comp_mu, res.comp_nu)));
    const double tol = 1e-9 * std::max(1.0, scale);

    for (std::size_t k = 0; k < res.theta.size(); ++k) {
        double v = res.theta[k](res.comp_mu, res.comp_nu);
        if (res.plateaus.empty() || std::abs(v - res.plateaus.back().value) > tol) {
            res.plateaus.push_back({v, k, k});
            if (k > 0) res.transition_nodes.push_back(k);
        } else {
            res.plateaus.back().last = k;
        }
    }
    return res;
}

}  // namespace momgauge
