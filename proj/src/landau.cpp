#include "momgauge/landau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace momgauge {

namespace {

void validate(const OscillatorParams& p) {
    if (!(p.m > 0.0) || !(p.omega > 0.0) || !(p.hbar > 0.0))
        throw config_error("oscillator params: m, omega, hbar must be > 0");
    for (double v : {p.m, p.omega, p.e, p.g, p.B, p.Bm, p.hbar})
        if (!std::isfinite(v)) throw config_error("oscillator params: non-finite value");
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Single-mode annihilation operator truncated at n_max quanta.
Eigen::MatrixXcd ladder(int n_max) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

// Quadratic-form coefficients of the expanded Hamiltonian:
//   H = kin/(2m) (px^2+py^2) + pot * (m w^2/2) (x^2+y^2) + lambda * L_z
struct Coefficients {
    double kin;
    double pot;
    double lambda;
};

Coefficients expansion_coefficients(const OscillatorParams& p) {
    const double gmwB = p.g * p.m * p.omega * p.Bm;
    const double g1 = p.e / (2.0 * p.m);
    const double g2 = 0.5 * p.g * p.m * p.omega * p.omega;
    return {1.0 + 0.25 * gmwB * gmwB,
            1.0 + (p.e * p.B) * (p.e * p.B) / (4.0 * p.m * p.m * p.omega * p.omega),
            -g1 * p.B + g2 * p.Bm};
}

}  // namespace

EffectiveParams effective_params(const OscillatorParams& params) {
    validate(params);
    auto [kin, pot, lambda] = expansion_coefficients(params);
    EffectiveParams ep;
    ep.g1 = params.e / (2.0 * params.m);
    ep.g2 = 0.5 * params.g * params.m * params.omega * params.omega;
    ep.m_eff = params.m / kin;
    ep.omega_eff = params.omega * std::sqrt(kin * pot);
    ep.lz_coefficient = lambda;
    const double gn = std::hypot(ep.g1, ep.g2);
    if (gn == 0.0) {
        ep.no_coupling = true;
    } else {
        ep.B_eff = (-ep.g1 * params.B + ep.g2 * params.Bm) / gn;
        ep.B_nc = (ep.g1 * params.Bm + ep.g2 * params.B) / gn;
        ep.cos_theta_mix = std::abs(ep.g1) / gn;
    }
    return ep;
}

HamiltonianMatrix assemble_fock_hamiltonian(const OscillatorParams& params, int n_max,
                                            std::optional<std::pair<double, double>> reference) {
    validate(params);
    if (n_max < 8) throw config_error("fock assembly: n_max must be >= 8");
    const double m_ref = reference ? reference->first : params.m;
    const double w_ref = reference ? reference->second : params.omega;
    if (!(m_ref > 0.0) || !(w_ref > 0.0))
        throw config_error("fock assembly: reference oscillator must be positive");

    // Form x and p on a padded ladder, square there, and only then cut back to
    // n_max quanta per mode.  Squaring the already-truncated matrices would
    // drop the virtual path through n_max + 1 and corrupt the top-edge entries
    // of x^2 and p^2.
    const int dim = n_max + 1;
    const Eigen::MatrixXcd a = ladder(n_max + 2);
    const Eigen::MatrixXcd ad = a.adjoint();
    const double hbar = params.hbar;
    const Complex im(0.0, 1.0);
    const Eigen::MatrixXcd x_pad = std::sqrt(hbar / (2.0 * m_ref * w_ref)) * (a + ad);
    const Eigen::MatrixXcd p_pad = im * std::sqrt(hbar * m_ref * w_ref / 2.0) * (ad - a);
    const Eigen::MatrixXcd x1 = x_pad.topLeftCorner(dim, dim);
    const Eigen::MatrixXcd p1 = p_pad.topLeftCorner(dim, dim);
    const Eigen::MatrixXcd x2 = (x_pad * x_pad).topLeftCorner(dim, dim);
    const Eigen::MatrixXcd p2 = (p_pad * p_pad).topLeftCorner(dim, dim);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);

    auto [kin, pot, lambda] = expansion_coefficients(params);
    Eigen::MatrixXcd h =
        (kin / (2.0 * params.m)) * (kron(p2, id) + kron(id, p2)) +
        (pot * params.m * params.omega * params.omega / 2.0) * (kron(x2, id) + kron(id, x2)) +
        lambda * (kron(x1, p1) - kron(p1, x1));

    HamiltonianMatrix out;
    out.basis = HamiltonianMatrix::Basis::Fock;
    out.n_max = n_max;
    out.mat = std::move(h);
    out.params = params;
    return out;
}

HamiltonianMatrix assemble_grid_hamiltonian(GridPtr grid, const OscillatorParams& params) {
    validate(params);
    if (grid->dims != 2) throw config_error("grid assembly: need a 2D grid");
    if (grid->points[0] > 48 || grid->points[1] > 48)
        throw config_error("grid assembly: dense budget is 48 points per axis");

    const std::size_t dim = grid->size();
    LinearOperator xop0 = position_operator(grid, 0, params.hbar);
    LinearOperator xop1 = position_operator(grid, 1, params.hbar);

    // Materialize x1, x2 as dense matrices by applying to basis columns.
    Eigen::MatrixXcd x1(dim, dim), x2(dim, dim);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        e(k) = 1.0;
        x1.col(k) = xop0.apply_fn(e);
        x2.col(k) = xop1.apply_fn(e);
        e(k) = 0.0;
    }
    Eigen::VectorXcd px(dim), py(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        Vec3 p = grid->node(k);
        px(k) = p.x();
        py(k) = p.y();
    }

    auto [kin, pot, lambda] = expansion_coefficients(params);
    Eigen::MatrixXcd h =
        (pot * params.m * params.omega * params.omega / 2.0) * (x1 * x1 + x2 * x2);
    h += (kin / (2.0 * params.m)) *
         (Eigen::MatrixXcd(px.cwiseAbs2().asDiagonal()) +
          Eigen::MatrixXcd(py.cwiseAbs2().asDiagonal()));
    // L_z = x1 p_y - x2 p_x; the factors commute, so right multiplication by
    // the diagonal momenta is exact.
    h += lambda * (x1 * py.asDiagonal() - x2 * px.asDiagonal());

    HamiltonianMatrix out;
    out.basis = HamiltonianMatrix::Basis::Grid;
    out.grid = std::move(grid);
    out.mat = std::move(h);
    out.params = params;
    return out;
}

SpectrumResult diagonalize(const HamiltonianMatrix& h) {
    const double scale = std::max(1e-300, h.mat.cwiseAbs().maxCoeff());
    const double herm = (h.mat - h.mat.adjoint()).cwiseAbs().maxCoeff() / scale;
    if (herm > 1e-8) throw hermiticity_error("diagonalize: matrix is not Hermitian");

    Eigen::MatrixXcd sym = 0.5 * (h.mat + h.mat.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("diagonalize: eigensolver failed");

    SpectrumResult res;
    res.basis = h.basis;
    res.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(res.eigenvalues.begin(), res.eigenvalues.end());
    const std::size_t dim = res.eigenvalues.size();
    if (h.basis == HamiltonianMatrix::Basis::Fock) {
        // The lowest quarter is the ceiling, but truncation contamination can
        // reach deeper when the L_z coupling softens one circular mode: a level
        // at energy E needs total quanta up to (E - hbar*w_eff)/(hbar*w_minus),
        // and states near n_max quanta per mode are corrupted.  Trust only
        // levels whose circular occupations stay within two thirds of n_max.
        EffectiveParams ep = effective_params(h.params);
        const double w_plus = ep.omega_eff + std::abs(ep.lz_coefficient);
        const double w_minus = ep.omega_eff - std::abs(ep.lz_coefficient);
        const double budget = w_minus * (2.0 * h.n_max / 3.0);
        std::size_t safe = 0;
        if (w_minus > 0.0) {
            for (int np = 0; w_plus * np <= budget; ++np)
                safe += static_cast<std::size_t>((budget - w_plus * np) / w_minus) + 1;
        } else {
            safe = 1;
        }
        res.trusted_count = std::min(dim / 4, safe);
    } else {
        res.trusted_count = dim / 8;
    }
    return res;
}

std::vector<AnalyticLevel> analytic_spectrum(const OscillatorParams& params,
                                             std::size_t max_energy_levels) {
    EffectiveParams ep = effective_params(params);
    const double w = ep.omega_eff;
    const double lam = ep.lz_coefficient;
    const double hbar = params.hbar;
    if (std::abs(lam) >= w)
        throw config_error("analytic spectrum: unbounded below (|lambda| >= omega_eff)");

    std::vector<AnalyticLevel> levels;
    // Enumerate rings Q = 2 n_r + |m_z| until the cheapest remaining level
    // exceeds the current cut.
    for (int q = 0;; ++q) {
        for (int mz = -q; mz <= q; ++mz) {
            int rem = q - std::abs(mz);
            if (rem % 2 != 0) continue;
            int nr = rem / 2;
            levels.push_back({nr, mz, hbar * (w * (q + 1) + lam * mz)});
        }
        std::sort(levels.begin(), levels.end(), [](const AnalyticLevel& a, const AnalyticLevel& b) {
            return std::tuple(a.energy, std::abs(a.m_z), a.m_z, a.n_r) <
                   std::tuple(b.energy, std::abs(b.m_z), b.m_z, b.n_r);
        });
        if (levels.size() >= max_energy_levels) {
            double floor_next = hbar * (w * (q + 2) - std::abs(lam) * (q + 1));
            if (floor_next > levels[max_energy_levels - 1].energy) break;
        }
    }
    levels.resize(max_energy_levels);
    return levels;
}

HamiltonianMatrix lz_fock(int n_max, double hbar) {
    if (n_max < 1) throw config_error("lz: n_max must be >= 1");
    const Eigen::MatrixXcd a = ladder(n_max);
    const Eigen::MatrixXcd ad = a.adjoint();
    const Complex im(0.0, 1.0);
    HamiltonianMatrix out;
    out.basis = HamiltonianMatrix::Basis::Fock;
    out.n_max = n_max;
    out.mat = im * hbar * (kron(a, ad) - kron(ad, a));
    return out;
}

DualityReport reciprocity_duality_check(double a, double b, int n_max) {
    OscillatorParams fwd;
    fwd.e = a;
    fwd.B = 1.0;
    fwd.g = b;
    fwd.Bm = 1.0;
    OscillatorParams dual;
    dual.e = -b;
    dual.B = 1.0;
    dual.g = -a;
    dual.Bm = 1.0;

    SpectrumResult s1 = diagonalize(assemble_fock_hamiltonian(fwd, n_max));
    SpectrumResult s2 = diagonalize(assemble_fock_hamiltonian(dual, n_max));
    DualityReport rep;
    rep.levels_compared = std::min(s1.trusted_count, s2.trusted_count);
    for (std::size_t k = 0; k < rep.levels_compared; ++k)
        rep.max_discrepancy =
            std::max(rep.max_discrepancy, std::abs(s1.eigenvalues[k] - s2.eigenvalues[k]));
    return rep;
}

}  // namespace momgauge
