#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "momgauge/errors.hpp"
#include "momgauge/grid.hpp"

namespace momgauge {

/// Inputs of the doubly gauged harmonic oscillator.  B is the ordinary
/// magnetic field, Bm the momentum "magnetic" field, both along z.
struct OscillatorParams {
    double m = 1.0;
    double omega = 1.0;
    double e = 0.0;
    double g = 0.0;
    double B = 0.0;
    double Bm = 0.0;
    double hbar = 1.0;
};

/// Derived couplings.  lz_coefficient = -g1*B + g2*Bm multiplies L_z in the
/// expanded Hamiltonian and equals sqrt(g1^2+g2^2)*B_eff whenever the
/// couplings do not both vanish.
struct EffectiveParams {
    double g1 = 0.0;          // e / (2m)
    double g2 = 0.0;          // g m omega^2 / 2
    double m_eff = 0.0;
    double omega_eff = 0.0;
    double lz_coefficient = 0.0;
    bool no_coupling = false; // g1 = g2 = 0: the rotated pair is undefined
    double B_eff = 0.0;
    double B_nc = 0.0;
    double cos_theta_mix = 0.0;
};

EffectiveParams effective_params(const OscillatorParams& params);

struct HamiltonianMatrix {
    enum class Basis { Fock, Grid };
    Basis basis = Basis::Fock;
    int n_max = 0;            // Fock only: quanta per mode
    GridPtr grid;             // Grid only
    Eigen::MatrixXcd mat;
    OscillatorParams params;
};

/// Expanded two-mode Hamiltonian in the truncated Fock basis of a reference
/// oscillator (default: the bare m, omega).  The z sector is dropped.
HamiltonianMatrix assemble_fock_hamiltonian(
    const OscillatorParams& params, int n_max,
    std::optional<std::pair<double, double>> reference = std::nullopt);

/// Same Hamiltonian discretized on a 2D momentum grid (dense; points <= 48).
HamiltonianMatrix assemble_grid_hamiltonian(GridPtr grid, const OscillatorParams& params);

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    std::size_t trusted_count = 0;    // levels below truncation contamination
    HamiltonianMatrix::Basis basis = HamiltonianMatrix::Basis::Fock;
};

/// Dense Hermitian eigensolve.  Refuses matrices whose hermiticity residual
/// exceeds 1e-8 relative.  For the Fock basis, trusted_count caps at a
/// quarter of the dimension and shrinks further when the L_z coupling makes
/// high-angular-momentum levels reach the per-mode truncation.
SpectrumResult diagonalize(const HamiltonianMatrix& h);

struct AnalyticLevel {
    int n_r = 0;
    int m_z = 0;
    double energy = 0.0;
};

/// Closed-form levels E = hbar*omega_eff*(2 n_r + |m_z| + 1) + hbar*lambda*m_z,
/// ascending; ties broken by (|m_z|, m_z, n_r).
std::vector<AnalyticLevel> analytic_spectrum(const OscillatorParams& params,
                                             std::size_t max_energy_levels);

/// L_z = i*hbar (a1 a2^dag - a2 a1^dag) in the truncated Fock basis.
HamiltonianMatrix lz_fock(int n_max, double hbar = 1.0);

struct DualityReport {
    double max_discrepancy = 0.0;
    std::size_t levels_compared = 0;
};

/// Spectra of H(eB=a, gBm=b) and H(eB=-b, gBm=-a) at m = omega = hbar = 1
/// agree on trusted levels under the position/momentum exchange.
DualityReport reciprocity_duality_check(double a, double b, int n_max);

}  // namespace momgauge
