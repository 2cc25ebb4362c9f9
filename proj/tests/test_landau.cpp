#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "momgauge/landau.hpp"

using namespace momgauge;

namespace {

OscillatorParams draw_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> span(0.5, 2.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    OscillatorParams p;
    p.m = span(rng);
    p.omega = span(rng);
    p.hbar = span(rng);
    p.e = unit(rng);
    p.g = unit(rng);
    p.B = unit(rng);
    p.Bm = unit(rng);
    return p;
}

struct Coefficients {
    double kin, pot, lambda;
};

Coefficients closed_form(const OscillatorParams& p) {
    const double gmwB = p.g * p.m * p.omega * p.Bm;
    return {1.0 + 0.25 * gmwB * gmwB,
            1.0 + (p.e * p.B) * (p.e * p.B) / (4.0 * p.m * p.m * p.omega * p.omega),
            -(p.e / (2.0 * p.m)) * p.B + 0.5 * p.g * p.m * p.omega * p.omega * p.Bm};
}

// Quadratic-form coefficients recovered from matrix elements of the assembled
// Hamiltonian in the bare reference basis (index n1*(n_max+1) + n2):
//   <00|H|00> = hbar w (kin + pot)/2
//   <20|H|00> = hbar w sqrt(2) (pot - kin)/4
//   <01|H|10> = i hbar lambda
Coefficients extracted(const HamiltonianMatrix& h) {
    const int dim = h.n_max + 1;
    const double hw = h.params.hbar * h.params.omega;
    double mean = std::real(h.mat(0, 0)) / hw;                      // (kin+pot)/2
    double half_diff = std::real(h.mat(2 * dim, 0)) / hw * 2.0 / std::sqrt(2.0);
    return {mean - half_diff, mean + half_diff,
            std::imag(h.mat(1, dim)) / h.params.hbar};
}

std::vector<double> analytic_energies(const OscillatorParams& p, std::size_t n) {
    std::vector<double> out;
    for (const auto& lv : analytic_spectrum(p, n)) out.push_back(lv.energy);
    return out;
}

}  // namespace

TEST_CASE("effective parameter closed forms") {
    OscillatorParams bare;
    CHECK(effective_params(bare).m_eff == doctest::Approx(1.0).epsilon(1e-14));

    OscillatorParams nc;  // g m w Bm = 2
    nc.g = 2.0;
    nc.Bm = 1.0;
    CHECK(std::abs(effective_params(nc).m_eff - 0.5) <= 1e-14);

    OscillatorParams fd;
    fd.e = 2.0;
    fd.B = 1.0;
    CHECK(std::abs(effective_params(fd).omega_eff - std::sqrt(2.0)) <= 1e-14);

    OscillatorParams mix;  // g1 = e/2m = 0.5, g2 = g m w^2 / 2 = 0.5
    mix.e = 1.0;
    mix.g = 1.0;
    mix.B = 0.3;
    mix.Bm = 0.7;
    CHECK(std::abs(effective_params(mix).cos_theta_mix - 1.0 / std::sqrt(2.0)) <= 1e-14);
}

TEST_CASE("no-coupling state is flagged, not NaN") {
    OscillatorParams p;
    p.B = 1.0;  // field without couplings
    EffectiveParams ep = effective_params(p);
    CHECK(ep.no_coupling);
    CHECK(ep.B_eff == 0.0);
    CHECK(ep.cos_theta_mix == 0.0);
    CHECK(std::isfinite(ep.omega_eff));
}

TEST_CASE("field-pair rotation is orthogonal") {
    std::mt19937 rng(7);
    for (int k = 0; k < 1000; ++k) {
        OscillatorParams p = draw_params(rng);
        EffectiveParams ep = effective_params(p);
        if (ep.no_coupling) continue;
        double lhs = ep.B_eff * ep.B_eff + ep.B_nc * ep.B_nc;
        double rhs = p.B * p.B + p.Bm * p.Bm;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
        CHECK(ep.cos_theta_mix >= 0.0);
        CHECK(ep.cos_theta_mix <= 1.0);
        // lambda is the rotated pair's first component times the coupling norm.
        double gn = std::hypot(ep.g1, ep.g2);
        CHECK(std::abs(ep.lz_coefficient - gn * ep.B_eff) <= 1e-12);
    }
}

TEST_CASE("effective mass drops strictly iff the momentum field couples") {
    std::mt19937 rng(11);
    for (int k = 0; k < 200; ++k) {
        OscillatorParams p = draw_params(rng);
        EffectiveParams ep = effective_params(p);
        if (p.g * p.Bm != 0.0)
            CHECK(ep.m_eff < p.m);
        else
            CHECK(ep.m_eff == p.m);
        CHECK(ep.omega_eff >= p.omega);
    }
}

TEST_CASE("parameter validation") {
    OscillatorParams p;
    p.m = 0.0;
    CHECK_THROWS_AS(effective_params(p), config_error);
    p.m = 1.0;
    p.omega = -1.0;
    CHECK_THROWS_AS(effective_params(p), config_error);
    p.omega = 1.0;
    p.B = std::nan("");
    CHECK_THROWS_AS(effective_params(p), config_error);
}

TEST_CASE("bare oscillator assembles diagonally in its own basis") {
    OscillatorParams p;
    HamiltonianMatrix h = assemble_fock_hamiltonian(p, 8);
    const int dim = 9;
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) {
            int k = n1 * dim + n2;
            CHECK(std::abs(h.mat(k, k) - Complex(n1 + n2 + 1.0, 0.0)) <= 1e-13);
        }
    Eigen::MatrixXcd off = h.mat;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() <= 1e-13);

    CHECK_THROWS_AS(assemble_fock_hamiltonian(p, 7), config_error);
}

TEST_CASE("assembled matrices are Hermitian to rounding") {
    OscillatorParams p;
    p.e = 1.0;
    p.B = 1.0;
    p.g = 0.4;
    p.Bm = 0.8;
    HamiltonianMatrix h = assemble_fock_hamiltonian(p, 12);
    double scale = h.mat.cwiseAbs().maxCoeff();
    CHECK((h.mat - h.mat.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("trace matches ladder expectation values") {
    OscillatorParams p;
    p.m = 1.3;
    p.omega = 0.7;
    p.hbar = 1.1;
    p.e = 0.9;
    p.B = -0.6;
    p.g = 0.5;
    p.Bm = 0.8;
    const int n_max = 10;
    HamiltonianMatrix h = assemble_fock_hamiltonian(p, n_max);
    Coefficients c = closed_form(p);

    // Per-mode reference expectation values <n|p^2|n> = hbar m w (2n+1)/2 and
    // <n|x^2|n> = hbar (2n+1)/(2 m w); the L_z part is traceless.
    double tr = 0.0;
    const int dim = n_max + 1;
    for (int n1 = 0; n1 < dim; ++n1)
        for (int n2 = 0; n2 < dim; ++n2) {
            double q = 2.0 * (n1 + n2) + 2.0;
            tr += c.kin / (2.0 * p.m) * p.hbar * p.m * p.omega * q / 2.0;
            tr += c.pot * p.m * p.omega * p.omega / 2.0 * p.hbar * q / (2.0 * p.m * p.omega);
        }
    CHECK(std::abs(std::real(h.mat.trace()) - tr) <= 1e-9 * std::abs(tr));
}

TEST_CASE("expansion coefficients match the closed forms over random draws") {
    std::mt19937 rng(23);
    for (int k = 0; k < 100; ++k) {
        OscillatorParams p = draw_params(rng);
        HamiltonianMatrix h = assemble_fock_hamiltonian(p, 8);
        Coefficients got = extracted(h);
        Coefficients want = closed_form(p);
        CHECK(std::abs(got.kin - want.kin) <= 1e-12 * std::max(1.0, std::abs(want.kin)));
        CHECK(std::abs(got.pot - want.pot) <= 1e-12 * std::max(1.0, std::abs(want.pot)));
        CHECK(std::abs(got.lambda - want.lambda) <= 1e-12);
    }
}

TEST_CASE("angular momentum factors commute across tensor slots") {
    // Flipping both field signs leaves kin and pot untouched and negates the
    // L_z coefficient, so the half difference isolates lambda * L_z; it must
    // equal the ladder-identity L_z exactly, either operator ordering.
    OscillatorParams p;
    p.e = 0.8;
    p.B = 1.0;
    p.g = 0.5;
    p.Bm = 0.7;
    OscillatorParams q = p;
    q.B = -q.B;
    q.Bm = -q.Bm;
    const int n_max = 8;
    Eigen::MatrixXcd half_diff =
        0.5 * (assemble_fock_hamiltonian(p, n_max).mat - assemble_fock_hamiltonian(q, n_max).mat);
    double lambda = closed_form(p).lambda;
    Eigen::MatrixXcd lz = lz_fock(n_max).mat;
    CHECK((half_diff - lambda * lz).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("diagonalize basics") {
    HamiltonianMatrix h;
    h.basis = HamiltonianMatrix::Basis::Grid;  // trusted = dim/8, params unused
    h.mat = Eigen::MatrixXcd::Zero(16, 16);
    for (int i = 2; i < 16; ++i) h.mat(i, i) = i + 2.0;  // 4 .. 17
    // Embedded symmetric 2x2 block in the first two slots: eigenvalues +-1.
    h.mat(0, 1) = 1.0;
    h.mat(1, 0) = 1.0;
    SpectrumResult res = diagonalize(h);
    REQUIRE(res.eigenvalues.size() == 16);
    CHECK(res.trusted_count == 2);
    CHECK(std::is_sorted(res.eigenvalues.begin(), res.eigenvalues.end()));
    CHECK(res.eigenvalues.front() == doctest::Approx(-1.0));
    CHECK(std::abs(res.eigenvalues[1] - 1.0) <= 1e-12);  // +1 from the block
    CHECK(res.eigenvalues.back() == doctest::Approx(17.0));

    h.mat(0, 1) = 2.0;  // break hermiticity
    CHECK_THROWS_AS(diagonalize(h), hermiticity_error);
}

TEST_CASE("analytic spectrum catalog values") {
    OscillatorParams bare;
    std::vector<double> e0 = analytic_energies(bare, 6);
    std::vector<double> want{1, 2, 2, 3, 3, 3};
    for (std::size_t k = 0; k < want.size(); ++k)
        CHECK(std::abs(e0[k] - want[k]) <= 1e-12);

    OscillatorParams fd;  // Fock-Darwin: eB = 1
    fd.e = 1.0;
    fd.B = 1.0;
    std::vector<AnalyticLevel> lv = analytic_spectrum(fd, 4);
    CHECK(std::abs(lv[0].energy - 1.1180340) <= 1e-7);
    bool found = false;
    for (const auto& l : lv)
        if (l.n_r == 0 && l.m_z == 1) {
            found = true;
            CHECK(std::abs(l.energy - 1.7360680) <= 1e-7);
        }
    CHECK(found);

    OscillatorParams unbounded;  // |lambda| = omega_eff = 2
    unbounded.e = 2.0;
    unbounded.B = 1.0;
    unbounded.g = -2.0;
    unbounded.Bm = 1.0;
    CHECK_THROWS_AS(analytic_spectrum(unbounded, 4), config_error);
}

TEST_CASE("analytic duality pairs coincide level by level") {
    auto pair_params = [](double a, double b) {
        OscillatorParams p;
        p.e = a;
        p.B = 1.0;
        p.g = b;
        p.Bm = 1.0;
        return p;
    };
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.7, 0.3}, {0.2, 0.9}}) {
        std::vector<double> fwd = analytic_energies(pair_params(a, b), 40);
        std::vector<double> dual = analytic_energies(pair_params(-b, -a), 40);
        for (std::size_t k = 0; k < fwd.size(); ++k)
            CHECK(std::abs(fwd[k] - dual[k]) <= 1e-12);
    }
}

TEST_CASE("fock spectrum matches the closed form on trusted levels") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < 3; ++k) {
        OscillatorParams p;
        p.e = unit(rng);
        p.B = 1.0;
        p.g = unit(rng);
        p.Bm = 1.0;
        SpectrumResult num = diagonalize(assemble_fock_hamiltonian(p, 24));
        REQUIRE(num.trusted_count > 0);
        std::vector<double> exact = analytic_energies(p, num.trusted_count);
        for (std::size_t i = 0; i < num.trusted_count; ++i)
            CHECK(std::abs(num.eigenvalues[i] - exact[i]) <= 1e-8);
    }
}

TEST_CASE("single-field limits agree with the diagonalization oracle") {
    OscillatorParams fd;  // ordinary Landau limit
    fd.e = 1.0;
    fd.B = 1.0;
    OscillatorParams dual;  // momentum-Landau limit
    dual.g = 1.0;
    dual.Bm = 1.0;
    for (const auto& p : {fd, dual}) {
        SpectrumResult num = diagonalize(assemble_fock_hamiltonian(p, 24));
        std::vector<double> exact = analytic_energies(p, num.trusted_count);
        for (std::size_t i = 0; i < num.trusted_count; ++i)
            CHECK(std::abs(num.eigenvalues[i] - exact[i]) <= 1e-8);
    }
}

TEST_CASE("grid assembly reproduces the oscillator tower") {
    GridPtr grid = make_grid(2, 32, 8.0);
    OscillatorParams bare;
    SpectrumResult res = diagonalize(assemble_grid_hamiltonian(grid, bare));
    CHECK(std::abs(res.eigenvalues[0] - 1.0) <= 1e-6);
    // Degeneracy pattern 1, 2, 3 of the lowest shells.
    std::array<int, 3> counts{};
    for (double e : res.eigenvalues)
        for (int s = 0; s < 3; ++s)
            if (std::abs(e - (s + 1.0)) < 1e-3) ++counts[s];
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 2);
    CHECK(counts[2] == 3);
}

TEST_CASE("grid and fock bases agree for the gauged oscillator") {
    OscillatorParams p;
    p.e = 1.0;
    p.B = 1.0;
    GridPtr grid = make_grid(2, 32, 8.0);
    SpectrumResult onGrid = diagonalize(assemble_grid_hamiltonian(grid, p));
    std::vector<double> exact = analytic_energies(p, 5);
    SpectrumResult inFock = diagonalize(assemble_fock_hamiltonian(p, 24));
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(std::abs(onGrid.eigenvalues[i] - exact[i]) <= 1e-5);
        CHECK(std::abs(onGrid.eigenvalues[i] - inFock.eigenvalues[i]) <= 1e-4);
    }
}

TEST_CASE("grid assembly validation") {
    OscillatorParams p;
    CHECK_THROWS_AS(assemble_grid_hamiltonian(make_grid(1, 32, 8.0), p), config_error);
    CHECK_THROWS_AS(assemble_grid_hamiltonian(make_grid(2, 64, 8.0), p), config_error);
}

TEST_CASE("angular momentum in the truncated fock basis") {
    HamiltonianMatrix lz1 = lz_fock(1);
    SpectrumResult res = diagonalize(lz1);
    REQUIRE(res.eigenvalues.size() == 4);
    std::vector<double> want{-1.0, 0.0, 0.0, 1.0};
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::abs(res.eigenvalues[k] - want[k]) <= 1e-13);

    const int n_max = 8;
    Eigen::MatrixXcd lz = lz_fock(n_max, 0.7).mat;
    CHECK((lz - lz.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(std::abs(lz.trace()) == 0.0);

    // Rotational symmetry of the bare oscillator: exact commutation, since
    // L_z conserves the total quantum number the truncation is sliced by.
    OscillatorParams bare;
    Eigen::MatrixXcd h0 = assemble_fock_hamiltonian(bare, n_max).mat;
    Eigen::MatrixXcd lz_unit = lz_fock(n_max).mat;
    CHECK((h0 * lz_unit - lz_unit * h0).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("reciprocity duality of the double gauged oscillator") {
    CHECK(reciprocity_duality_check(0.0, 0.0, 12).max_discrepancy == 0.0);
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.7, 0.3}}) {
        DualityReport rep = reciprocity_duality_check(a, b, 16);
        CHECK(rep.levels_compared > 0);
        CHECK(rep.max_discrepancy <= 1e-8);
    }
}
