#include "momgauge/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "momgauge/fieldsolve.hpp"
#include "momgauge/gaugefield.hpp"
#include "momgauge/grid.hpp"
#include "momgauge/landau.hpp"

namespace momgauge::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "v1";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

MomentumGaugeConfig config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant") || !j.contains("params"))
        throw config_error("config json: expected {\"variant\": ..., \"params\": {...}}");
    const std::string variant = j.at("variant").get<std::string>();
    const json& p = j.at("params");
    auto vec3 = [](const json& arr) {
        if (!arr.is_array() || arr.size() != 3)
            throw config_error("config json: expected a 3-component array");
        return Vec3(arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>());
    };
    if (variant == "constant_magnetic") return ConstantMagnetic{vec3(p.at("B"))};
    if (variant == "constant_electric") return ConstantElectric{vec3(p.at("E"))};
    if (variant == "symmetric2d") return SymmetricGauge2D{p.at("B").get<double>()};
    if (variant == "capacitor")
        return CapacitorStack{p.at("sigma").get<double>(), p.at("pa").get<double>()};
    if (variant == "sheets")
        return CurrentSheets{p.at("j").get<double>(), p.at("pa").get<double>()};
    if (variant == "coulomb") return CoulombMomentum{p.at("gc").get<double>()};
    throw config_error("config json: unknown variant '" + variant + "'");
}

json config_to_json(const MomentumGaugeConfig& config) {
    json j;
    std::visit(
        [&j](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstantMagnetic>) {
                j = {{"variant", "constant_magnetic"},
                     {"params", {{"B", {c.field.x(), c.field.y(), c.field.z()}}}}};
            } else if constexpr (std::is_same_v<T, ConstantElectric>) {
                j = {{"variant", "constant_electric"},
                     {"params", {{"E", {c.field.x(), c.field.y(), c.field.z()}}}}};
            } else if constexpr (std::is_same_v<T, SymmetricGauge2D>) {
                j = {{"variant", "symmetric2d"}, {"params", {{"B", c.field}}}};
            } else if constexpr (std::is_same_v<T, CapacitorStack>) {
                j = {{"variant", "capacitor"}, {"params", {{"sigma", c.sigma}, {"pa", c.pa}}}};
            } else if constexpr (std::is_same_v<T, CurrentSheets>) {
                j = {{"variant", "sheets"}, {"params", {{"j", c.current}, {"pa", c.pa}}}};
            } else if constexpr (std::is_same_v<T, CoulombMomentum>) {
                j = {{"variant", "coulomb"}, {"params", {{"gc", c.charge}}}};
            } else {
                j = {{"variant", "custom"}, {"params", json::object()}};
            }
        },
        config);
    return j;
}

json state_to_json(const StateVector& psi) {
    json nodes = json::array();
    for (std::size_t k = 0; k < psi.grid->size(); ++k) {
        Vec3 p = psi.grid->node(k);
        json row = json::array();
        for (int a = 0; a < psi.grid->dims; ++a) row.push_back(p[a]);
        row.push_back(psi.amp(k).real());
        row.push_back(psi.amp(k).imag());
        nodes.push_back(row);
    }
    return nodes;
}

std::vector<StateVector> default_test_states(const GridPtr& grid, int count) {
    const double ext = grid->half_extent[0];
    const double width = ext / 8.0;
    const double c = ext / 4.0;
    const std::array<std::array<double, 2>, 5> centers{
        {{0.0, 0.0}, {c, 0.0}, {0.0, c}, {-c, 0.5 * c}, {0.5 * c, -c}}};
    std::vector<StateVector> states;
    for (int k = 0; k < count && k < 5; ++k)
        states.push_back(gaussian_state(grid, centers[k], width));
    return states;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream f(path);
    if (!f) throw config_error("cannot open csv output '" + path + "'");
    f << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << fmt17(row[i]);
        f << "\n";
    }
}

struct AssertionFailure {
    std::string what;
};

// ---- subcommand payloads -------------------------------------------------

struct NcCheckOpts {
    std::string config_path;
    double g = 1.0;
    int n = 64;
    double extent = 8.0;
    int states = 5;
    bool do_assert = false;
    double bound = 1e-6;
    bool dump_states = false;
};

json run_nc_check(const NcCheckOpts& o) {
    std::ifstream f(o.config_path);
    if (!f) throw config_error("cannot read config '" + o.config_path + "'");
    json cj;
    try {
        cj = json::parse(f);
    } catch (const json::exception& e) {
        throw config_error(std::string("config json parse error: ") + e.what());
    }
    MomentumGaugeConfig config = config_from_json(cj);

    GridPtr grid = make_grid(2, o.n, o.extent);
    auto states = default_test_states(grid, o.states);
    NoncommReport rep = verify_noncommutativity(grid, config, o.g, states);

    json out;
    out["version"] = kVersion;
    out["command"] = "nc-check";
    out["config"] = config_to_json(config);
    out["g"] = o.g;
    out["grid"] = {{"dims", 2},
                   {"points", o.n},
                   {"extent", o.extent},
                   {"spacing", grid->spacing[0]}};
    out["states"] = rep.n_states;
    out["theta_12"] = rep.pairs[0].theta_measured;
    out["residual_12"] = rep.pairs[0].residual;
    if (o.dump_states) {
        json dumps = json::array();
        for (const auto& s : states) dumps.push_back(state_to_json(s));
        out["state_dumps"] = dumps;
    }
    if (o.do_assert && rep.pairs[0].residual > o.bound)
        throw AssertionFailure{"nc-check residual " + fmt17(rep.pairs[0].residual) +
                               " above bound " + fmt17(o.bound)};
    return out;
}

struct SpectrumOpts {
    OscillatorParams params;
    int n_max = 40;
    int levels = 20;
    bool grid_cross_check = false;
    bool do_assert = false;
    double tol = 1e-8;
};

json run_spectrum(const SpectrumOpts& o) {
    EffectiveParams ep = effective_params(o.params);
    SpectrumResult spec = diagonalize(assemble_fock_hamiltonian(o.params, o.n_max));
    auto analytic = analytic_spectrum(o.params, spec.trusted_count);

    double max_disc = 0.0;
    for (std::size_t k = 0; k < spec.trusted_count; ++k)
        max_disc = std::max(max_disc, std::abs(spec.eigenvalues[k] - analytic[k].energy));

    const std::size_t shown = std::min<std::size_t>(o.levels, spec.trusted_count);
    json out;
    out["version"] = kVersion;
    out["command"] = "spectrum";
    out["params"] = {{"m", o.params.m},   {"omega", o.params.omega}, {"e", o.params.e},
                     {"g", o.params.g},   {"B", o.params.B},         {"Bm", o.params.Bm},
                     {"hbar", o.params.hbar}, {"n_max", o.n_max}};
    out["effective"] = {{"g1", ep.g1},
                        {"g2", ep.g2},
                        {"m_eff", ep.m_eff},
                        {"omega_eff", ep.omega_eff},
                        {"lz_coefficient", ep.lz_coefficient},
                        {"no_coupling", ep.no_coupling},
                        {"B_eff", ep.B_eff},
                        {"B_nc", ep.B_nc},
                        {"cos_theta_mix", ep.cos_theta_mix}};
    out["trusted_count"] = spec.trusted_count;
    out["eigenvalues"] = std::vector<double>(spec.eigenvalues.begin(),
                                             spec.eigenvalues.begin() + shown);
    json an = json::array();
    for (std::size_t k = 0; k < shown; ++k)
        an.push_back({{"n_r", analytic[k].n_r}, {"m_z", analytic[k].m_z}, {"E", analytic[k].energy}});
    out["analytic"] = an;
    out["max_trusted_discrepancy"] = max_disc;

    if (o.grid_cross_check) {
        double extent = std::max(8.0, 8.0 / std::sqrt(ep.m_eff * ep.omega_eff));
        GridPtr grid = make_grid(2, 32, extent);
        SpectrumResult gs = diagonalize(assemble_grid_hamiltonian(grid, o.params));
        out["grid_cross_check"] = {
            {"points", 32},
            {"extent", extent},
            {"eigenvalues", std::vector<double>(gs.eigenvalues.begin(), gs.eigenvalues.begin() + 5)}};
    }
    if (o.do_assert && max_disc > o.tol)
        throw AssertionFailure{"spectrum discrepancy " + fmt17(max_disc) + " above tol " +
                               fmt17(o.tol)};
    return out;
}

struct ThetaMapOpts {
    std::string variant;
    double sigma = 1.0;
    double j = 1.0;
    double pa = 1.0;
    double g = 1.0;
    int samples = 256;
    double extent = 0.0;  // default 4 * pa
    std::string csv_path;
};

json run_theta_map(const ThetaMapOpts& o) {
    MomentumGaugeConfig config;
    if (o.variant == "capacitor")
        config = CapacitorStack{o.sigma, o.pa};
    else if (o.variant == "sheets")
        config = CurrentSheets{o.j, o.pa};
    else
        throw config_error("theta-map: variant must be 'capacitor' or 'sheets'");
    const double extent = o.extent > 0.0 ? o.extent : 4.0 * o.pa;
    if (o.samples < 8) throw config_error("theta-map: need >= 8 samples");

    std::vector<Vec3> nodes;
    const double dz = 2.0 * extent / o.samples;
    for (int k = 0; k < o.samples; ++k)
        nodes.emplace_back(0.0, 0.0, -extent + (k + 0.5) * dz);
    ThetaMapResult map = theta_map(config, o.g, nodes);

    json out;
    out["version"] = kVersion;
    out["command"] = "theta-map";
    out["config"] = config_to_json(config);
    out["g"] = o.g;
    out["component"] = {{"mu", map.comp_mu}, {"nu", map.comp_nu}};
    out["samples"] = o.samples;
    out["extent"] = extent;
    json plats = json::array();
    for (const auto& p : map.plateaus)
        plats.push_back({{"value", p.value},
                         {"p_lo", nodes[p.first].z()},
                         {"p_hi", nodes[p.last].z()}});
    out["plateaus"] = plats;
    json trans = json::array();
    for (std::size_t t : map.transition_nodes) trans.push_back(nodes[t].z());
    out["transitions"] = trans;

    if (!o.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < nodes.size(); ++k)
            rows.push_back({nodes[k].z(), map.theta[k](map.comp_mu, map.comp_nu)});
        write_csv(o.csv_path, "p_z,theta", rows);
        out["csv"] = o.csv_path;
    }
    return out;
}

struct SolveFieldOpts {
    std::string variant;
    double sigma = 1.0;
    double j = 1.0;
    double pa = 1.0;
    int nodes = 512;
    double extent = 0.0;  // default 4 * pa
    std::string csv_path;
    bool do_assert = false;
    double bound = 1e-10;
};

json run_solve_field(const SolveFieldOpts& o) {
    SheetKind kind;
    double strength;
    if (o.variant == "capacitor") {
        kind = SheetKind::Charge;
        strength = o.sigma;
    } else if (o.variant == "sheets") {
        kind = SheetKind::CurrentY;
        strength = o.j;
    } else {
        throw config_error("solve-field: variant must be 'capacitor' or 'sheets'");
    }
    if (!(o.pa > 0.0)) throw config_error("solve-field: pa must be > 0");
    const double extent = o.extent > 0.0 ? o.extent : 4.0 * o.pa;

    MomentumSource1D source;
    source.sheets = {{-o.pa, strength, kind}, {o.pa, strength, kind}};
    PoissonSolution sol = poisson_solve_1d(source, o.nodes, extent);
    ResidualReport res = laplacian_residual(sol);
    ConservationReport cons = conservation_check(source);

    json out;
    out["version"] = kVersion;
    out["command"] = "solve-field";
    out["variant"] = o.variant;
    out["strength"] = strength;
    out["pa"] = o.pa;
    out["nodes"] = o.nodes;
    out["extent"] = extent;
    out["residual"] = {{"max_abs", res.max_abs}, {"rms", res.rms}, {"nodes", res.nodes}};
    out["conserved"] = cons.conserved;
    out["plateau_magnitude"] = 4.0 * std::numbers::pi * strength;

    if (!o.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < sol.nodes.size(); ++k)
            rows.push_back({sol.nodes[k], sol.potential[k], sol.field[k]});
        write_csv(o.csv_path, "p_z,potential,field", rows);
        out["csv"] = o.csv_path;
    }
    if (o.do_assert && res.max_abs > o.bound)
        throw AssertionFailure{"solve-field residual " + fmt17(res.max_abs) + " above bound " +
                               fmt17(o.bound)};
    return out;
}

struct ReciprocityOpts {
    double a = 0.0;
    double b = 0.0;
    int n_max = 40;
};

json run_reciprocity(const ReciprocityOpts& o) {
    DualityReport rep = reciprocity_duality_check(o.a, o.b, o.n_max);
    json out;
    out["version"] = kVersion;
    out["command"] = "reciprocity";
    out["a"] = o.a;
    out["b"] = o.b;
    out["n_max"] = o.n_max;
    out["levels_compared"] = rep.levels_compared;
    out["max_discrepancy"] = rep.max_discrepancy;
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"momentum gauge field toolkit"};
    app.require_subcommand(1);
    long seed = 0;
    app.add_option("--seed", seed, "seed recorded in the output for reproducibility");

    NcCheckOpts nc;
    auto* nc_cmd = app.add_subcommand("nc-check", "coordinate non-commutativity residuals");
    nc_cmd->add_option("--config", nc.config_path, "gauge config json")->required();
    nc_cmd->add_option("--g", nc.g, "momentum coupling")->required();
    nc_cmd->add_option("--n", nc.n, "grid points per axis")->check(CLI::Range(8, 256));
    nc_cmd->add_option("--extent", nc.extent, "grid half extent")->check(CLI::PositiveNumber);
    nc_cmd->add_option("--states", nc.states, "number of test states")->check(CLI::Range(1, 5));
    nc_cmd->add_flag("--assert", nc.do_assert, "exit 3 when residual exceeds --bound");
    nc_cmd->add_option("--bound", nc.bound, "residual bound");
    nc_cmd->add_flag("--dump-states", nc.dump_states, "include state dumps");

    SpectrumOpts sp;
    auto* sp_cmd = app.add_subcommand("spectrum", "generalized Landau spectrum");
    sp_cmd->add_option("--m", sp.params.m, "mass")->check(CLI::PositiveNumber);
    sp_cmd->add_option("--w", sp.params.omega, "frequency")->check(CLI::PositiveNumber);
    sp_cmd->add_option("--e", sp.params.e, "ordinary coupling");
    sp_cmd->add_option("--g", sp.params.g, "momentum coupling");
    sp_cmd->add_option("--B", sp.params.B, "ordinary magnetic field");
    sp_cmd->add_option("--Bm", sp.params.Bm, "momentum magnetic field");
    sp_cmd->add_option("--hbar", sp.params.hbar, "action scale")->check(CLI::PositiveNumber);
    sp_cmd->add_option("--nmax", sp.n_max, "Fock truncation per mode")->check(CLI::Range(8, 80));
    sp_cmd->add_option("--levels", sp.levels, "levels to print")->check(CLI::PositiveNumber);
    sp_cmd->add_flag("--grid-cross-check", sp.grid_cross_check, "include 32^2 grid eigenvalues");
    sp_cmd->add_flag("--assert", sp.do_assert, "exit 3 when discrepancy exceeds --tol");
    sp_cmd->add_option("--tol", sp.tol, "discrepancy tolerance");

    ThetaMapOpts tm;
    auto* tm_cmd = app.add_subcommand("theta-map", "momentum-dependent Theta plateaus");
    tm_cmd->add_option("--variant", tm.variant, "capacitor | sheets")->required();
    tm_cmd->add_option("--sigma", tm.sigma, "capacitor sheet strength");
    tm_cmd->add_option("--j", tm.j, "current sheet strength");
    tm_cmd->add_option("--pa", tm.pa, "sheet position")->check(CLI::PositiveNumber);
    tm_cmd->add_option("--g", tm.g, "momentum coupling");
    tm_cmd->add_option("--samples", tm.samples, "sample count");
    tm_cmd->add_option("--extent", tm.extent, "half extent (default 4 pa)");
    tm_cmd->add_option("--csv", tm.csv_path, "write per-sample csv");

    SolveFieldOpts sf;
    auto* sf_cmd = app.add_subcommand("solve-field", "1D momentum-space field solve");
    sf_cmd->add_option("--variant", sf.variant, "capacitor | sheets")->required();
    sf_cmd->add_option("--sigma", sf.sigma, "capacitor sheet strength");
    sf_cmd->add_option("--j", sf.j, "current sheet strength");
    sf_cmd->add_option("--pa", sf.pa, "sheet position")->check(CLI::PositiveNumber);
    sf_cmd->add_option("--nodes", sf.nodes, "solver nodes")->check(CLI::Range(64, 65536));
    sf_cmd->add_option("--extent", sf.extent, "half extent (default 4 pa)");
    sf_cmd->add_option("--csv", sf.csv_path, "write (p_z, potential, field) csv");
    sf_cmd->add_flag("--assert", sf.do_assert, "exit 3 when residual exceeds --bound");
    sf_cmd->add_option("--bound", sf.bound, "residual bound");

    ReciprocityOpts rc;
    auto* rc_cmd = app.add_subcommand("reciprocity", "position/momentum duality check");
    rc_cmd->add_option("--a", rc.a, "eB of the forward problem")->required();
    rc_cmd->add_option("--b", rc.b, "gBm of the forward problem")->required();
    rc_cmd->add_option("--nmax", rc.n_max, "Fock truncation per mode")->check(CLI::Range(8, 80));

    std::vector<const char*> argv;
    argv.push_back("momgauge");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        json result;
        if (*nc_cmd)
            result = run_nc_check(nc);
        else if (*sp_cmd)
            result = run_spectrum(sp);
        else if (*tm_cmd)
            result = run_theta_map(tm);
        else if (*sf_cmd)
            result = run_solve_field(sf);
        else
            result = run_reciprocity(rc);
        result["seed"] = seed;
        out << result.dump(2) << "\n";
        return kExitOk;
    } catch (const AssertionFailure& a) {
        err << "assertion failed: " << a.what << "\n";
        return kExitAssertion;
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const singular_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hermiticity_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace momgauge::cli
