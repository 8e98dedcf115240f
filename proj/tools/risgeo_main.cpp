// risgeo command-line front end: scenario files in, reports and CSV out.
// Boundary units are degrees and dBm/dB; everything inside the library is SI.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "risgeo/effective_elements.hpp"
#include "risgeo/illumination.hpp"
#include "risgeo/layout.hpp"
#include "risgeo/link.hpp"
#include "risgeo/outage.hpp"
#include "risgeo/scenario.hpp"
#include "risgeo/scenario_io.hpp"
#include "risgeo/sweep.hpp"
#include "risgeo/version.hpp"

namespace {

using namespace risgeo;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

/// Baseline deployment used when no scenario file is given: 3.5 GHz, N = 100
/// half-wavelength elements, 0 dBm Tx, -100 dBm noise, 5 degree beam.
Scenario default_scenario() {
    Scenario s;
    s.tx_position = {0.0, 0.0, 3.0};
    s.rx_position = {5.0, 0.0, 1.5};
    s.ris_center = {2.0, 2.0, 3.0};
    s.frequency_hz = 3.5e9;
    s.hpbw_rad = deg_to_rad(5.0);
    s.tx_power_w = 1e-3;
    s.noise_power_w = 1e-13;
    s.rx_gain = 1.0;
    s.ris.geometry = RisGeometry::Planar2D;
    s.ris.total_elements = 100;
    const double half_wave = s.wavelength() / 2.0;
    s.ris.element_width = half_wave;
    s.ris.element_height = half_wave;
    s.ris.element_spacing = half_wave;
    s.fading = {1.0, 1.0};
    return s;
}

struct CommonOpts {
    std::string scenario_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string geometry = "all";
    std::string metric = "power";
    std::string pattern = "combined";
    std::string threshold_db = "0:40:1";
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
};

Scenario load(const CommonOpts& o) {
    Scenario s = o.scenario_path.empty() ? default_scenario()
                                         : load_scenario_file(o.scenario_path);
    for (const auto& expr : o.overrides) apply_override_expr(s, expr);
    return s;
}

std::vector<RisGeometry> geometries_of(const std::string& name) {
    if (name == "1d") return {RisGeometry::Linear1D};
    if (name == "2d") return {RisGeometry::Planar2D};
    if (name == "3d") return {RisGeometry::Cylindrical3D};
    if (name == "all")
        return {RisGeometry::Linear1D, RisGeometry::Planar2D,
                RisGeometry::Cylindrical3D};
    throw ScenarioKeyError("unknown geometry '" + name + "' (use 1d|2d|3d|all)");
}

ElementPatternMode pattern_of(const std::string& name) {
    if (name == "combined") return ElementPatternMode::CombinedAngle;
    if (name == "azimuth") return ElementPatternMode::AzimuthOnly;
    throw ScenarioKeyError("unknown pattern mode '" + name + "' (use combined|azimuth)");
}

Metric metric_of(const std::string& name) {
    if (name == "power") return Metric::ReceivedPower;
    if (name == "snr") return Metric::MeanSnr;
    if (name == "outage") return Metric::OutageAtThreshold;
    throw ScenarioKeyError("unknown metric '" + name + "' (use power|snr|outage)");
}

/// "lo:hi:step" (or a single value) in dB, expanded to a linear-SNR grid.
std::vector<double> threshold_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0, step = 1.0;
    const int n = std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step);
    if (n == 1) return {db_to_linear(lo)};
    if (n != 3 || step <= 0.0 || hi < lo)
        throw ScenarioKeyError("bad --threshold-db grid '" + text +
                               "' (use lo:hi:step in dB)");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>((hi - lo) / step + 1e-9) + 1;
    for (std::size_t i = 0; i < count; ++i)
        grid.push_back(db_to_linear(lo + static_cast<double>(i) * step));
    return grid;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

int require_usable(const Scenario& s) {
    const auto report = validate(s);
    if (report.empty()) return kExitOk;
    for (const auto& r : report) std::cerr << "invalid: " << r << "\n";
    return kExitValidation;
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_validate(const CommonOpts& o) {
    const Scenario s = load(o);
    const auto report = validate(s);
    if (report.empty()) {
        std::cout << "scenario ok\n";
        return kExitOk;
    }
    for (const auto& r : report) std::cout << "violated: " << r << "\n";
    return kExitValidation;
}

int cmd_illum(const CommonOpts& o) {
    const Scenario s = load(o);
    if (const int rc = require_usable(s)) return rc;
    const CenterGeometry cg = derive_center_geometry(s);
    const IlluminationEllipse e = ellipse_axes(cg, s.hpbw_rad / 2.0);
    std::printf("r1 = %.6f m, r2 = %.6f m\n", cg.r1, cg.r2);
    std::printf("azimuth(plane) = %.4f deg, elevation = %.4f deg\n",
                rad_to_deg(cg.azimuth_plane_t), rad_to_deg(cg.elevation_t));
    std::printf("a' = %.6f m, a* = %.6f m, b' = %.6f m, b* = %.6f m\n", e.a_prime,
                e.a_star, e.b_prime, e.b_star);
    std::printf("a = %.6f m, b = %.6f m, area = %.6f m^2%s\n", e.a, e.b, e.area,
                e.axes_swapped ? " (axes swapped)" : "");
    return kExitOk;
}

int cmd_neff(const CommonOpts& o) {
    const Scenario s = load(o);
    if (const int rc = require_usable(s)) return rc;
    const CenterGeometry cg = derive_center_geometry(s);
    const IlluminationEllipse e = ellipse_axes(cg, s.hpbw_rad / 2.0);
    for (const RisGeometry g : geometries_of(o.geometry)) {
        const EffectiveCount c = n_eff_for(g, e, s.ris);
        std::printf("%s: n_eff = %d (branch %s, extent %.4f m", geometry_name(g),
                    c.n_eff, branch_name(c.branch), c.ris_extent);
        if (g == RisGeometry::Planar2D)
            std::printf(", I_2D = %.6g m^2", c.overlap_indicator);
        if (c.n_eff >= 1) {
            const FraunhoferResult fr = fraunhofer(g, c, e, s.ris, cg.wavelength, cg.r1);
            std::printf(") fraunhofer = %.4f m (%s field)\n", fr.distance,
                        regime_name(fr.regime));
        } else {
            std::printf(") fraunhofer undefined (no illuminated elements)\n");
        }
    }
    return kExitOk;
}

int cmd_layout(const CommonOpts& o) {
    const Scenario s = load(o);
    if (const int rc = require_usable(s)) return rc;
    const CenterGeometry cg = derive_center_geometry(s);
    const IlluminationEllipse e = ellipse_axes(cg, s.hpbw_rad / 2.0);
    const auto geoms = geometries_of(o.geometry);
    if (geoms.size() != 1)
        throw ScenarioKeyError("layout needs a single --geometry (1d|2d|3d)");
    Scenario sc = s;
    sc.ris.geometry = geoms.front();
    const EffectiveCount c = n_eff_for(geoms.front(), e, sc.ris);
    const ElementLayout lay = build_layout(sc, cg, e, c);

    std::ofstream file;
    std::ostream& os = open_out(o.out_path, file);
    os << "# risgeo " << kVersion << " scenario: " << serialize_scenario(sc) << "\n";
    os << "idx,x,y,z,r1,r2,az_t_deg,el_t_deg,az_r_deg,el_r_deg\n";
    char buf[256];
    for (std::size_t i = 0; i < lay.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "%zu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", i,
                      lay.positions[i].x, lay.positions[i].y, lay.positions[i].z,
                      lay.r1[i], lay.r2[i], rad_to_deg(lay.azimuth_t[i]),
                      rad_to_deg(lay.elevation_t[i]), rad_to_deg(lay.azimuth_r[i]),
                      rad_to_deg(lay.elevation_r[i]));
        os << buf;
    }
    return kExitOk;
}

int cmd_power(const CommonOpts& o) {
    const Scenario s = load(o);
    if (const int rc = require_usable(s)) return rc;
    const ElementPatternMode mode = pattern_of(o.pattern);
    const std::vector<double> grid = threshold_grid(o.threshold_db);
    for (const RisGeometry g : geometries_of(o.geometry)) {
        const PointMetrics m = evaluate_point(s, g, grid.front(), mode);
        if (m.degenerate) {
            std::printf("%s: degenerate beam, no coverage\n", geometry_name(g));
            continue;
        }
        std::printf("%s: P_r = %.3f dBm, mean SNR = %.3f dB, n_eff = %d (%s), "
                    "fraunhofer %.3f m (%s field)\n",
                    geometry_name(g), watt_to_dbm(m.received_power_w),
                    linear_to_db(m.mean_snr), m.n_eff, branch_name(m.branch),
                    m.fraunhofer_m, regime_name(m.regime));
    }
    return kExitOk;
}

int cmd_outage(const CommonOpts& o, bool closed_form) {
    const Scenario s = load(o);
    if (const int rc = require_usable(s)) return rc;
    const ElementPatternMode mode = pattern_of(o.pattern);
    const auto geoms = geometries_of(o.geometry);
    if (geoms.size() != 1)
        throw ScenarioKeyError("outage needs a single --geometry (1d|2d|3d)");
    const std::vector<double> grid = threshold_grid(o.threshold_db);

    const PointMetrics m = evaluate_point(s, geoms.front(), grid.front(), mode);
    if (m.degenerate || m.n_eff < 1 || !(m.mean_snr > 0.0))
        throw std::runtime_error("no illuminated elements at this deployment");

    const MomentMatch mm = moment_match(s.fading, m.n_eff);
    const OutageCurve mc = monte_carlo_outage_curve(m.n_eff, s.fading, m.mean_snr,
                                                    grid, o.samples, o.seed);

    std::ofstream file;
    std::ostream& os = open_out(o.out_path, file);
    os << "# risgeo " << kVersion << " seed=" << o.seed << " samples=" << o.samples
       << " n_eff=" << m.n_eff << " mean_snr_db=" << linear_to_db(m.mean_snr)
       << " scenario: " << serialize_scenario(s) << "\n";
    os << (closed_form ? "rho_th_db,p_out_closed,p_out_mc,n_eff\n"
                       : "rho_th_db,p_out_mc,n_eff\n");
    char buf[160];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (closed_form) {
            const double closed =
                outage_probability(mm, m.n_eff, m.mean_snr, grid[i]);
            std::snprintf(buf, sizeof buf, "%.6g,%.10g,%.10g,%d\n",
                          linear_to_db(grid[i]), closed, mc.probabilities[i],
                          m.n_eff);
        } else {
            std::snprintf(buf, sizeof buf, "%.6g,%.10g,%d\n", linear_to_db(grid[i]),
                          mc.probabilities[i], m.n_eff);
        }
        os << buf;
    }
    return kExitOk;
}

int cmd_sweep(const CommonOpts& o, const std::string& variable,
              const std::string& range) {
    const Scenario s = load(o);
    if (const int rc = require_usable(s)) return rc;
    SweepSpec spec;
    spec.geometries = geometries_of(o.geometry);
    double lo = 0.0, hi = 0.0, step = 0.0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
        throw ScenarioKeyError("bad --range '" + range + "' (use lo:hi:step)");
    if (variable == "x") spec.variable = SweepVariable::RisX;
    else if (variable == "h") spec.variable = SweepVariable::RisHeight;
    else if (variable == "hpbw") spec.variable = SweepVariable::Hpbw;
    else if (variable == "threshold") spec.variable = SweepVariable::Threshold;
    else
        throw ScenarioKeyError("unknown --variable '" + variable +
                               "' (use x|h|hpbw|threshold)");
    if (spec.variable == SweepVariable::Hpbw) {
        lo = deg_to_rad(lo); hi = deg_to_rad(hi); step = deg_to_rad(step);
    } else if (spec.variable == SweepVariable::Threshold) {
        lo = db_to_linear(lo); hi = db_to_linear(hi); step = db_to_linear(step);
    }
    spec.start = lo; spec.stop = hi; spec.step = step;

    const double rho_th = threshold_grid(o.threshold_db).front();
    const auto rows = sweep(s, spec, rho_th, pattern_of(o.pattern));
    std::ofstream file;
    std::ostream& os = open_out(o.out_path, file);
    write_sweep_csv(os, s, spec, rows, rho_th);
    return kExitOk;
}

int cmd_optimize(const CommonOpts& o, const std::string& x_range,
                 const std::string& h_range, double step) {
    const Scenario s = load(o);
    if (const int rc = require_usable(s)) return rc;
    PlacementGrid grid;
    if (std::sscanf(x_range.c_str(), "%lf:%lf", &grid.x_start, &grid.x_stop) != 2)
        throw ScenarioKeyError("bad --x-range '" + x_range + "' (use lo:hi)");
    if (std::sscanf(h_range.c_str(), "%lf:%lf", &grid.h_start, &grid.h_stop) != 2)
        throw ScenarioKeyError("bad --h-range '" + h_range + "' (use lo:hi)");
    grid.step = step;

    const Metric metric = metric_of(o.metric);
    const double rho_th = threshold_grid(o.threshold_db).front();
    const OptimumReport report = optimize_placement(
        s, grid, metric, geometries_of(o.geometry), rho_th, pattern_of(o.pattern));
    for (const auto& e : report.optima) {
        double shown = e.best_metric;
        const char* unit = "";
        switch (metric) {
            case Metric::ReceivedPower: shown = watt_to_dbm(shown); unit = "dBm"; break;
            case Metric::MeanSnr: shown = linear_to_db(shown); unit = "dB"; break;
            case Metric::OutageAtThreshold: unit = "P_out"; break;
        }
        std::printf("%s: optimum (x_s, h_s) = (%.4f, %.4f) m, %s = %.4f, n_eff = %d\n",
                    geometry_name(e.geometry), e.x, e.h, unit, shown,
                    e.metrics.n_eff);
    }
    return kExitOk;
}

// ---- reproduce: canonical figure datasets ----------------------------------

Scenario reproduce_base() {
    Scenario s = default_scenario();
    s.ris_center = {0.0, 2.0, 3.0};
    return s;
}

int reproduce_one(const std::string& name, const std::string& outdir,
                  const CommonOpts& o) {
    namespace fs = std::filesystem;
    fs::create_directories(outdir.empty() ? "." : outdir);
    const std::string path =
        (fs::path(outdir.empty() ? "." : outdir) / (name + ".csv")).string();
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    const ElementPatternMode mode = pattern_of(o.pattern);
    const auto all = geometries_of("all");
    char buf[256];

    if (name == "fig2") {
        // Fraunhofer distance vs Tx-RIS distance at broadside.
        Scenario s = reproduce_base();
        os << "# risgeo " << kVersion << " dataset fig2\n";
        os << "r1_m,geometry,n_eff,d_g_m,aperture_m,regime\n";
        for (double r = 2.0; r <= 10.0 + 1e-9; r += 0.05) {
            Scenario sc = s;
            sc.ris_center.y = r;
            const CenterGeometry cg = derive_center_geometry(sc);
            const IlluminationEllipse e = ellipse_axes(cg, sc.hpbw_rad / 2.0);
            for (const RisGeometry g : all) {
                const EffectiveCount c = n_eff_for(g, e, sc.ris);
                if (c.n_eff < 1) continue;
                const FraunhoferResult fr =
                    fraunhofer(g, c, e, sc.ris, cg.wavelength, cg.r1);
                std::snprintf(buf, sizeof buf, "%.4f,%s,%d,%.6f,%.6f,%s\n", r,
                              geometry_name(g), c.n_eff, fr.distance, fr.aperture,
                              regime_name(fr.regime));
                os << buf;
            }
        }
    } else if (name == "fig3a" || name == "fig5b") {
        Scenario s = reproduce_base();
        SweepSpec spec;
        spec.variable = SweepVariable::RisX;
        spec.start = 0.0; spec.stop = 20.0; spec.step = 0.05;
        spec.geometries = all;
        const double rho_th = db_to_linear(20.0);
        const auto rows = sweep(s, spec, rho_th, mode);
        write_sweep_csv(os, s, spec, rows, rho_th);
    } else if (name == "fig3b") {
        Scenario s = reproduce_base();
        SweepSpec spec;
        spec.variable = SweepVariable::Hpbw;
        spec.start = deg_to_rad(1.0); spec.stop = deg_to_rad(30.0);
        spec.step = deg_to_rad(0.1);
        spec.geometries = all;
        const auto rows = sweep(s, spec, db_to_linear(20.0), mode);
        write_sweep_csv(os, s, spec, rows, db_to_linear(20.0));
        const auto phi_c = critical_beamwidth(s, spec.start, spec.stop, spec.step);
        if (phi_c)
            std::printf("fig3b: critical beamwidth = %.2f deg\n", rad_to_deg(*phi_c));
    } else if (name == "fig4") {
        Scenario s = default_scenario();
        os << "# risgeo " << kVersion << " dataset fig4 scenario: "
           << serialize_scenario(s) << "\n";
        os << "x_s_m,h_s_m,geometry,n_eff,received_power_dbm\n";
        for (double x = 0.0; x <= 20.0 + 1e-9; x += 0.05) {
            for (double h = 0.0; h <= 6.0 + 1e-9; h += 0.05) {
                Scenario sc = s;
                sc.ris_center = {x, 2.0, h};
                for (const RisGeometry g : all) {
                    const PointMetrics m = evaluate_point(sc, g, 100.0, mode);
                    std::snprintf(
                        buf, sizeof buf, "%.4f,%.4f,%s,%d,%.6g\n", x, h,
                        geometry_name(g), m.n_eff,
                        m.received_power_w > 0.0 ? watt_to_dbm(m.received_power_w)
                                                 : -std::numeric_limits<double>::infinity());
                    os << buf;
                }
            }
        }
    } else if (name == "fig5a") {
        os << "# risgeo " << kVersion << " dataset fig5a\n";
        os << "rho_th_db,hpbw_deg,geometry,p_out,n_eff\n";
        for (const double hpbw : {5.0, 10.0}) {
            Scenario s = default_scenario();
            s.hpbw_rad = deg_to_rad(hpbw);
            for (const RisGeometry g : all) {
                for (double th = 0.0; th <= 60.0 + 1e-9; th += 0.5) {
                    const PointMetrics m =
                        evaluate_point(s, g, db_to_linear(th), mode);
                    std::snprintf(buf, sizeof buf, "%.2f,%.1f,%s,%.10g,%d\n", th,
                                  hpbw, geometry_name(g), m.p_out, m.n_eff);
                    os << buf;
                }
            }
        }
    } else {
        throw ScenarioKeyError("unknown dataset '" + name +
                               "' (use fig2|fig3a|fig3b|fig4|fig5a|fig5b|all)");
    }
    std::printf("wrote %s\n", path.c_str());
    return kExitOk;
}

int cmd_reproduce(const std::string& name, const CommonOpts& o) {
    if (name == "all") {
        for (const char* n : {"fig2", "fig3a", "fig3b", "fig4", "fig5a", "fig5b"})
            if (const int rc = reproduce_one(n, o.out_path, o)) return rc;
        return kExitOk;
    }
    return reproduce_one(name, o.out_path, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS geometry link simulator (illumination, effective elements, "
                 "near-field power, outage)"};
    app.set_version_flag("--version", std::string("risgeo ") + kVersion);
    app.require_subcommand(1);

    CommonOpts o;
    app.add_option("--scenario", o.scenario_path, "scenario file (key = value lines)");
    app.add_option("--set", o.overrides, "override scenario key, key=value (repeatable)");
    app.add_option("--out", o.out_path, "output file (or directory for reproduce)");
    app.add_option("--geometry", o.geometry, "1d|2d|3d|all (default all)");
    app.add_option("--metric", o.metric, "power|snr|outage (optimize)");
    app.add_option("--pattern-mode", o.pattern, "combined|azimuth element pattern");
    app.add_option("--threshold-db", o.threshold_db, "SNR threshold grid lo:hi:step in dB");
    app.add_option("--seed", o.seed, "Monte-Carlo seed");
    app.add_option("--samples", o.samples, "Monte-Carlo sample count");

    auto* validate_cmd = app.add_subcommand("validate", "check scenario invariants");
    auto* illum_cmd = app.add_subcommand("illum", "illuminated ellipse axes and area");
    auto* neff_cmd = app.add_subcommand("neff", "effective element count and Fraunhofer distance");
    auto* layout_cmd = app.add_subcommand("layout", "per-element coordinates and distances (CSV)");
    auto* power_cmd = app.add_subcommand("power", "received power and mean SNR");
    auto* outage_cmd = app.add_subcommand("outage", "closed-form + Monte-Carlo outage (CSV)");
    auto* mc_cmd = app.add_subcommand("montecarlo", "Monte-Carlo outage only (CSV)");

    std::string sweep_variable = "x";
    std::string sweep_range = "0:20:0.05";
    auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep of a deployment variable (CSV)");
    sweep_cmd->add_option("--variable", sweep_variable, "x|h|hpbw|threshold");
    sweep_cmd->add_option("--range", sweep_range,
                          "lo:hi:step (m, degrees for hpbw, dB for threshold)");

    std::string x_range = "0:20", h_range = "0:6";
    double opt_step = 0.05;
    auto* optimize_cmd = app.add_subcommand("optimize", "grid-optimize RIS placement");
    optimize_cmd->add_option("--x-range", x_range, "x_s range lo:hi (m)");
    optimize_cmd->add_option("--h-range", h_range, "h_s range lo:hi (m)");
    optimize_cmd->add_option("--step", opt_step, "grid step (m)");

    std::string dataset = "all";
    auto* reproduce_cmd =
        app.add_subcommand("reproduce", "write canonical figure datasets");
    reproduce_cmd->add_option("dataset", dataset, "fig2|fig3a|fig3b|fig4|fig5a|fig5b|all");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(o);
        if (illum_cmd->parsed()) return cmd_illum(o);
        if (neff_cmd->parsed()) return cmd_neff(o);
        if (layout_cmd->parsed()) return cmd_layout(o);
        if (power_cmd->parsed()) return cmd_power(o);
        if (outage_cmd->parsed()) return cmd_outage(o, true);
        if (mc_cmd->parsed()) return cmd_outage(o, false);
        if (sweep_cmd->parsed()) return cmd_sweep(o, sweep_variable, sweep_range);
        if (optimize_cmd->parsed())
            return cmd_optimize(o, x_range, h_range, opt_step);
        if (reproduce_cmd->parsed()) return cmd_reproduce(dataset, o);
    } catch (const ScenarioKeyError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
