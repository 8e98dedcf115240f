#pragma once

#include <iosfwd>
#include <optional>

#include "risgeo/types.hpp"

namespace risgeo {

enum class SweepVariable { RisX, RisHeight, Hpbw, Threshold };
enum class Metric { ReceivedPower, MeanSnr, OutageAtThreshold };

struct SweepSpec {
    SweepVariable variable = SweepVariable::RisX;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;  // > 0, start < stop
    std::vector<RisGeometry> geometries;
};

/// Everything the link evaluates at one deployment point. Degenerate-beam
/// points are flagged, never dropped.
struct PointMetrics {
    int n_eff = 0;
    CoverageBranch branch = CoverageBranch::PartialBothAxes;
    double received_power_w = 0.0;
    double mean_snr = 0.0;
    double p_out = 1.0;
    double fraunhofer_m = 0.0;
    FieldRegime regime = FieldRegime::FarField;
    bool degenerate = false;
};

struct SweepRow {
    double value = 0.0;  // swept variable value, in its natural unit
    RisGeometry geometry = RisGeometry::Planar2D;
    PointMetrics metrics;
};

struct PlacementGrid {
    double x_start = 0.0, x_stop = 20.0;
    double h_start = 0.0, h_stop = 6.0;
    double step = 0.05;
};

struct OptimumReport {
    struct Entry {
        RisGeometry geometry;
        double x = 0.0, h = 0.0;
        double best_metric = 0.0;  // in the metric's natural unit (W, linear SNR, probability)
        PointMetrics metrics;
    };
    std::vector<Entry> optima;
};

/// Full single-point evaluation: ellipse -> N_eff -> layout -> power -> outage
/// at `rho_th` (dimensionless). Degenerate beams yield a flagged zero row.
PointMetrics evaluate_point(const Scenario& s, RisGeometry g, double rho_th,
                            ElementPatternMode mode = ElementPatternMode::CombinedAngle);

/// One row per grid value per geometry, in grid-then-geometry order. Grid
/// points are evaluated concurrently; assembly is deterministic by index.
std::vector<SweepRow> sweep(const Scenario& s, const SweepSpec& spec, double rho_th,
                            ElementPatternMode mode = ElementPatternMode::CombinedAngle);

/// Exhaustive (x_s, h_s) grid optimization. Ties break toward the smallest x,
/// then the smallest h. Outage is minimized, the other metrics maximized.
OptimumReport optimize_placement(const Scenario& s, const PlacementGrid& grid,
                                 Metric metric, const std::vector<RisGeometry>& geoms,
                                 double rho_th,
                                 ElementPatternMode mode = ElementPatternMode::CombinedAngle);

/// x_s positions where the metric difference between two geometries changes
/// sign, bracketed on the coarse grid and refined by bisection on the
/// continuous model to step/100.
std::vector<double> find_crossover(const Scenario& s, RisGeometry a, RisGeometry b,
                                   Metric metric, double x_start, double x_stop,
                                   double step, double rho_th,
                                   ElementPatternMode mode = ElementPatternMode::CombinedAngle);

/// Smallest beamwidth (radians) from which N_eff^2D >= N_eff^3D holds for
/// every larger beamwidth on the grid; nullopt when it never settles.
std::optional<double> critical_beamwidth(const Scenario& s, double phi_start,
                                         double phi_stop, double step);

/// CSV with a `#` comment line carrying the tool version and the full
/// scenario, then a header row. Degenerate rows carry degenerate=1. Values
/// cross the boundary in display units: dBm, dB, degrees.
void write_sweep_csv(std::ostream& os, const Scenario& s, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows, double rho_th);

const char* geometry_name(RisGeometry g);
const char* branch_name(CoverageBranch b);
const char* regime_name(FieldRegime r);

}  // namespace risgeo
