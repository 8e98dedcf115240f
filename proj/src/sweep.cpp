#include "risgeo/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>

#include "risgeo/effective_elements.hpp"
#include "risgeo/illumination.hpp"
#include "risgeo/layout.hpp"
#include "risgeo/link.hpp"
#include "risgeo/outage.hpp"
#include "risgeo/scenario.hpp"
#include "risgeo/scenario_io.hpp"
#include "risgeo/version.hpp"

namespace risgeo {

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t chunks = std::min<std::size_t>(hw, n);
    if (chunks <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    const std::size_t base = n / chunks;
    const std::size_t rem = n % chunks;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t len = base + (c < rem ? 1 : 0);
        threads.emplace_back(fn, begin, begin + len);
        begin += len;
    }
    for (auto& t : threads) t.join();
}

std::size_t grid_size(double start, double stop, double step) {
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

double metric_value(const PointMetrics& m, Metric metric) {
    switch (metric) {
        case Metric::ReceivedPower: return m.received_power_w;
        case Metric::MeanSnr: return m.mean_snr;
        case Metric::OutageAtThreshold: return m.p_out;
    }
    throw std::logic_error("unknown metric");
}

// true when `cand` beats `best` (outage is minimized, the rest maximized)
bool improves(Metric metric, double cand, double best) {
    return metric == Metric::OutageAtThreshold ? cand < best : cand > best;
}

}  // namespace

PointMetrics evaluate_point(const Scenario& s, RisGeometry g, double rho_th,
                            ElementPatternMode mode) {
    PointMetrics m;
    Scenario sc = s;
    sc.ris.geometry = g;

    const CenterGeometry cg = derive_center_geometry(sc);
    IlluminationEllipse e;
    try {
        e = ellipse_axes(cg, sc.hpbw_rad / 2.0);
    } catch (const DegenerateBeamError&) {
        m.degenerate = true;
        m.p_out = rho_th > 0.0 ? 1.0 : 0.0;
        return m;
    }

    const EffectiveCount count = n_eff_for(g, e, sc.ris);
    m.n_eff = count.n_eff;
    m.branch = count.branch;
    if (count.n_eff < 1) {
        m.p_out = rho_th > 0.0 ? 1.0 : 0.0;
        return m;
    }

    const FraunhoferResult fr =
        fraunhofer(g, count, e, sc.ris, cg.wavelength, cg.r1);
    m.fraunhofer_m = fr.distance;
    m.regime = fr.regime;

    const ElementLayout layout = build_layout(sc, cg, e, count);
    const LinkResult lr = received_power(sc, layout, mode);
    m.received_power_w = lr.received_power_w;
    m.mean_snr = lr.mean_snr;

    if (m.mean_snr > 0.0) {
        const MomentMatch mm = moment_match(sc.fading, count.n_eff);
        m.p_out = outage_probability(mm, count.n_eff, m.mean_snr, rho_th);
    } else {
        m.p_out = rho_th > 0.0 ? 1.0 : 0.0;
    }
    return m;
}

std::vector<SweepRow> sweep(const Scenario& s, const SweepSpec& spec, double rho_th,
                            ElementPatternMode mode) {
    if (!(spec.step > 0.0) || !(spec.start < spec.stop))
        throw std::invalid_argument("sweep: need step > 0 and start < stop");

    const std::size_t npts = grid_size(spec.start, spec.stop, spec.step);
    const std::size_t ngeo = spec.geometries.size();
    std::vector<SweepRow> rows(npts * ngeo);
    if (rows.empty()) return rows;

    parallel_for(npts, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double value = spec.start + static_cast<double>(i) * spec.step;
            Scenario sc = s;
            double th = rho_th;
            switch (spec.variable) {
                case SweepVariable::RisX: sc.ris_center.x = value; break;
                case SweepVariable::RisHeight: sc.ris_center.z = value; break;
                case SweepVariable::Hpbw: sc.hpbw_rad = value; break;
                case SweepVariable::Threshold: th = value; break;
            }
            for (std::size_t gi = 0; gi < ngeo; ++gi) {
                SweepRow& row = rows[i * ngeo + gi];
                row.value = value;
                row.geometry = spec.geometries[gi];
                row.metrics = evaluate_point(sc, spec.geometries[gi], th, mode);
            }
        }
    });
    return rows;
}

OptimumReport optimize_placement(const Scenario& s, const PlacementGrid& grid,
                                 Metric metric, const std::vector<RisGeometry>& geoms,
                                 double rho_th, ElementPatternMode mode) {
    const std::size_t nx = grid_size(grid.x_start, grid.x_stop, grid.step);
    const std::size_t nh = grid_size(grid.h_start, grid.h_stop, grid.step);

    struct Best {
        bool set = false;
        double x = 0.0, h = 0.0, value = 0.0;
        PointMetrics metrics;
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t nchunks = std::min<std::size_t>(hw, nx);
    std::vector<std::vector<Best>> chunk_best(nchunks,
                                              std::vector<Best>(geoms.size()));

    // Chunks split the x axis; scanning x then h ascending with strict
    // improvement realizes the smallest-x-then-smallest-h tie break.
    parallel_for(nx, [&](std::size_t lo, std::size_t hi) {
        // identify this chunk by its start; chunks are contiguous in x
        std::size_t chunk_id = 0;
        {
            const std::size_t base = nx / nchunks, rem = nx % nchunks;
            std::size_t begin = 0;
            for (std::size_t c = 0; c < nchunks; ++c) {
                const std::size_t len = base + (c < rem ? 1 : 0);
                if (begin == lo) { chunk_id = c; break; }
                begin += len;
            }
        }
        auto& best = chunk_best[chunk_id];
        Scenario sc = s;
        for (std::size_t ix = lo; ix < hi; ++ix) {
            sc.ris_center.x = grid.x_start + static_cast<double>(ix) * grid.step;
            for (std::size_t ih = 0; ih < nh; ++ih) {
                sc.ris_center.z = grid.h_start + static_cast<double>(ih) * grid.step;
                for (std::size_t gi = 0; gi < geoms.size(); ++gi) {
                    const PointMetrics m = evaluate_point(sc, geoms[gi], rho_th, mode);
                    if (m.degenerate) continue;
                    const double v = metric_value(m, metric);
                    if (!best[gi].set || improves(metric, v, best[gi].value)) {
                        best[gi] = Best{true, sc.ris_center.x, sc.ris_center.z, v, m};
                    }
                }
            }
        }
    });

    OptimumReport report;
    for (std::size_t gi = 0; gi < geoms.size(); ++gi) {
        Best merged;
        for (const auto& cb : chunk_best) {
            const Best& b = cb[gi];
            if (!b.set) continue;
            if (!merged.set || improves(metric, b.value, merged.value)) merged = b;
        }
        if (merged.set)
            report.optima.push_back(
                {geoms[gi], merged.x, merged.h, merged.value, merged.metrics});
    }
    return report;
}

std::vector<double> find_crossover(const Scenario& s, RisGeometry a, RisGeometry b,
                                   Metric metric, double x_start, double x_stop,
                                   double step, double rho_th,
                                   ElementPatternMode mode) {
    const auto diff_at = [&](double x) -> double {
        Scenario sc = s;
        sc.ris_center.x = x;
        const PointMetrics ma = evaluate_point(sc, a, rho_th, mode);
        const PointMetrics mb = evaluate_point(sc, b, rho_th, mode);
        if (ma.degenerate || mb.degenerate) return std::nan("");
        return metric_value(ma, metric) - metric_value(mb, metric);
    };

    std::vector<double> positions;
    const std::size_t npts = grid_size(x_start, x_stop, step);
    double prev_x = x_start;
    double prev_f = diff_at(prev_x);
    for (std::size_t i = 1; i < npts; ++i) {
        const double x = x_start + static_cast<double>(i) * step;
        const double f = diff_at(x);
        if (std::isfinite(prev_f) && std::isfinite(f) && prev_f * f < 0.0) {
            // refine the bracket on the continuous model
            double lo = prev_x, hi = x, flo = prev_f;
            while (hi - lo > step / 100.0) {
                const double mid = 0.5 * (lo + hi);
                const double fm = diff_at(mid);
                if (!std::isfinite(fm)) break;
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            positions.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = f;
    }
    return positions;
}

std::optional<double> critical_beamwidth(const Scenario& s, double phi_start,
                                         double phi_stop, double step) {
    const std::size_t npts = grid_size(phi_start, phi_stop, step);
    std::vector<double> phis(npts);
    std::vector<char> ok(npts, 0);
    parallel_for(npts, [&](std::size_t lo, std::size_t hi) {
        Scenario sc = s;
        for (std::size_t i = lo; i < hi; ++i) {
            const double phi = phi_start + static_cast<double>(i) * step;
            phis[i] = phi;
            sc.hpbw_rad = phi;
            const CenterGeometry cg = derive_center_geometry(sc);
            try {
                const IlluminationEllipse e = ellipse_axes(cg, phi / 2.0);
                const int n2 = n_eff_2d(e, sc.ris).n_eff;
                const int n3 = n_eff_3d(e, sc.ris).n_eff;
                ok[i] = n2 >= n3 ? 1 : 0;
            } catch (const DegenerateBeamError&) {
                ok[i] = 0;
            }
        }
    });

    // smallest beamwidth from which the ordering holds through the top of
    // the grid (it flips back and forth below through floor ties)
    if (!ok.back()) return std::nullopt;
    std::size_t first = npts - 1;
    while (first > 0 && ok[first - 1]) --first;
    return phis[first];
}

const char* geometry_name(RisGeometry g) {
    switch (g) {
        case RisGeometry::Linear1D: return "1d";
        case RisGeometry::Planar2D: return "2d";
        case RisGeometry::Cylindrical3D: return "3d";
    }
    return "?";
}

const char* branch_name(CoverageBranch b) {
    switch (b) {
        case CoverageBranch::FullyIlluminated: return "full";
        case CoverageBranch::PartialBothAxes: return "partial-both";
        case CoverageBranch::PartialMajorOnly: return "partial-major";
        case CoverageBranch::CylWrapAround: return "wrap-around";
        case CoverageBranch::CylMixed: return "mixed";
        case CoverageBranch::CylContained: return "contained";
    }
    return "?";
}

const char* regime_name(FieldRegime r) {
    return r == FieldRegime::NearField ? "near" : "far";
}

void write_sweep_csv(std::ostream& os, const Scenario& s, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows, double rho_th) {
    const char* var_name = "x_s_m";
    switch (spec.variable) {
        case SweepVariable::RisX: var_name = "x_s_m"; break;
        case SweepVariable::RisHeight: var_name = "h_s_m"; break;
        case SweepVariable::Hpbw: var_name = "hpbw_deg"; break;
        case SweepVariable::Threshold: var_name = "rho_th_db"; break;
    }
    os << "# risgeo " << kVersion << " threshold_db=" << linear_to_db(rho_th)
       << " scenario: " << serialize_scenario(s) << "\n";
    os << var_name
       << ",geometry,n_eff,branch,received_power_dbm,mean_snr_db,p_out,"
          "fraunhofer_m,regime,degenerate\n";

    char buf[64];
    const auto num = [&](double v) -> std::string {
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    };
    for (const auto& row : rows) {
        double value = row.value;
        if (spec.variable == SweepVariable::Hpbw) value = rad_to_deg(value);
        if (spec.variable == SweepVariable::Threshold) value = linear_to_db(value);
        const PointMetrics& m = row.metrics;
        os << num(value) << ',' << geometry_name(row.geometry) << ',' << m.n_eff
           << ',' << branch_name(m.branch) << ','
           << num(m.received_power_w > 0.0 ? watt_to_dbm(m.received_power_w)
                                           : -std::numeric_limits<double>::infinity())
           << ','
           << num(m.mean_snr > 0.0 ? linear_to_db(m.mean_snr)
                                   : -std::numeric_limits<double>::infinity())
           << ',' << num(m.p_out) << ',' << num(m.fraunhofer_m) << ','
           << regime_name(m.regime) << ',' << (m.degenerate ? 1 : 0) << "\n";
    }
}

}  // namespace risgeo
