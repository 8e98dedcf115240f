#pragma once

#include <cmath>
#include <vector>

#include "risgeo/types.hpp"

namespace risgeo::test {

/// Baseline deployment: 3.5 GHz, N = 100 half-wavelength elements, 0 dBm Tx,
/// -100 dBm noise, 5 degree beam, RIS at (2, 2, 3).
inline Scenario baseline_scenario() {
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

// ---- independent quadrature oracle for the regularized incomplete gamma ----
//
// P(s, x) = (1 / Gamma(s)) int_0^x t^(s-1) e^-t dt. Substituting t = u^2
// removes the endpoint singularity for s >= 1/2:
//   P(s, x) = 2 int_0^sqrt(x) u^(2s-1) e^(-u^2) du / Gamma(s).
// Composite Gauss-Legendre on many uniform subintervals; entirely separate
// from the series/continued-fraction implementation under test.

struct GaussLegendre {
    std::vector<double> node;
    std::vector<double> weight;

    explicit GaussLegendre(int n) : node(n), weight(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / pp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            node[i] = -x;
            node[n - 1 - i] = x;
            weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
            weight[n - 1 - i] = weight[i];
        }
    }
};

inline double gamma_p_quadrature(double s, double x, int subintervals = 1600) {
    if (x <= 0.0) return 0.0;
    static const GaussLegendre gl(24);
    const double upper = std::sqrt(x);
    const double lg = std::lgamma(s);
    const double h = upper / subintervals;
    double total = 0.0;
    for (int k = 0; k < subintervals; ++k) {
        const double mid = (k + 0.5) * h;
        double part = 0.0;
        for (std::size_t j = 0; j < gl.node.size(); ++j) {
            const double u = mid + 0.5 * h * gl.node[j];
            if (u <= 0.0) continue;
            part += gl.weight[j] * std::exp((2.0 * s - 1.0) * std::log(u) - u * u - lg);
        }
        total += part * 0.5 * h;
    }
    return 2.0 * total;
}

}  // namespace risgeo::test
