#include "risgeo/link.hpp"

#include <cmath>

namespace risgeo {

namespace {

// Neumaier-compensated accumulation: the coherent sum adds thousands of
// similar-magnitude reciprocal-distance terms and must be order-independent.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double t) {
        const double x = sum + t;
        if (std::fabs(sum) >= std::fabs(t))
            comp += (sum - x) + t;
        else
            comp += (t - x) + sum;
        sum = x;
    }
    double value() const { return sum + comp; }
};

double pattern_sum(const Scenario& s, const ElementLayout& layout,
                   ElementPatternMode mode, bool factor_distances) {
    const Vec3& tx = s.tx_position;
    const Vec3& c = s.ris_center;
    const double steer = std::atan2(c.x - tx.x, c.y - tx.y);

    CompensatedSum acc;
    const std::size_t n = layout.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& p = layout.positions[i];
        const double view_az = std::atan2(p.x - tx.x, p.y - tx.y);
        const double g = tx_gain(view_az, steer, s.hpbw_rad);
        const double ft = element_pattern(layout.azimuth_t[i], layout.elevation_t[i], mode);
        const double fr = element_pattern(layout.azimuth_r[i], layout.elevation_r[i], mode);
        const double num = std::sqrt(g * ft * fr);
        acc.add(factor_distances ? num : num / (layout.r1[i] * layout.r2[i]));
    }
    return acc.value();
}

LinkResult assemble(const Scenario& s, double coherent) {
    const double lam = s.wavelength();
    const double prefactor = lam * lam * s.ris.element_width * s.ris.element_height /
                             (64.0 * kPi * kPi * kPi);
    LinkResult lr;
    lr.coherent_sum = coherent;
    lr.received_power_w = s.tx_power_w * s.rx_gain * prefactor * coherent * coherent;
    lr.mean_snr = lr.received_power_w / s.noise_power_w;
    return lr;
}

}  // namespace

double tx_gain(double az_element, double az_steer, double hpbw) {
    if (!(hpbw > 0.0)) throw std::domain_error("tx_gain: hpbw must be positive");
    const double delta = az_element - az_steer;
    if (std::fabs(delta) >= hpbw) return 0.0;  // truncate at the first null
    const double c = std::cos(kPi * delta / (2.0 * hpbw));
    return c * c;
}

double element_pattern(double az) {
    if (std::fabs(az) > kPi / 2.0) return 0.0;
    const double c = std::cos(az);
    return c * c * c;
}

double element_pattern(double az, double el, ElementPatternMode mode) {
    if (mode == ElementPatternMode::AzimuthOnly) return element_pattern(az);
    const double c = std::cos(az) * std::cos(el);
    if (c <= 0.0) return 0.0;
    return c * c * c;
}

LinkResult received_power(const Scenario& s, const ElementLayout& layout,
                          ElementPatternMode mode) {
    if (layout.empty()) throw EmptyLayoutError("received_power: empty layout");
    return assemble(s, pattern_sum(s, layout, mode, false));
}

LinkResult far_field_power(const Scenario& s, const ElementLayout& layout,
                           ElementPatternMode mode) {
    if (layout.empty()) throw EmptyLayoutError("far_field_power: empty layout");
    const double r1 = distance(s.ris_center, s.tx_position);
    const double r2 = distance(s.ris_center, s.rx_position);
    return assemble(s, pattern_sum(s, layout, mode, true) / (r1 * r2));
}

double mean_snr(const LinkResult& lr, double noise_power_w) {
    return lr.received_power_w / noise_power_w;
}

}  // namespace risgeo
