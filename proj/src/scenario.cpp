#include "risgeo/scenario.hpp"

#include <cmath>
#include <sstream>

namespace risgeo {

namespace {

bool is_perfect_square(int n) {
    if (n <= 0) return false;
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return r * r == n;
}

}  // namespace

ValidationReport validate(const Scenario& s) {
    ValidationReport report;
    if (!(s.frequency_hz > 0.0)) report.push_back("non-positive frequency");
    if (!(s.hpbw_rad > 0.0 && s.hpbw_rad < kPi / 2.0)) report.push_back("hpbw out of (0, pi/2)");
    if (!(s.tx_power_w > 0.0)) report.push_back("non-positive tx power");
    if (!(s.noise_power_w > 0.0)) report.push_back("non-positive noise power");
    if (!(s.rx_gain > 0.0)) report.push_back("non-positive rx gain");
    if (s.ris_center.y == s.tx_position.y) report.push_back("ris-in-tx-plane");

    // The model reflects toward the Tx side; the Rx must sit strictly on it.
    const double ys = s.ris_center.y - s.tx_position.y;
    const double yr = s.ris_center.y - s.rx_position.y;
    if (ys != 0.0 && !(yr * (ys > 0.0 ? 1.0 : -1.0) > 0.0))
        report.push_back("rx not on the tx side of the ris plane");

    const auto& inv = s.ris;
    if (inv.total_elements <= 0) report.push_back("non-positive element count");
    if (inv.geometry == RisGeometry::Planar2D && !is_perfect_square(inv.total_elements))
        report.push_back("non-square element count");
    if (!(inv.element_spacing > 0.0)) report.push_back("non-positive element spacing");
    if (!(inv.element_width > 0.0) || !(inv.element_height > 0.0))
        report.push_back("non-positive element size");
    const double half_wave = s.wavelength() / 2.0;
    const double tol = half_wave * 1e-12;
    if (inv.element_width > half_wave + tol || inv.element_height > half_wave + tol)
        report.push_back("element size above half wavelength");

    if (!(s.fading.sigma1 > 0.0) || !(s.fading.sigma2 > 0.0))
        report.push_back("non-positive fading scale");
    return report;
}

void require_valid(const Scenario& s) {
    const auto report = validate(s);
    if (report.empty()) return;
    std::ostringstream msg;
    msg << "invalid scenario:";
    for (const auto& r : report) msg << " [" << r << "]";
    throw std::invalid_argument(msg.str());
}

CenterGeometry derive_center_geometry(const Scenario& s) {
    const Vec3& tx = s.tx_position;
    const Vec3& rx = s.rx_position;
    const Vec3& c = s.ris_center;
    if (c.y == tx.y)
        throw std::invalid_argument("ris-in-tx-plane: illumination undefined for y_s = y_t");

    CenterGeometry cg;
    cg.d1 = std::hypot(c.x - tx.x, c.y - tx.y);
    cg.r1 = std::hypot(cg.d1, c.z - tx.z);
    cg.d2 = std::hypot(c.x - rx.x, c.y - rx.y);
    cg.r2 = std::hypot(cg.d2, c.z - rx.z);

    cg.azimuth_normal_t = std::atan((c.x - tx.x) / (c.y - tx.y));
    cg.azimuth_plane_t = kPi / 2.0 - std::fabs(cg.azimuth_normal_t);
    cg.elevation_t = std::atan2(c.z - tx.z, cg.d1);

    // 0/0 only when the Rx coincides with the center horizontally; treat as broadside.
    cg.azimuth_normal_r = (cg.d2 > 0.0 && c.y != rx.y)
                              ? std::atan((c.x - rx.x) / (c.y - rx.y))
                              : 0.0;
    cg.azimuth_plane_r = kPi / 2.0 - std::fabs(cg.azimuth_normal_r);
    cg.elevation_r = cg.d2 > 0.0 ? std::atan2(c.z - rx.z, cg.d2) : kPi / 2.0;

    cg.wavelength = s.wavelength();
    return cg;
}

}  // namespace risgeo
