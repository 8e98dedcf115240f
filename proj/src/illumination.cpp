#include "risgeo/illumination.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace risgeo {

IlluminationEllipse ellipse_axes(const CenterGeometry& cg, double phi0) {
    const double phi_t = cg.azimuth_plane_t;
    const double theta_t = cg.elevation_t;

    if (!(phi0 > 0.0) || phi0 >= phi_t || std::fabs(theta_t) + phi0 >= kPi / 2.0) {
        std::ostringstream msg;
        msg << "degenerate beam: phi0=" << phi0 << " phi_t=" << phi_t
            << " theta_t=" << theta_t;
        throw DegenerateBeamError(msg.str());
    }

    const double sn = cg.r1 * std::sin(phi0);
    IlluminationEllipse e;
    e.a_prime = sn / std::sin(phi_t + phi0);
    e.a_star = sn / std::sin(phi_t - phi0);
    e.b_prime = sn / std::cos(theta_t + phi0);
    e.b_star = sn / std::cos(theta_t - phi0);
    e.a = 0.5 * (e.a_prime + e.a_star);
    e.b = 0.5 * (e.b_prime + e.b_star);

    // The counting case analysis assumes a >= b; keep the raw orientation
    // recoverable through the flag.
    if (e.b > e.a) {
        std::swap(e.a, e.b);
        std::swap(e.a_prime, e.b_prime);
        std::swap(e.a_star, e.b_star);
        e.axes_swapped = true;
    }
    e.area = kPi * e.a * e.b;
    return e;
}

double illuminated_area(const IlluminationEllipse& e) { return kPi * e.a * e.b; }

}  // namespace risgeo
