#pragma once

#include "risgeo/types.hpp"

namespace risgeo {

/// Computes the illuminated ellipse cast by a conical beam of half-angle
/// `phi0` steered at the RIS center.
///
/// Axis segments (Law of Sines against the plane azimuth, Law of Cosines
/// complement against the elevation):
///   a' = r1 sin(phi0) / sin(phi_t + phi0),  a* = r1 sin(phi0) / sin(phi_t - phi0)
///   b' = r1 sin(phi0) / cos(theta_t + phi0), b* = r1 sin(phi0) / cos(theta_t - phi0)
/// with the averaged semi-axes a = (a' + a*)/2, b = (b' + b*)/2.
///
/// Throws DegenerateBeamError when phi_t <= phi0 or |theta_t| + phi0 >= pi/2
/// (a beam edge parallel to or missing the surface).
IlluminationEllipse ellipse_axes(const CenterGeometry& cg, double phi0);

/// S_m = pi a b.
double illuminated_area(const IlluminationEllipse& e);

}  // namespace risgeo
