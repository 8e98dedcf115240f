#pragma once

#include "risgeo/types.hpp"

namespace risgeo {

/// Side length of the square 2D panel, l_2D = (2 sqrt(N) - 1) d_x.
double side_length_2d(const RisInventory& inv);

/// Cylinder height (and diameter), l_3D = sqrt((d_x d_y + d_s^2) N / pi).
double extent_3d(const RisInventory& inv);

/// Per-element area divisor used by every counting formula, 2 d_s^2.
/// Kept in one place: it is inconsistent by a factor of two with the
/// coordinate pitch d_x + d_s, and experiments may want to toggle it.
double element_area_divisor(const RisInventory& inv);

/// Area of the two elliptical caps cut off by the vertical chords at
/// +-chord/2 (non-negative; zero when the chord spans the whole ellipse):
///   S1 = pi a b - (b chord / 2a) sqrt(4a^2 - chord^2) - 2ab asin(chord / 2a)
double clipped_cap_area(double a, double b, double chord);

/// Arc length on the cylinder circle subtended by a half-chord `a`:
///   a* = pi l3d / 4 - (l3d / 2) acos(2a / l3d)  for a <= l3d/2,
/// saturating at the quarter-circumference pi l3d / 4 beyond.
double arc_mapped_semi_axis(double a, double l3d);

/// Central wrapped band area S3 and the residual cap area S2 of the
/// ellipse-on-cylinder overlap for a > l3d/2:
///   S2 = pi^2 l3d^2 b / (8a)   (closed form of the polar-coordinate integral)
///   S3 = (pi b l3d / 2a) sqrt(4a^2 - l3d^2)
struct WrapAreas {
    double s2 = 0.0;
    double s3 = 0.0;
};
WrapAreas wrap_band_areas(double a, double b, double l3d);

/// Pre-floor effective area and branch for the planar panel. Exposed for the
/// branch-boundary continuity checks; the count operations floor this once.
struct PrefloorArea {
    double area = 0.0;
    CoverageBranch branch = CoverageBranch::PartialBothAxes;
};
PrefloorArea planar_prefloor_area(double a, double b, double l2d, double s_s);
PrefloorArea cylinder_prefloor_area(double a, double b, double l3d);

/// N_eff for the line array: floor(a / d_s) capped at N, using the in-plane
/// horizontal semi-axis.
EffectiveCount n_eff_1d(const IlluminationEllipse& e, const RisInventory& inv);

/// N_eff for the square panel per the I_2D / S_m-vs-S_s case split, with the
/// chord-clipped area S_m - S1 when only the major axis overflows.
EffectiveCount n_eff_2d(const IlluminationEllipse& e, const RisInventory& inv);

/// N_eff for the cylinder: arc-stretched ellipse when contained, S2 + S3 when
/// the major axis wraps, N/2 when both axes wrap (only half the ring is ever
/// visible from one side).
EffectiveCount n_eff_3d(const IlluminationEllipse& e, const RisInventory& inv);

EffectiveCount n_eff_for(RisGeometry g, const IlluminationEllipse& e,
                         const RisInventory& inv);

/// Fraunhofer distance 2 D^2 / lambda for the illuminated aperture.
/// D depends on geometry and on whether the count has reached its cap:
///   1D:           D = (n-1) d_s + n d_x (constant once n == N)
///   2D partial:   D = 2a            full: D = sqrt(2) l_2D
///   3D partial:   D = 2a*           full: D = sqrt(1 + pi^2/4) l_3D
/// The regime compares `link_distance_m` against the boundary.
/// Throws ZeroApertureError when count.n_eff < 1.
FraunhoferResult fraunhofer(RisGeometry g, const EffectiveCount& count,
                            const IlluminationEllipse& e, const RisInventory& inv,
                            double wavelength, double link_distance_m);

}  // namespace risgeo
