#pragma once

#include "risgeo/types.hpp"

namespace risgeo {

/// Line array of count.n_eff elements along the x-axis through the RIS
/// center at pitch d_s. Per-element distances use the Law of Cosines against
/// the plane-convention azimuths; angles come from the actual coordinates.
ElementLayout layout_1d(const Scenario& s, const CenterGeometry& cg,
                        const EffectiveCount& count);

/// Full sqrt(N) x sqrt(N) grid centered on the RIS center at pitch d_x + d_s.
/// Even counts use half-integer offsets so the centroid is the center exactly.
ElementLayout layout_2d_full(const Scenario& s, const CenterGeometry& cg);

/// Full visible-half cylinder grid: vertical pitch d_x + d_s, ring pitch d_s
/// of arc length on the circle of diameter l_3D whose axis is vertical and
/// behind the RIS center. Generates about N/2 elements.
ElementLayout layout_3d_full(const Scenario& s, const CenterGeometry& cg);

/// Keeps the count.n_eff elements with the smallest normalized elliptic
/// radius (u/a)^2 + (v/b)^2 in in-surface coordinates (arc length on the
/// cylinder, where the ellipse axis maps to a*). Ties break by row-major
/// grid index; the result is re-sorted canonically by (row, col).
/// Throws InsufficientElementsError when the full layout is smaller than
/// count.n_eff.
ElementLayout layout_partial(const ElementLayout& full, const IlluminationEllipse& e,
                             const EffectiveCount& count);

/// Convenience: full grid + partial selection for the geometry at hand.
ElementLayout build_layout(const Scenario& s, const CenterGeometry& cg,
                           const IlluminationEllipse& e, const EffectiveCount& count);

namespace detail {

/// One selected element before its world-space fields are computed:
/// in-surface offsets and the generating grid indices.
struct RawElement {
    double u = 0.0;
    double v = 0.0;
    int row = 0;
    int col = 0;
};

/// The single source of truth for element enumeration and elliptic-radius
/// selection; build_layout and the fused power kernel both start here.
/// Returns a reference to a thread-local buffer valid until the next call.
const std::vector<RawElement>& select_elements(const Scenario& s,
                                               const IlluminationEllipse& e,
                                               const EffectiveCount& count,
                                               RisGeometry g);

/// Precomputed quantities for mapping in-surface offsets to world space.
struct SurfaceFrame {
    RisGeometry geometry = RisGeometry::Planar2D;
    Vec3 center;
    double sg = 1.0;      // +1 when the Tx side is at smaller y
    double radius = 0.0;  // cylinder radius l_3D / 2
};
SurfaceFrame make_surface_frame(RisGeometry g, const Scenario& s);

/// World position and horizontal inward-normal of an element at in-surface
/// offsets (u, v).
void surface_point(const SurfaceFrame& f, double u, double v, Vec3& pos, double& nx,
                   double& ny);

}  // namespace detail

}  // namespace risgeo
