#include "risgeo/effective_elements.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace risgeo {

namespace {

// Absorbs rounding exactly at branch boundaries; anything worse is a logic error.
double clamp_unit(double x) {
    constexpr double kTol = 1e-12;
    if (x > 1.0) {
        if (x > 1.0 + kTol) throw std::logic_error("inverse-trig argument above 1");
        return 1.0;
    }
    if (x < -1.0) {
        if (x < -1.0 - kTol) throw std::logic_error("inverse-trig argument below -1");
        return -1.0;
    }
    return x;
}

int floor_capped(double area, double divisor, int cap) {
    if (!(area > 0.0)) return 0;
    const double n = std::floor(area / divisor);
    if (n >= static_cast<double>(cap)) return cap;
    return static_cast<int>(n);
}

}  // namespace

double side_length_2d(const RisInventory& inv) {
    return (2.0 * std::sqrt(static_cast<double>(inv.total_elements)) - 1.0) *
           inv.element_width;
}

double extent_3d(const RisInventory& inv) {
    return std::sqrt((inv.element_width * inv.element_height +
                      inv.element_spacing * inv.element_spacing) *
                     static_cast<double>(inv.total_elements) / kPi);
}

double element_area_divisor(const RisInventory& inv) {
    return 2.0 * inv.element_spacing * inv.element_spacing;
}

double clipped_cap_area(double a, double b, double chord) {
    if (chord >= 2.0 * a) return 0.0;
    const double root = std::sqrt(std::max(0.0, 4.0 * a * a - chord * chord));
    return kPi * a * b - (b * chord / (2.0 * a)) * root -
           2.0 * a * b * std::asin(clamp_unit(chord / (2.0 * a)));
}

double arc_mapped_semi_axis(double a, double l3d) {
    if (a >= l3d / 2.0) return kPi * l3d / 4.0;
    return kPi * l3d / 4.0 - (l3d / 2.0) * std::acos(clamp_unit(2.0 * a / l3d));
}

WrapAreas wrap_band_areas(double a, double b, double l3d) {
    WrapAreas w;
    w.s2 = kPi * kPi * l3d * l3d * b / (8.0 * a);
    w.s3 = (kPi * b * l3d / (2.0 * a)) * std::sqrt(std::max(0.0, 4.0 * a * a - l3d * l3d));
    return w;
}

PrefloorArea planar_prefloor_area(double a, double b, double l2d, double s_s) {
    const double sm = kPi * a * b;
    const double i2d = (2.0 * a - l2d) * (2.0 * b - l2d);
    PrefloorArea r;
    if (i2d > 0.0) {
        if (sm >= s_s) {
            r.area = s_s;
            r.branch = CoverageBranch::FullyIlluminated;
        } else {
            r.area = sm;
            r.branch = CoverageBranch::PartialBothAxes;
        }
    } else {
        // Only the major axis overflows; the chord caps are cut away. At
        // a = l2d/2 the cap area vanishes, so this joins the branch above
        // continuously.
        r.area = sm - (a > l2d / 2.0 ? clipped_cap_area(a, b, l2d) : 0.0);
        r.branch = CoverageBranch::PartialMajorOnly;
    }
    return r;
}

PrefloorArea cylinder_prefloor_area(double a, double b, double l3d) {
    const double half = l3d / 2.0;
    PrefloorArea r;
    if (a <= half && b <= half) {
        r.area = kPi * arc_mapped_semi_axis(a, l3d) * b;
        r.branch = CoverageBranch::CylContained;
    } else if (a > half && b < half) {
        const WrapAreas w = wrap_band_areas(a, b, l3d);
        r.area = w.s2 + w.s3;
        r.branch = CoverageBranch::CylMixed;
    } else {
        r.area = 0.0;  // count comes straight from the visibility limit
        r.branch = CoverageBranch::CylWrapAround;
    }
    return r;
}

EffectiveCount n_eff_1d(const IlluminationEllipse& e, const RisInventory& inv) {
    EffectiveCount c;
    const int n_total = inv.total_elements;
    // The line array lies along the in-plane horizontal axis.
    const double a = e.horizontal_semi_axis();
    c.n_eff = std::min(static_cast<int>(std::floor(a / inv.element_spacing)), n_total);
    c.branch = c.n_eff >= n_total ? CoverageBranch::FullyIlluminated
                                  : CoverageBranch::PartialMajorOnly;
    c.ris_extent = (n_total - 1) * inv.element_spacing + n_total * inv.element_width;
    return c;
}

EffectiveCount n_eff_2d(const IlluminationEllipse& e, const RisInventory& inv) {
    EffectiveCount c;
    const double l2d = side_length_2d(inv);
    const double s_s = l2d * l2d;
    const PrefloorArea pre = planar_prefloor_area(e.a, e.b, l2d, s_s);
    c.branch = pre.branch;
    c.ris_extent = l2d;
    c.overlap_indicator = (2.0 * e.a - l2d) * (2.0 * e.b - l2d);
    if (pre.branch == CoverageBranch::FullyIlluminated)
        c.n_eff = inv.total_elements;
    else
        c.n_eff = floor_capped(pre.area, element_area_divisor(inv), inv.total_elements);
    return c;
}

EffectiveCount n_eff_3d(const IlluminationEllipse& e, const RisInventory& inv) {
    EffectiveCount c;
    const double l3d = extent_3d(inv);
    const int visible_cap = inv.total_elements / 2;  // quarter cylinder faces the Rx
    const PrefloorArea pre = cylinder_prefloor_area(e.a, e.b, l3d);
    c.branch = pre.branch;
    c.ris_extent = l3d;
    if (pre.branch == CoverageBranch::CylWrapAround)
        c.n_eff = visible_cap;
    else
        c.n_eff = floor_capped(pre.area, element_area_divisor(inv), visible_cap);
    return c;
}

EffectiveCount n_eff_for(RisGeometry g, const IlluminationEllipse& e,
                         const RisInventory& inv) {
    switch (g) {
        case RisGeometry::Linear1D: return n_eff_1d(e, inv);
        case RisGeometry::Planar2D: return n_eff_2d(e, inv);
        case RisGeometry::Cylindrical3D: return n_eff_3d(e, inv);
    }
    throw std::logic_error("unknown geometry");
}

FraunhoferResult fraunhofer(RisGeometry g, const EffectiveCount& count,
                            const IlluminationEllipse& e, const RisInventory& inv,
                            double wavelength, double link_distance_m) {
    if (count.n_eff < 1) throw ZeroApertureError("fraunhofer: n_eff = 0");

    const int n = count.n_eff;
    double d_aperture = 0.0;
    switch (g) {
        case RisGeometry::Linear1D:
            d_aperture = (n - 1) * inv.element_spacing + n * inv.element_width;
            break;
        case RisGeometry::Planar2D:
            // Once the count saturates, the whole panel is the aperture; D is
            // its diagonal and the distance stops growing.
            d_aperture = n >= inv.total_elements ? std::sqrt(2.0) * side_length_2d(inv)
                                                 : 2.0 * e.a;
            break;
        case RisGeometry::Cylindrical3D: {
            const double l3d = extent_3d(inv);
            if (n >= inv.total_elements / 2) {
                // Diagonal of the unrolled visible half: height l3d, arc pi l3d / 2.
                d_aperture = std::sqrt(1.0 + kPi * kPi / 4.0) * l3d;
            } else {
                d_aperture = 2.0 * arc_mapped_semi_axis(e.a, l3d);
            }
            break;
        }
    }

    FraunhoferResult r;
    r.aperture = d_aperture;
    r.distance = 2.0 * d_aperture * d_aperture / wavelength;
    r.regime = link_distance_m < r.distance ? FieldRegime::NearField : FieldRegime::FarField;
    return r;
}

}  // namespace risgeo
