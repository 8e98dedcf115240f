#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace risgeo {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kPi = 3.14159265358979323846;

/// Minimal 3-vector in meters. Components are world coordinates (x, y, z).
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

enum class RisGeometry { Linear1D, Planar2D, Cylindrical3D };

enum class CoverageBranch {
    FullyIlluminated,
    PartialBothAxes,
    PartialMajorOnly,
    CylWrapAround,
    CylMixed,
    CylContained,
};

enum class FieldRegime { NearField, FarField };

/// How the RIS element pattern treats elevation. CombinedAngle folds azimuth
/// and elevation into the angle off the element normal via direction cosines;
/// AzimuthOnly ignores elevation entirely.
enum class ElementPatternMode { CombinedAngle, AzimuthOnly };

struct FadingParams {
    double sigma1 = 1.0;  // Rayleigh scale, Tx-RIS link
    double sigma2 = 1.0;  // Rayleigh scale, RIS-Rx link
};

struct RisInventory {
    RisGeometry geometry = RisGeometry::Planar2D;
    int total_elements = 100;
    double element_width = 0.0;    // d_x, meters
    double element_height = 0.0;   // d_y, meters
    double element_spacing = 0.0;  // d_s, meters
};

/// Full deployment description. All quantities SI, angles in radians.
struct Scenario {
    Vec3 tx_position{0.0, 0.0, 3.0};
    Vec3 rx_position{5.0, 0.0, 1.5};
    Vec3 ris_center{2.0, 2.0, 3.0};
    double frequency_hz = 3.5e9;
    double hpbw_rad = 0.0;      // full half-power beamwidth
    double tx_power_w = 1e-3;
    double noise_power_w = 1e-13;
    double rx_gain = 1.0;
    RisInventory ris;
    FadingParams fading;

    double wavelength() const { return kSpeedOfLight / frequency_hz; }
};

/// Center-of-RIS geometry derived from a Scenario.
///
/// Two azimuth conventions coexist and are stored as distinct fields:
///  - azimuth_plane_*  : measured from the RIS plane, pi/2 at broadside
///                       (the convention the illumination ellipse uses);
///  - azimuth_normal_* : signed, measured from the surface normal, 0 at
///                       broadside (the per-element convention).
/// They are complements in magnitude.
struct CenterGeometry {
    double r1 = 0.0;  // 3D Tx to RIS-center distance
    double r2 = 0.0;  // 3D RIS-center to Rx distance
    double d1 = 0.0;  // horizontal Tx to RIS distance
    double d2 = 0.0;  // horizontal RIS to Rx distance
    double azimuth_plane_t = 0.0;
    double azimuth_normal_t = 0.0;
    double elevation_t = 0.0;
    double azimuth_plane_r = 0.0;
    double azimuth_normal_r = 0.0;
    double elevation_r = 0.0;
    double wavelength = 0.0;
};

/// Elliptical beam footprint on the RIS plane. `a` and `b` are the averaged
/// semi-axes with a >= b enforced; `axes_swapped` records whether the raw
/// azimuthal axis came out smaller than the elevational one.
struct IlluminationEllipse {
    double a_prime = 0.0;
    double a_star = 0.0;
    double b_prime = 0.0;
    double b_star = 0.0;
    double a = 0.0;
    double b = 0.0;
    double area = 0.0;
    bool axes_swapped = false;

    /// In-plane horizontal semi-extent (the azimuthal axis regardless of swap).
    double horizontal_semi_axis() const { return axes_swapped ? b : a; }
    /// Vertical semi-extent (the elevational axis regardless of swap).
    double vertical_semi_axis() const { return axes_swapped ? a : b; }
};

struct EffectiveCount {
    int n_eff = 0;
    CoverageBranch branch = CoverageBranch::PartialBothAxes;
    double ris_extent = 0.0;         // l_2D, l_3D, or the 1D array length
    double overlap_indicator = 0.0;  // I_2D, populated for Planar2D only
};

struct FraunhoferResult {
    double distance = 0.0;  // 2 D^2 / lambda
    double aperture = 0.0;  // the largest dimension D used
    FieldRegime regime = FieldRegime::FarField;
};

/// Per-element positions, distances, and angles for the near-field sum.
/// Azimuths are in the normal convention relative to each element's local
/// inward surface normal (for planar surfaces this reduces to the global
/// normal); elevations are the element's elevation seen from the endpoint.
/// `u`/`v` are in-surface offsets from the RIS center (arc length and height
/// on the cylinder); `row`/`col` are the generating grid indices.
struct ElementLayout {
    RisGeometry geometry = RisGeometry::Planar2D;
    std::vector<Vec3> positions;
    std::vector<double> r1;
    std::vector<double> r2;
    std::vector<double> azimuth_t;
    std::vector<double> elevation_t;
    std::vector<double> azimuth_r;
    std::vector<double> elevation_r;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<int> row;
    std::vector<int> col;

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
};

struct LinkResult {
    double received_power_w = 0.0;
    double mean_snr = 0.0;      // received_power_w / noise_power_w
    double coherent_sum = 0.0;  // |sum ...| before squaring, 1/m^2
};

/// Gamma moment-match parameters for one Rayleigh-product channel.
/// k is dimensionless shape, delta is a rate (1/amplitude).
struct MomentMatch {
    double k = 0.0;
    double delta = 0.0;
    double shape_total = 0.0;  // k * n_eff
};

struct OutageCurve {
    std::vector<double> thresholds;     // dimensionless SNR
    std::vector<double> probabilities;  // in [0, 1]
};

// ---- error types ----------------------------------------------------------

/// A beam edge is parallel to or misses the RIS plane; the illumination
/// ellipse is undefined past grazing.
struct DegenerateBeamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyLayoutError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientElementsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroApertureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- unit conversions (CLI boundary uses degrees/dBm, internals SI) -------

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

inline double watt_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }
inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace risgeo
