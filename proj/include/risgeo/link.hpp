#pragma once

#include "risgeo/types.hpp"

namespace risgeo {

/// Transmit pattern cos^2(pi (az - steer) / (2 hpbw)), truncated to zero at
/// and beyond the first null |az - steer| >= hpbw. Half power at half the
/// beamwidth. `hpbw` is the full half-power beamwidth in radians.
double tx_gain(double az_element, double az_steer, double hpbw);

/// RIS element pattern cos^3(az), zero outside [-pi/2, pi/2].
double element_pattern(double az);

/// Element pattern with elevation folded in via direction cosines:
/// cos^3(xi) with cos(xi) = cos(az) cos(el); AzimuthOnly ignores el.
double element_pattern(double az, double el, ElementPatternMode mode);

/// Near-field received power
///   P_r = P_t G_r (lambda^2 d_x d_y / 64 pi^3)
///         | sum_n sqrt(G_t,n F_t,n F_r,n) / (r_1,n r_2,n) |^2
/// with the transmit beam steered at the RIS center and all terms summed as
/// non-negative reals (perfect phase compensation). The summation is
/// Neumaier-compensated so the result is independent of element order.
/// Throws EmptyLayoutError on an empty layout.
LinkResult received_power(const Scenario& s, const ElementLayout& layout,
                          ElementPatternMode mode = ElementPatternMode::CombinedAngle);

/// Far-field reference: the same pattern sum with every per-element distance
/// replaced by the center distances r1, r2 (plane-wave amplitudes).
LinkResult far_field_power(const Scenario& s, const ElementLayout& layout,
                           ElementPatternMode mode = ElementPatternMode::CombinedAngle);

/// rho_bar = P_r / sigma_n^2.
double mean_snr(const LinkResult& lr, double noise_power_w);

}  // namespace risgeo
