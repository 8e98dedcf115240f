#include <doctest.h>

#include <algorithm>

#include "risgeo/scenario.hpp"
#include "test_helpers.hpp"

using namespace risgeo;

namespace {

bool contains(const ValidationReport& r, const std::string& tag) {
    return std::find(r.begin(), r.end(), tag) != r.end();
}

}  // namespace

TEST_CASE("center geometry at broadside, equal heights") {
    Scenario s = test::baseline_scenario();
    s.ris_center = {0.0, 2.0, 3.0};
    const CenterGeometry cg = derive_center_geometry(s);
    CHECK(cg.r1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(cg.d1 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(cg.elevation_t == doctest::Approx(0.0));
    CHECK(cg.azimuth_plane_t == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(cg.wavelength == doctest::Approx(0.085654988).epsilon(1e-9));
}

TEST_CASE("center geometry at the 45 degree symmetric point") {
    Scenario s = test::baseline_scenario();
    s.ris_center = {2.0, 2.0, 3.0};
    const CenterGeometry cg = derive_center_geometry(s);
    CHECK(cg.d1 == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
    CHECK(cg.r1 == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
    CHECK(rad_to_deg(cg.azimuth_plane_t) == doctest::Approx(45.0).epsilon(1e-12));
}

TEST_CASE("center geometry with elevation offset") {
    Scenario s = test::baseline_scenario();
    s.ris_center = {2.0, 2.0, 4.0};
    const CenterGeometry cg = derive_center_geometry(s);
    CHECK(cg.r1 == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(rad_to_deg(cg.elevation_t) == doctest::Approx(19.4712206345).epsilon(1e-9));
    // r1^2 = d1^2 + (h_s - h_t)^2 and r >= d invariants
    CHECK(cg.r1 * cg.r1 ==
          doctest::Approx(cg.d1 * cg.d1 + 1.0).epsilon(1e-14));
    CHECK(cg.r1 >= cg.d1);
    CHECK(cg.r2 >= cg.d2);
}

TEST_CASE("derive_center_geometry rejects RIS plane through the Tx") {
    Scenario s = test::baseline_scenario();
    s.ris_center.y = 0.0;
    CHECK_THROWS_AS(derive_center_geometry(s), std::invalid_argument);
}

TEST_CASE("validate accepts the baseline deployment") {
    CHECK(validate(test::baseline_scenario()).empty());
}

TEST_CASE("validate reports violations by tag") {
    Scenario s = test::baseline_scenario();
    s.ris_center.y = 0.0;
    CHECK(contains(validate(s), "ris-in-tx-plane"));

    s = test::baseline_scenario();
    s.ris.total_elements = 99;
    CHECK(contains(validate(s), "non-square element count"));

    s = test::baseline_scenario();
    s.ris.geometry = RisGeometry::Linear1D;
    s.ris.total_elements = 99;  // only the planar grid needs a square count
    CHECK(validate(s).empty());

    s = test::baseline_scenario();
    s.tx_power_w = 0.0;
    s.hpbw_rad = 2.0;
    const auto report = validate(s);
    CHECK(contains(report, "non-positive tx power"));
    CHECK(contains(report, "hpbw out of (0, pi/2)"));

    s = test::baseline_scenario();
    s.ris.element_width = s.wavelength();  // above the sub-wavelength bound
    CHECK(contains(validate(s), "element size above half wavelength"));

    s = test::baseline_scenario();
    s.rx_position.y = 5.0;  // behind the RIS plane
    CHECK_FALSE(validate(s).empty());
}

TEST_CASE("mirror symmetry across the x = 0 plane") {
    Scenario s = test::baseline_scenario();
    for (const double xs : {0.5, 2.0, 7.25}) {
        s.ris_center = {xs, 2.0, 3.7};
        const CenterGeometry cg = derive_center_geometry(s);

        Scenario m = s;
        m.ris_center.x = -xs;
        m.rx_position.x = -m.rx_position.x;
        const CenterGeometry cgm = derive_center_geometry(m);

        CHECK(cgm.r1 == doctest::Approx(cg.r1).epsilon(1e-14));
        CHECK(cgm.r2 == doctest::Approx(cg.r2).epsilon(1e-14));
        CHECK(cgm.d1 == doctest::Approx(cg.d1).epsilon(1e-14));
        CHECK(cgm.d2 == doctest::Approx(cg.d2).epsilon(1e-14));
        CHECK(cgm.elevation_t == doctest::Approx(cg.elevation_t).epsilon(1e-14));
        CHECK(cgm.azimuth_plane_t ==
              doctest::Approx(cg.azimuth_plane_t).epsilon(1e-14));
        CHECK(cgm.azimuth_normal_t ==
              doctest::Approx(-cg.azimuth_normal_t).epsilon(1e-14));
    }
}
