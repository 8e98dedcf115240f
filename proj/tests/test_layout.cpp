#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "risgeo/effective_elements.hpp"
#include "risgeo/illumination.hpp"
#include "risgeo/layout.hpp"
#include "risgeo/scenario.hpp"
#include "test_helpers.hpp"

using namespace risgeo;

namespace {

EffectiveCount count_of(int n, double extent = 0.0) {
    EffectiveCount c;
    c.n_eff = n;
    c.ris_extent = extent;
    return c;
}

IlluminationEllipse ellipse(double a, double b) {
    IlluminationEllipse e;
    e.a = a;
    e.b = b;
    e.area = kPi * a * b;
    return e;
}

}  // namespace

TEST_CASE("line layout center element and law-of-cosines distances") {
    Scenario s = test::baseline_scenario();
    s.ris_center = {0.0, 2.0, 3.0};  // broadside, r1 = 2
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout lay = layout_1d(s, cg, count_of(3));
    REQUIRE(lay.size() == 3);
    CHECK(lay.r1[1] == doctest::Approx(cg.r1).epsilon(1e-15));  // center element
    // offset d_s at broadside: sqrt(r1^2 + d_s^2)
    CHECK(lay.r1[2] == doctest::Approx(2.000458496005933).epsilon(1e-12));
    CHECK(lay.r1[0] == doctest::Approx(lay.r1[2]).epsilon(1e-15));  // even in n
    CHECK(lay.positions[1].x == doctest::Approx(0.0));
    CHECK(lay.positions[2].x == doctest::Approx(s.ris.element_spacing));
}

TEST_CASE("line layout skews toward the Tx side off broadside") {
    Scenario s = test::baseline_scenario();
    s.ris_center = {2.0, 2.0, 3.0};
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout lay = layout_1d(s, cg, count_of(5));
    REQUIRE(lay.size() == 5);
    // +x elements are farther from the Tx at x=0
    CHECK(lay.r1[4] > lay.r1[2]);
    CHECK(lay.r1[0] < lay.r1[2]);
    // law-of-cosines with the plane-convention azimuth against exact 3D distance:
    // equal heights make them coincide
    for (std::size_t i = 0; i < lay.size(); ++i)
        CHECK(lay.r1[i] == doctest::Approx(distance(lay.positions[i], s.tx_position))
                               .epsilon(1e-12));
}

TEST_CASE("even planar grid centers on the RIS center") {
    Scenario s = test::baseline_scenario();
    s.ris.total_elements = 4;
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout lay = layout_2d_full(s, cg);
    REQUIRE(lay.size() == 4);
    const double pitch = s.ris.element_width + s.ris.element_spacing;
    Vec3 centroid{0.0, 0.0, 0.0};
    for (const auto& p : lay.positions) {
        centroid.x += p.x / 4.0;
        centroid.y += p.y / 4.0;
        centroid.z += p.z / 4.0;
        CHECK(p.y == s.ris_center.y);  // plane invariant
    }
    CHECK(centroid.x == doctest::Approx(s.ris_center.x).epsilon(1e-12));
    CHECK(centroid.z == doctest::Approx(s.ris_center.z).epsilon(1e-12));
    CHECK(std::fabs(lay.u[0]) == doctest::Approx(pitch / 2.0));
}

TEST_CASE("odd planar grid has the center element exactly") {
    Scenario s = test::baseline_scenario();
    s.ris.total_elements = 25;
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout lay = layout_2d_full(s, cg);
    REQUIRE(lay.size() == 25);
    bool found = false;
    for (std::size_t i = 0; i < lay.size(); ++i) {
        if (lay.u[i] == 0.0 && lay.v[i] == 0.0) {
            found = true;
            CHECK(lay.r1[i] == doctest::Approx(cg.r1).epsilon(1e-15));
            CHECK(lay.positions[i].x == doctest::Approx(s.ris_center.x));
        }
    }
    CHECK(found);
    // center distance bracketed by the element distances
    const auto [mn, mx] = std::minmax_element(lay.r1.begin(), lay.r1.end());
    CHECK(*mn <= cg.r1);
    CHECK(cg.r1 <= *mx);
}

TEST_CASE("farthest planar element is a corner") {
    Scenario s = test::baseline_scenario();
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout lay = layout_2d_full(s, cg);
    REQUIRE(lay.size() == 100);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < lay.size(); ++i)
        if (lay.r1[i] > lay.r1[imax]) imax = i;
    CHECK(lay.r1[imax] > cg.r1);
    const bool corner_row = lay.row[imax] == 0 || lay.row[imax] == 9;
    const bool corner_col = lay.col[imax] == 0 || lay.col[imax] == 9;
    CHECK(corner_row);
    CHECK(corner_col);
}

TEST_CASE("cylinder grid sits on the cylinder and counts about N/2") {
    Scenario s = test::baseline_scenario();
    s.ris.geometry = RisGeometry::Cylindrical3D;
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout lay = layout_3d_full(s, cg);
    // 13 ring positions x 4 rows for N = 100 under the rounded index ranges
    CHECK(lay.size() == 52);

    const double radius = extent_3d(s.ris) / 2.0;
    const double ax = s.ris_center.x;
    const double ay = s.ris_center.y + radius;  // axis behind the facing point
    for (const auto& p : lay.positions) {
        const double d = std::hypot(p.x - ax, p.y - ay);
        CHECK(d == doctest::Approx(radius).epsilon(1e-9));
    }
}

TEST_CASE("odd cylinder grid passes through the RIS center") {
    Scenario s = test::baseline_scenario();
    s.ris.geometry = RisGeometry::Cylindrical3D;
    s.ris.total_elements = 50;  // 9 ring positions x 3 rows
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout lay = layout_3d_full(s, cg);
    CHECK(lay.size() == 27);
    bool found = false;
    for (std::size_t i = 0; i < lay.size(); ++i) {
        if (lay.u[i] == 0.0 && lay.v[i] == 0.0) {
            found = true;
            CHECK(lay.positions[i].x == doctest::Approx(s.ris_center.x).epsilon(1e-12));
            CHECK(lay.positions[i].y == doctest::Approx(s.ris_center.y).epsilon(1e-12));
            CHECK(lay.positions[i].z == doctest::Approx(s.ris_center.z).epsilon(1e-12));
            CHECK(lay.r1[i] == doctest::Approx(cg.r1).epsilon(1e-12));
        }
    }
    CHECK(found);
}

TEST_CASE("partial selection: whole-surface ellipse is the identity") {
    Scenario s = test::baseline_scenario();
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout full = layout_2d_full(s, cg);
    const ElementLayout sel =
        layout_partial(full, ellipse(10.0, 10.0), count_of(100, side_length_2d(s.ris)));
    REQUIRE(sel.size() == full.size());
    for (std::size_t i = 0; i < sel.size(); ++i) {
        CHECK(sel.row[i] == full.row[i]);
        CHECK(sel.col[i] == full.col[i]);
    }
}

TEST_CASE("partial selection keeps the smallest elliptic radii") {
    // 5x5 grid, near-circular spot just over one spacing: the radius rule
    // keeps the center plus its 4-neighborhood.
    Scenario s = test::baseline_scenario();
    s.ris.total_elements = 25;
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout full = layout_2d_full(s, cg);
    const double ds = s.ris.element_spacing;
    const ElementLayout sel =
        layout_partial(full, ellipse(1.01 * ds, 1.01 * ds), count_of(5));
    REQUIRE(sel.size() == 5);
    std::multiset<std::pair<int, int>> offsets;
    const double pitch = s.ris.element_width + ds;
    for (std::size_t i = 0; i < 5; ++i)
        offsets.insert({static_cast<int>(std::lround(sel.u[i] / pitch)),
                        static_cast<int>(std::lround(sel.v[i] / pitch))});
    const std::multiset<std::pair<int, int>> expected{
        {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    CHECK(offsets == expected);
}

TEST_CASE("partial selection edge cases") {
    Scenario s = test::baseline_scenario();
    const CenterGeometry cg = derive_center_geometry(s);
    const ElementLayout full = layout_2d_full(s, cg);
    CHECK(layout_partial(full, ellipse(0.1, 0.1), count_of(0)).empty());
    CHECK_THROWS_AS(layout_partial(full, ellipse(0.1, 0.1), count_of(101)),
                    InsufficientElementsError);
}

TEST_CASE("partial selection is deterministic and canonically ordered") {
    Scenario s = test::baseline_scenario();
    const CenterGeometry cg = derive_center_geometry(s);
    const IlluminationEllipse e = ellipse_axes(cg, s.hpbw_rad / 2.0);
    const EffectiveCount c = n_eff_2d(e, s.ris);
    const ElementLayout a = build_layout(s, cg, e, c);
    const ElementLayout b = build_layout(s, cg, e, c);
    REQUIRE(a.size() == b.size());
    REQUIRE(static_cast<int>(a.size()) == c.n_eff);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.row[i] == b.row[i]);
        CHECK(a.col[i] == b.col[i]);
        CHECK(a.r1[i] == b.r1[i]);
        if (i > 0) {
            const bool ordered = a.row[i] > a.row[i - 1] ||
                                 (a.row[i] == a.row[i - 1] && a.col[i] > a.col[i - 1]);
            CHECK(ordered);
        }
    }
}
