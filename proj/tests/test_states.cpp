#include "doctest.h"
#include "fixtures.hpp"
#include "knotsurf/states.hpp"

using namespace knotsurf;

TEST_CASE("degree formulas") {
    CHECK(skein_degree(1, 1, 1, 4) == 1);
    CHECK(skein_degree(0, 0, 2, 4) == 4);  // k=2, n=2k: k^2
    CHECK(skein_degree(0, 0, 0, 3) == 0);
    CHECK_THROWS(skein_degree(2, 2, 1, 3));

    CHECK(crossing_degree(2, 2, +1) == 0);  // k = n positive
    CHECK(crossing_degree(0, 3, -1) == 0);
    CHECK(crossing_degree(2, 3, -1) == 4);

    CHECK(twist_degree(1, 1, 1, +1) == crossing_degree(1, 1, +1));
    CHECK(twist_degree(3, 3, 3, -1) == 27);  // c=3, k=n=3: 3n^2
    CHECK(twist_degree(3, 3, 2, +1) == 0);
}

TEST_CASE("flows and conditions") {
    // theta(1,1,-3): (k, n-k, n) is a flow state
    KnotDiagram d = build_diagram(fixtures::theta(1, 1, -3));
    ColoredState st{2, {1, 1, 2}};
    auto f = induces_flow(d, st);
    REQUIRE(f.has_value());
    auto rep = check_conditions(d, st);
    CHECK(rep.all());

    // negative edge with 0 < k < n violates condition 4
    ColoredState bad{2, {1, 0, 1}};
    auto repb = check_conditions(d, bad);
    CHECK(repb.has_flow);
    CHECK(!repb.c4);

    // all-zero sigma passes vacuously
    ColoredState zero{2, {0, 0, 0}};
    CHECK(check_conditions(d, zero).all());

    // unbalanced vertex: single nonzero edge on the trefoil graph
    KnotDiagram tre = fixtures::trefoil();
    ColoredState un{2, {1}};
    CHECK(!induces_flow(tre, un).has_value());
}

TEST_CASE("seifert calibration on the trefoil") {
    for (bool positive : {false, true}) {
        KnotDiagram d = fixtures::trefoil(positive);
        auto passing = calibrate_saddle_sign(d);
        REQUIRE((int)passing.size() == 1);
        CHECK(passing[0] == +1);
    }
}

TEST_CASE("state degrees and mirror antisymmetry") {
    KnotDiagram dneg = fixtures::trefoil(false);
    KnotDiagram dpos = fixtures::trefoil(true);
    int n = 2;
    ColoredState zero{n, {0}};
    auto degn = state_degree(dneg, zero);
    auto degp = state_degree(dpos, zero);
    CHECK(degn.h == -degp.h);
    // sigma_0 raw degree: c_+ n^2
    CHECK(raw_degree(dpos, zero) == 3 * n * n);
    CHECK(raw_degree(dneg, zero) == 0);
}

TEST_CASE("verify main theorem on the trefoil") {
    KnotDiagram d = fixtures::trefoil();
    InflatedTriangulation T = triangulate(d);
    QMatchingSystem sys = qmatching_matrix(T.tri);
    for (int n = 1; n <= 3; ++n) {
        auto records = verify_main_theorem(d, T, sys, n);
        CHECK(!records.empty());
        for (auto& r : records) {
            CHECK(r.verdict);
            if (r.route == SurfaceRoute::NormalAssignment) CHECK(r.normal_ok);
        }
        // sigma_0 is present with slope = a_{sigma_0}
        bool found0 = false;
        for (auto& r : records) {
            bool all0 = true;
            for (int x : r.state.sigma) all0 &= (x == 0);
            if (all0) {
                found0 = true;
                CHECK(Rational(r.h) == r.slope * Rational(n * n));
            }
        }
        CHECK(found0);
    }
}
