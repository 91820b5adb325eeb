#include "doctest.h"
#include "fixtures.hpp"
#include "knotsurf/diagram.hpp"
#include "knotsurf/graph.hpp"
#include "knotsurf/laurent.hpp"
#include "knotsurf/rational.hpp"

using namespace knotsurf;

TEST_CASE("rational arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(-4, 8) == Rational(-1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK(Rational(7).str() == "7");
    CHECK(Rational(3, -6).str() == "-1/2");
}

TEST_CASE("laurent polynomials") {
    LaurentPoly q = LaurentPoly::monomial(1, 1);
    LaurentPoly qi = LaurentPoly::monomial(1, -1);
    LaurentPoly delta = q + qi;
    CHECK(delta.str() == "q^-1 + q");
    CHECK((delta * delta).coeff(0) == 2);
    CHECK((delta - delta).is_zero());
    CHECK(delta.mirror() == delta);
    LaurentPoly p = LaurentPoly::monomial(3, 2) - LaurentPoly(1);
    CHECK(p.mirror() == LaurentPoly::monomial(3, -2) - LaurentPoly(1));
}

TEST_CASE("rational functions reduce") {
    // (q^2 - q^-2)/(q - q^-1) = q + q^-1
    LaurentPoly num = LaurentPoly::monomial(1, 2) - LaurentPoly::monomial(1, -2);
    LaurentPoly den = LaurentPoly::monomial(1, 1) - LaurentPoly::monomial(1, -1);
    RationalFunction f(num, den);
    CHECK(f.is_polynomial());
    CHECK(f.num() == LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1));
    RationalFunction g = RationalFunction(1) / f;
    CHECK((g * f) == RationalFunction(1));
}

TEST_CASE("graph parse and faces") {
    // two vertices, one edge weight 3: one face, V-E+F = 2
    auto g = fixtures::single_edge(3);
    auto faces = g.faces();
    CHECK((int)faces.size() == 1);
    CHECK(g.vertex_count() - g.edge_count() + (int)faces.size() == 2);

    // theta graph: 3 faces
    auto th = fixtures::theta(1, 1, 1);
    CHECK((int)th.faces().size() == 3);

    // every (edge, side) pair appears in exactly one face
    int sides = 0;
    for (auto& f : th.faces()) sides += (int)f.boundary.size();
    CHECK(sides == 2 * th.edge_count());

    // zero weight rejected
    WeightedPlanarGraph bad = fixtures::single_edge(3);
    bad.edges[0].weight = 0;
    bad.edges[0].slot[0] = bad.edges[0].slot[1] = -1;
    CHECK_THROWS_AS(bad.validate(), GraphError);

    // JSON round trip
    auto g2 = parse_graph(graph_to_json(th));
    CHECK(g2.edge_count() == 3);
    CHECK_THROWS_AS(parse_graph("{not json"), GraphError);
}

TEST_CASE("diagram structure") {
    KnotDiagram d = fixtures::trefoil();
    CHECK(d.crossing_number() == 3);
    CHECK(d.negative_crossings() == 3);
    CHECK((int)d.traversal().size() == 12);

    // single edge weight 2 is a two-component link
    CHECK_THROWS_WITH_AS(build_diagram(fixtures::single_edge(2)), "not a knot", DiagramError);

    // weight 20 example fixture: c(D) = 20 and a knot for the default signs
    auto ex = fixtures::example20({1, 1, 1, 1, 1});
    KnotDiagram d20 = build_diagram(ex);
    CHECK(d20.crossing_number() == 20);
}

TEST_CASE("state circles at n and mirror Seifert antisymmetry") {
    KnotDiagram d = fixtures::trefoil();
    // braidlike state: two circles; turnback state: w+1 circles
    KauffmanState thru(d.crossing_number(), Smoothing::Through);
    KauffmanState caps(d.crossing_number(), Smoothing::Turnback);
    CHECK(d.state_circles(thru, 1).count == 2);
    CHECK(d.state_circles(caps, 1).count == 3);
    // cabling multiplies circles by n
    CHECK(d.state_circles(thru, 3).count == 6);

    // Seifert twist mirror antisymmetry
    auto g = fixtures::theta(3, -2, 5);
    KnotDiagram dm = build_diagram(g.mirrored());
    KnotDiagram dd = build_diagram(g);
    CHECK(seifert_twist(dd) == -seifert_twist(dm));
    // unknot-like fixture: single edge weight 1, zero crossings false
    KnotDiagram u = build_diagram(fixtures::single_edge(1));
    CHECK(u.crossing_number() == 1);
}
