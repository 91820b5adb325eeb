#include "doctest.h"
#include "fixtures.hpp"
#include "knotsurf/jones.hpp"
#include "knotsurf/tl.hpp"

using namespace knotsurf;

TEST_CASE("quantum integers") {
    CHECK(quantum_int(0) == RationalFunction(0));
    CHECK(quantum_int(1) == RationalFunction(1));
    CHECK(quantum_int(2) == RationalFunction(loop_value()));
    // [3] = q^2 + 1 + q^-2
    LaurentPoly three = LaurentPoly::monomial(1, 2) + LaurentPoly(1) + LaurentPoly::monomial(1, -2);
    CHECK(quantum_int(3) == RationalFunction(three));
}

TEST_CASE("TL multiplication relations") {
    int n = 3;
    TLElement one = TLElement::identity(n);
    TLElement e1 = TLElement::generator(n, 1);
    TLElement e2 = TLElement::generator(n, 2);
    CHECK(one * e1 == e1);
    CHECK(e1 * one == e1);
    // e_i e_i = delta e_i
    CHECK(e1 * e1 == RationalFunction(loop_value()) * e1);
    // e_i e_{i+-1} e_i = e_i
    CHECK(e1 * e2 * e1 == e1);
    CHECK(e2 * e1 * e2 == e2);
}

TEST_CASE("Jones-Wenzl projectors") {
    // p_2 = 1 - (1/[2]) e_1
    TLElement p2 = jones_wenzl(2);
    TLElement expected = TLElement::identity(2) -
                         (RationalFunction(1) / quantum_int(2)) * TLElement::generator(2, 1);
    CHECK(p2 == expected);
    for (int n = 1; n <= 5; ++n) {
        const TLElement& p = jones_wenzl(n);
        CHECK(p * p == p);
        CHECK(p.coeff(PlanarMatching::identity(n)) == RationalFunction(1));
        for (int i = 1; i < n; ++i) {
            CHECK((TLElement::generator(n, i) * p).is_zero());
            CHECK((p * TLElement::generator(n, i)).is_zero());
        }
    }
    // closure of p_n is [n+1]
    for (int n = 1; n <= 4; ++n) CHECK(jones_wenzl(n).closure() == quantum_int(n + 1));
}

TEST_CASE("matching encodings") {
    auto id3 = PlanarMatching::identity(3);
    CHECK(id3.paren_string() == "((()))");
    CHECK(id3.through_count() == 3);
    CHECK(id3.is_identity());
}

TEST_CASE("cabled bracket reduces to the plain bracket at n=1") {
    for (long long w : {-3LL, 3LL, 1LL}) {
        KnotDiagram d = build_diagram(fixtures::single_edge(w));
        RationalFunction cb = cabled_bracket(d, 1, false);
        CHECK(cb.is_polynomial());
        CHECK(cb.num() == kauffman_bracket(d));
    }
    KnotDiagram th = build_diagram(fixtures::theta(1, 1, 1));
    RationalFunction cb = cabled_bracket(th, 1, false);
    CHECK(cb.is_polynomial());
    CHECK(cb.num() == kauffman_bracket(th));
}

TEST_CASE("colored jones unknot normalization") {
    KnotDiagram up = build_diagram(fixtures::single_edge(1));
    KnotDiagram um = build_diagram(fixtures::single_edge(-1));
    for (int n = 1; n <= 3; ++n) {
        LaurentPoly expect = loop_value().pow(n);
        CHECK(colored_jones(up, n) == expect);
        CHECK(colored_jones(um, n) == expect);
    }
}

TEST_CASE("trefoil bracket against direct expansion") {
    KnotDiagram d = fixtures::trefoil(true);
    LaurentPoly b = kauffman_bracket(d);
    // independent brute force over the 8 states with explicit circle counts
    LaurentPoly total;
    for (int mask = 0; mask < 8; ++mask) {
        KauffmanState s(3);
        LaurentPoly coeff(1);
        for (int c = 0; c < 3; ++c) {
            bool through_zero = true;  // positive crossings: through at degree 0
            bool one = (mask >> c) & 1;
            s[c] = one == through_zero ? Smoothing::Turnback : Smoothing::Through;
            if (one)
                coeff *= LaurentPoly::monomial(-1, 2);
            else
                coeff *= LaurentPoly::monomial(1, 1);
        }
        total += coeff * loop_value().pow(d.state_circles(s, 1).count);
    }
    CHECK(b == total);
}
