#include "doctest.h"
#include "fixtures.hpp"
#include "knotsurf/jones.hpp"
#include "knotsurf/khovanov.hpp"

using namespace knotsurf;

namespace {

LaurentPoly euler_from_ranks(const KhovanovResult& kh) { return kh.euler; }

}  // namespace

TEST_CASE("khovanov euler characteristic equals the bracket") {
    for (long long w : {1LL, -1LL, 3LL, -3LL}) {
        KnotDiagram d = build_diagram(fixtures::single_edge(w));
        KhovanovResult kh = khovanov_homology(d);
        CHECK(euler_from_ranks(kh) == kauffman_bracket(d));
    }
    KnotDiagram th = build_diagram(fixtures::theta(1, 1, 1));
    CHECK(euler_from_ranks(khovanov_homology(th)) == kauffman_bracket(th));
}

TEST_CASE("unknot kink fixture homology") {
    KnotDiagram d = build_diagram(fixtures::single_edge(1));
    KhovanovResult kh = khovanov_homology(d);
    // total rank 2: the unknot's two generators
    int total = 0;
    for (auto& [ij, rk] : kh.ranks) total += rk;
    CHECK(total == 2);
}

TEST_CASE("cycle check on adequate states") {
    KnotDiagram d = fixtures::trefoil();
    KauffmanState allb(d.crossing_number(), Smoothing::Turnback);
    KauffmanState alla(d.crossing_number(), Smoothing::Through);
    CHECK(is_adequate(d, allb));
    CHECK(is_adequate(d, alla));
    CHECK(cycle_check(d, allb));
    CHECK(cycle_check(d, alla));

    // a kink is never adequate: its two arcs lie on one circle
    KnotDiagram u = build_diagram(fixtures::single_edge(1));
    KauffmanState thru(1, Smoothing::Through);
    KauffmanState tb(1, Smoothing::Turnback);
    CHECK((is_adequate(u, thru) == false || is_adequate(u, tb) == false));
}
