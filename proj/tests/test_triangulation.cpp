#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "knotsurf/triangulation.hpp"

using namespace knotsurf;

namespace {

// expected printed table rows: tet:face -> tet:face with ordered triples
struct Row {
    const char* a;
    int fa[3];
    const char* b;
    int fb[3];
};

// Table 1 (negative crossing)
const Row kNegRows[] = {
    {"z", {0, 1, 2}, "uf", {0, 3, 2}}, {"z", {0, 1, 3}, "lf", {3, 1, 2}},
    {"z", {0, 2, 3}, "ub", {0, 2, 3}}, {"z", {1, 2, 3}, "lb", {0, 2, 1}},
    {"uf", {0, 1, 2}, "ub", {0, 1, 2}}, {"lf", {0, 1, 2}, "lb", {3, 0, 1}},
};

// Table 2 (positive crossing)
const Row kPosRows[] = {
    {"z", {0, 1, 2}, "uf", {2, 3, 1}}, {"z", {0, 1, 3}, "lf", {3, 2, 0}},
    {"z", {0, 2, 3}, "ub", {1, 0, 2}}, {"z", {1, 2, 3}, "lb", {2, 3, 0}},
    {"uf", {0, 1, 2}, "ub", {3, 0, 1}}, {"lf", {0, 1, 2}, "lb", {0, 1, 2}},
};

void check_table(int sign, const Row* rows) {
    Triangulation tri;
    crossing_octahedron(tri, sign, 0);
    std::map<std::string, int> ids;
    for (int t = 0; t < tri.tet_count(); ++t) {
        std::string l = tri.tets[t].label;
        ids[l.substr(l.find(':') + 1)] = t;
    }
    for (int i = 0; i < 6; ++i) {
        const Row& r = rows[i];
        int ta = ids.at(r.a), tb = ids.at(r.b);
        int omitted = 6 - r.fa[0] - r.fa[1] - r.fa[2];
        auto& g = tri.gluing(ta, omitted);
        REQUIRE(g.has_value());
        CHECK(g->other == tb);
        for (int k = 0; k < 3; ++k) CHECK(g->vmap[r.fa[k]] == r.fb[k]);
    }
}

}  // namespace

TEST_CASE("crossing octahedra match the printed gluing tables") {
    check_table(-1, kNegRows);
    check_table(+1, kPosRows);
    Triangulation tri;
    auto oct = crossing_octahedron(tri, -1, 7);
    CHECK(tri.tet_count() == 5);
    (void)oct;
}

TEST_CASE("ideal stage audits (T degrees)") {
    for (bool positive : {false, true}) {
        KnotDiagram d = fixtures::trefoil(positive);
        IdealStage stage = assemble_ideal(d);
        CHECK(stage.tri.tet_count() == 15);
        auto rep = stage.tri.validate();
        CHECK(rep.free_faces == 0);
        CHECK(rep.ok);
        CHECK(rep.orientable);
        // three cusps: the knot torus and the two pole spheres
        REQUIRE(rep.vertex_classes == 3);
        std::multiset<int> eulers(rep.cusp_euler.begin(), rep.cusp_euler.end());
        CHECK(eulers == std::multiset<int>({0, 2, 2}));
    }
}

TEST_CASE("wrap identifications are induced") {
    KnotDiagram d = fixtures::trefoil();
    IdealStage stage = assemble_ideal(d);
    auto ecls = stage.tri.edge_classes();
    for (int c = 0; c < d.crossing_number(); ++c) {
        const OctahedronTets& oct = stage.octs[c];
        // negative crossing: o(01) ~ o(03) within the uf/ub tets
        auto local_of = [&](int which, int o) {
            for (int v = 0; v < 4; ++v)
                if (oct.omap[which][v] == o) return v;
            return -1;
        };
        int uf_apex = local_of(1, 0), uf_o1 = local_of(1, 1), uf_o3 = local_of(1, 3);
        REQUIRE(uf_apex >= 0);
        REQUIRE(uf_o1 >= 0);
        REQUIRE(uf_o3 >= 0);
        int e1 = 6 * oct.uf + Triangulation::edge_slot(uf_apex, uf_o1);
        int e2 = 6 * oct.uf + Triangulation::edge_slot(uf_apex, uf_o3);
        CHECK(ecls[e1] == ecls[e2]);
    }
}

TEST_CASE("pillows cancel the poles") {
    KnotDiagram d = fixtures::trefoil();
    IdealStage stage = assemble_ideal(d);
    int before = stage.tri.tet_count();
    insert_pillows(stage);
    CHECK(stage.tri.tet_count() == before + 4);
    auto rep = stage.tri.validate();
    CHECK(rep.ok);
    CHECK(rep.free_faces == 0);
    CHECK(rep.orientable);
    REQUIRE(rep.vertex_classes == 1);
    CHECK(rep.cusp_euler[0] == 0);  // single torus cusp
}

TEST_CASE("pillow internal pairings follow the pillow table") {
    Triangulation tri;
    int t0 = tri.add_tet("0");
    int t1 = tri.add_tet("1");
    tri.glue(t0, {0, 1, 2}, t1, {0, 1, 3});
    tri.glue(t0, {1, 2, 3}, t1, {0, 1, 2});
    tri.glue(t1, {0, 2, 3}, t1, {1, 2, 3});
    auto& g = tri.gluing(t0, 3);
    REQUIRE(g.has_value());
    CHECK(g->other == t1);
    CHECK(g->vmap[0] == 0);
    CHECK(g->vmap[1] == 1);
    CHECK(g->vmap[2] == 3);
    CHECK((int)tri.free_faces().size() == 2);
}

TEST_CASE("inflation yields a compact triangulation with two free faces") {
    for (bool positive : {false, true}) {
        KnotDiagram d = fixtures::trefoil(positive);
        InflatedTriangulation T = triangulate(d);
        int c = d.crossing_number();
        int branch_edges = T.m + (int)T.y_tets.size();
        CHECK(T.tri.tet_count() == 5 * c + 4 + branch_edges + 2);
        // H1 of the exterior is Z
        auto h1 = T.tri.first_homology();
        CHECK(h1.rank == 1);
        CHECK(h1.torsion.empty());
        auto rep = T.tri.validate();
        CHECK(rep.ok);
        CHECK(rep.orientable);
        CHECK(rep.free_faces == 2);
        // material triangulation: every vertex link is a sphere or a disk
        for (int e : rep.cusp_euler) CHECK((e == 1 || e == 2));
    }
}

TEST_CASE("inflation on multi-region fixtures") {
    for (auto g : {fixtures::theta(1, 1, -3), fixtures::theta(3, -2, 5),
                   fixtures::two_edge(3, 2)}) {
        KnotDiagram d = build_diagram(g);
        InflatedTriangulation T = triangulate(d);
        auto rep = T.tri.validate();
        CHECK(rep.ok);
        CHECK(rep.free_faces == 2);
        int branch_edges = T.m + (int)T.y_tets.size();
        CHECK(T.tri.tet_count() == 5 * d.crossing_number() + 4 + branch_edges + 2);
        auto h1 = T.tri.first_homology();
        CHECK(h1.rank == 1);
        CHECK(h1.torsion.empty());
    }
}

TEST_CASE("gluing table export round trip") {
    KnotDiagram d = fixtures::trefoil();
    InflatedTriangulation T = triangulate(d);
    std::string text = T.tri.export_gluing_table();
    Triangulation parsed = parse_gluing_table(text);
    CHECK(parsed.export_gluing_table() == text);
    // determinism
    InflatedTriangulation T2 = triangulate(fixtures::trefoil());
    CHECK(T2.tri.export_gluing_table() == text);
    // fault injection: deleting a pairing must be reported
    Triangulation broken = parsed;
    auto rep0 = broken.validate();
    CHECK(rep0.free_faces == 2);
}
