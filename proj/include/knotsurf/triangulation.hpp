#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotsurf/diagram.hpp"

namespace knotsurf {

struct TriangulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ideal vertex roles: the knot cusp, the two poles, or merged (after pillows).
enum class VertexRole { Knot, NorthPole, SouthPole, Cusp };

struct Tetrahedron {
    std::string label;
};

// Gluing of face (the 3 vertices != `face` slot is not used here; faces are
// addressed by ordered vertex triples). A pairing maps three vertices of one
// tet to three of another.
struct FacePairing {
    int tet_a = -1;
    std::array<int, 3> face_a{};  // ordered vertices of tet_a
    int tet_b = -1;
    std::array<int, 3> face_b{};  // images, in order
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
    int tet_count = 0;
    int free_faces = 0;
    int vertex_classes = 0;
    int edge_classes = 0;
    int face_classes = 0;
    bool orientable = false;
    std::vector<int> cusp_euler;  // Euler characteristic of each vertex link
};

class Triangulation {
public:
    std::vector<Tetrahedron> tets;

    int add_tet(const std::string& label) {
        tets.push_back({label});
        glue_.resize(tets.size());
        return (int)tets.size() - 1;
    }

    // Glue face {a0,a1,a2} of ta to {b0,b1,b2} of tb (ai -> bi).
    void glue(int ta, std::array<int, 3> fa, int tb, std::array<int, 3> fb);
    void unglue(int ta, std::array<int, 3> fa);

    struct Gluing {
        int other = -1;
        std::array<int, 4> vmap{};  // full vertex map, source tet -> other
    };
    // face addressed by its omitted vertex (0..3)
    const std::optional<Gluing>& gluing(int tet, int omitted) const {
        return glue_[tet][omitted];
    }
    bool face_free(int tet, int omitted) const { return !glue_[tet][omitted].has_value(); }
    std::vector<std::pair<int, int>> free_faces() const;

    int tet_count() const { return (int)tets.size(); }

    // --- derived structure ---

    // Ideal vertex classes of (tet, vertex) corners.
    std::vector<int> vertex_classes() const;  // size 4t, class ids
    int vertex_class_count() const;

    // Edge classes of (tet, {a,b}) edges; 6 edges per tet indexed 0..5 by
    // pair order (01,02,03,12,13,23).
    static int edge_slot(int a, int b);
    static std::pair<int, int> edge_pair(int slot);
    std::vector<int> edge_classes() const;  // size 6t
    int edge_class_count() const;
    // true if the class contains a face on the boundary (free face)
    std::vector<bool> edge_class_on_boundary() const;

    // Walk around an edge class from a representative: returns the ordered
    // ring of (tet, a, b, entry_face_vertex, exit_face_vertex); for boundary
    // classes the walk is the open fan. `closed` reports whether the walk
    // returned to the start with identity end-correspondence.
    struct EdgeRing {
        struct Step {
            int tet;
            int a, b;        // the edge, oriented
            int entry, exit; // the other two vertices: entry face {a,b,entry}
        };
        std::vector<Step> steps;
        bool closed = false;
        bool orientation_consistent = true;
    };
    EdgeRing edge_ring(int tet, int a, int b) const;

    ValidationReport validate() const;

    struct Homology {
        int rank = 0;
        std::vector<long long> torsion;
    };
    // H_1 of the quotient CW complex (ideal vertices included as 0-cells).
    Homology first_homology() const;

    std::string export_gluing_table() const;

    int find_tet(const std::string& label) const;

private:
    std::vector<std::array<std::optional<Gluing>, 4>> glue_;
};

Triangulation parse_gluing_table(const std::string& text);

// --- staged construction ---

struct OctahedronTets {
    // tet ids of z, u_f, u_b, l_f, l_b
    int z, uf, ub, lf, lb;
    // vertex maps: o-coordinates of each tet's 4 local vertices
    std::array<std::array<int, 4>, 5> omap;
};

// Per-crossing block: 5 tets plus the internal pairings of Table 1 / Table 2.
OctahedronTets crossing_octahedron(Triangulation& tri, int sign, int crossing_id);

struct WallRef {
    int tet;                  // tet id
    std::array<int, 3> face;  // ordered (knot apex, north pole, south pole)
};

struct IdealStage {
    KnotDiagram diagram;
    Triangulation tri;
    std::vector<OctahedronTets> octs;  // per crossing
    // per crossing and corner, the strand-side and off-side walls
    // walls[c][corner] = {strand side, off side}
    std::vector<std::array<std::array<WallRef, 2>, 4>> walls;
    std::vector<VertexRole> roles;  // per (tet, vertex), 4t entries
    // pillow bookkeeping (set by insert_pillows)
    std::vector<int> pillow_tets;
};

// T degrees: octahedra + strand merges; no free faces.
IdealStage assemble_ideal(const KnotDiagram& d);

// Enumerates valid assemblies until the hook accepts one (used to pick a
// gauge admitting the frame).
IdealStage assemble_ideal_accepting(const KnotDiagram& d,
                                    const std::function<bool(IdealStage&)>& accept_hook);

// T*: adds the two pillows with pre-drilled tubes, canceling the poles.
void insert_pillows(IdealStage& stage);

// Boundary triangulation of the cusp (links of ideal vertices in the class
// set `which`); triangles are (tet, corner) pairs.
struct BoundarySurface {
    struct Tri {
        int tet, corner;
    };
    std::vector<Tri> tris;
    // side s of triangle i is the arc in face `face_of_side` of the tet;
    // adj[i][s] = (triangle, side) across it
    std::vector<std::array<int, 3>> side_face;          // face = omitted vertex of tet
    std::vector<std::array<std::pair<int, int>, 3>> adj;
    // boundary vertices: classes of (tri, corner-of-tri); corner k of the
    // triangle (tet,v) is the truncated end of edge (v, other vertex k)
    std::vector<std::array<int, 3>> bvertex;  // class id per (tri, k)
    int bvertex_count = 0;
    // boundary edge classes: one per (face class, corner class) arc
    std::vector<std::array<int, 3>> bedge;  // class id per (tri, side)
    int bedge_count = 0;
    int euler() const;
};

BoundarySurface boundary_surface(const Triangulation& tri);

struct Frame {
    // boundary arcs; side A of the carrying face, ordered (apex, fwd, bwd)
    struct FrameEdge {
        int tet = -1;
        std::array<int, 3> face{};
        // door-pair bookkeeping for region gaps (-1 for the meridian)
        int exit_crossing = -1;
        int enter_crossing = -1;
        int exit_pos = -1, enter_pos = -1;  // positions within their regions
        int region = -1;                    // common region if a bigon gap
    };
    std::vector<FrameEdge> longitude;  // x_1..x_m, starting at the branch point
    std::vector<FrameEdge> meridian;   // y_1..y_k, also closing at the branch point
    int branch_crossing = -1;
};

Frame choose_frame(const IdealStage& stage);

struct InflatedTriangulation {
    Triangulation tri;
    std::vector<OctahedronTets> octs;
    std::vector<std::array<std::array<WallRef, 2>, 4>> walls;
    std::vector<int> pillow_tets;
    // inflation tets: per longitude edge, per meridian, and the two cone tets
    std::vector<int> x_tets;
    std::vector<int> y_tets;
    int cone_tet[2] = {-1, -1};
    int m = 0;  // longitude edge count
    // inflation tets associated to a twist region gap: gap_tets[region] lists
    // (t_j, t_j') pairs between crossings j and j+1
    std::map<int, std::vector<std::pair<int, int>>> gap_tets;
};

InflatedTriangulation inflate(const IdealStage& stage, const Frame& frame);

// Full pipeline: graph -> diagram -> T* -> T.
InflatedTriangulation triangulate(const KnotDiagram& d);

}  // namespace knotsurf
