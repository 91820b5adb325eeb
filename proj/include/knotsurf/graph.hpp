#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotsurf {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphEdge {
    int id = 0;
    int ends[2] = {0, 0};   // vertex ids
    long long weight = 0;   // signed, nonzero
    // rotation slot of each end in its vertex's cyclic order, filled by validate
    int slot[2] = {-1, -1};
};

// A dart is an oriented edge side: edge e traversed from ends[from_end].
struct Dart {
    int edge = -1;
    int from_end = 0;
    friend bool operator==(const Dart& a, const Dart& b) {
        return a.edge == b.edge && a.from_end == b.from_end;
    }
};

struct Face {
    std::vector<Dart> boundary;  // darts with this face on their left
    bool is_outer = false;
};

// Weighted planar graph with an explicit rotation system.
// Encodes a knot diagram by twist regions: each edge is a twist region
// with |weight| crossings of sign sgn(weight).
class WeightedPlanarGraph {
public:
    std::vector<int> vertex_ids;
    std::vector<GraphEdge> edges;
    // per vertex id, cyclic list of (edge index, end) in rotation order
    std::map<int, std::vector<std::pair<int, int>>> rotations;
    std::optional<std::pair<int, int>> outer_face_hint;  // (edge id, side)

    int vertex_count() const { return (int)vertex_ids.size(); }
    int edge_count() const { return (int)edges.size(); }
    const GraphEdge& edge_by_id(int id) const;
    int edge_index(int id) const;

    // Throws GraphError on: zero weight, disconnected graph, malformed
    // rotations, Euler check failure.
    void validate();

    // Faces from rotation-system traversal; exactly one marked outer.
    std::vector<Face> faces() const;

    WeightedPlanarGraph mirrored() const;
};

WeightedPlanarGraph parse_graph(const std::string& text);
std::string graph_to_json(const WeightedPlanarGraph& g);

}  // namespace knotsurf
