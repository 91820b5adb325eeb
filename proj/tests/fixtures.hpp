#pragma once

#include <string>
#include <vector>

#include "knotsurf/diagram.hpp"

namespace knotsurf::fixtures {

// Single edge of the given weight: the (2, w) torus knot/link diagram.
inline WeightedPlanarGraph single_edge(long long w) {
    WeightedPlanarGraph g;
    g.vertex_ids = {1, 2};
    GraphEdge e;
    e.id = 1;
    e.ends[0] = 1;
    e.ends[1] = 2;
    e.weight = w;
    g.edges = {e};
    g.rotations[1] = {{0, 0}};
    g.rotations[2] = {{0, 1}};
    g.validate();
    return g;
}

// Theta graph: two vertices joined by three edges (pretzel-style).
inline WeightedPlanarGraph theta(long long w1, long long w2, long long w3) {
    WeightedPlanarGraph g;
    g.vertex_ids = {1, 2};
    for (int i = 0; i < 3; ++i) {
        GraphEdge e;
        e.id = i + 1;
        e.ends[0] = 1;
        e.ends[1] = 2;
        e.weight = i == 0 ? w1 : i == 1 ? w2 : w3;
        g.edges.push_back(e);
    }
    g.rotations[1] = {{0, 0}, {1, 0}, {2, 0}};
    g.rotations[2] = {{2, 1}, {1, 1}, {0, 1}};
    g.validate();
    return g;
}

// Two-region graph: two vertices joined by two edges.
inline WeightedPlanarGraph two_edge(long long w1, long long w2) {
    WeightedPlanarGraph g;
    g.vertex_ids = {1, 2};
    for (int i = 0; i < 2; ++i) {
        GraphEdge e;
        e.id = i + 1;
        e.ends[0] = 1;
        e.ends[1] = 2;
        e.weight = i == 0 ? w1 : w2;
        g.edges.push_back(e);
    }
    g.rotations[1] = {{0, 0}, {1, 0}};
    g.rotations[2] = {{1, 1}, {0, 1}};
    g.validate();
    return g;
}

// Reconstructed example fixture: |weights| = (6,3,3,3,5) on a three-vertex
// planar graph (the published figure is unavailable; the sign pattern is a
// parameter and the structure is flagged as reconstructed).
inline WeightedPlanarGraph example20(const std::vector<int>& signs) {
    WeightedPlanarGraph g;
    g.vertex_ids = {1, 2, 3};
    long long mags[5] = {6, 3, 3, 3, 5};
    int ends[5][2] = {{1, 2}, {2, 3}, {2, 3}, {1, 3}, {1, 3}};
    for (int i = 0; i < 5; ++i) {
        GraphEdge e;
        e.id = i + 1;
        e.ends[0] = ends[i][0];
        e.ends[1] = ends[i][1];
        e.weight = mags[i] * (signs.empty() ? 1 : signs[i]);
        g.edges.push_back(e);
    }
    g.rotations[1] = {{0, 0}, {3, 0}, {4, 0}};
    g.rotations[2] = {{1, 0}, {2, 0}, {0, 1}};
    g.rotations[3] = {{4, 1}, {3, 1}, {2, 1}, {1, 1}};
    g.validate();
    return g;
}

inline KnotDiagram trefoil(bool positive = false) {
    return build_diagram(single_edge(positive ? 3 : -3));
}

}  // namespace knotsurf::fixtures
