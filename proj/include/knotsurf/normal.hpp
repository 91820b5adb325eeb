#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotsurf/triangulation.hpp"

namespace knotsurf {

struct NormalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quad types per tetrahedron: type 1 separates {0,1}|{2,3}, type 2
// {0,2}|{1,3}, type 3 {0,3}|{1,2}. Coordinate index = 3*tet + (type-1).
int quad_type_separating(int a, int b);   // the type pairing a with b (1..3)
bool quad_meets_edge(int type, int a, int b);

using QVector = std::vector<long long>;

struct QMatchingSystem {
    int tets = 0;
    // rows indexed by interior edge class; sparse entries (column, slope)
    std::vector<std::vector<std::pair<int, int>>> rows;
    std::vector<int> row_edge_class;      // interior edge class id per row
    std::vector<int> edge_class_of_edge;  // 6t -> class id (all classes)
    std::vector<bool> class_is_interior;
    std::map<int, int> row_of_class;      // class id -> row index

    int cols() const { return 3 * tets; }
    long long row_dot(int row, const QVector& v) const;
    std::string to_triplet_text() const;
};

QMatchingSystem qmatching_matrix(const Triangulation& tri);

// total slope of quad type (tet, type) at the edge class of (etet, a, b)
int total_slope(const Triangulation& tri, const QMatchingSystem& sys, int tet, int type,
                int etet, int a, int b);

bool is_admissible(const QVector& v, int tets);
bool is_normal(const QVector& v, const QMatchingSystem& sys);

// All admissible nonzero solutions with coordinates <= bound that are not
// componentwise sums of two smaller admissible solutions.
std::vector<QVector> fundamental_solutions(const QMatchingSystem& sys, int bound,
                                           long long guard = 50000000);

enum class SurfaceKind { I, II, III };

struct LocalSurface {
    SurfaceKind kind;
    int region = -1;
    int n = 0, k = 0, r = 0;
    QVector quads;                  // the k-weighted quad fragment (3t long)
    std::vector<long long> tris;    // 4t triangle coordinates, (n-k)-weighted
    std::vector<int> support_tets;  // O_T tets used
};

// The twist-region tetrahedra O_T: octahedra of the region plus the
// inflation tets between its consecutive crossings.
std::vector<int> region_tets(const InflatedTriangulation& T, const KnotDiagram& d, int region);

// Interior edge classes of O_T (classes whose star lies inside O_T).
std::vector<int> interior_classes(const InflatedTriangulation& T, const QMatchingSystem& sys,
                                  const std::vector<int>& tets);

LocalSurface local_surface(const InflatedTriangulation& T, const KnotDiagram& d,
                           const QMatchingSystem& sys, int region, SurfaceKind kind, int n,
                           int k, int r);

// Lemma-style normality check for a family of per-region fragments: the
// concatenated quad vector must satisfy every Q-matching row that is not
// interior to one of the regions (vertex and face conditions), the interior
// rows holding by construction.
bool lemma_main_check(const InflatedTriangulation& T, const QMatchingSystem& sys,
                      const std::vector<LocalSurface>& fragments);

QVector concatenate_fragments(const QMatchingSystem& sys,
                              const std::vector<LocalSurface>& fragments);

}  // namespace knotsurf
