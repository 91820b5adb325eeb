#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "knotsurf/graph.hpp"
#include "knotsurf/rational.hpp"

namespace knotsurf {

struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Door corners of a crossing, in counterclockwise order around it.
// The twist region's crossings chain W->E; the graph edge crosses the band
// N->S (end 0 of the edge on the N side).
enum Corner : int { NW = 0, NE = 1, SE = 2, SW = 3 };

inline Corner opposite(Corner c) { return Corner((c + 2) % 4); }

struct DoorRef {
    int crossing = -1;
    Corner corner = NW;
    friend bool operator==(const DoorRef& a, const DoorRef& b) {
        return a.crossing == b.crossing && a.corner == b.corner;
    }
    friend bool operator<(const DoorRef& a, const DoorRef& b) {
        return a.crossing != b.crossing ? a.crossing < b.crossing : a.corner < b.corner;
    }
};

struct TwistRegion {
    int edge_index = -1;     // into graph.edges
    int edge_id = -1;
    int crossing_count = 0;  // c(T) = |w|
    int sign = +1;           // sgn(w)
    int first_crossing = 0;  // crossings are first_crossing .. +crossing_count-1
};

struct Crossing {
    int region = -1;
    int pos = 0;  // 0-based within the region, W to E
    int sign = +1;
};

// Per-crossing smoothing choice: Through keeps the strands running along the
// band (the braidlike resolution); Turnback caps them off across the band.
enum class Smoothing { Through, Turnback };

// A Kauffman state on the diagram: one smoothing per crossing.
using KauffmanState = std::vector<Smoothing>;

class KnotDiagram {
public:
    WeightedPlanarGraph graph;
    std::vector<TwistRegion> regions;
    std::vector<Crossing> crossings;

    int crossing_number() const { return (int)crossings.size(); }
    int negative_crossings() const;
    int positive_crossings() const;

    // Door gluing: each of the 4c doors is matched with exactly one other.
    DoorRef door_mate(DoorRef d) const;

    // Within a crossing the two strands join opposite corners; the over
    // strand occupies the NW-SE diagonal at negative crossings and the
    // SW-NE diagonal at positive ones.
    bool door_on_over_strand(DoorRef d) const;

    // Oriented traversal of the knot: sequence of doors visited. Populated by
    // build_diagram; single component guaranteed.
    const std::vector<DoorRef>& traversal() const { return traversal_; }

    // True if the two strands run parallel (same band direction) at the
    // crossing under the traversal orientation.
    bool strands_parallel(int crossing) const { return parallel_[crossing]; }

    // Seifert state of the canonical orientation.
    KauffmanState seifert_state() const;

    // State circles: orbits of cable points under door gluings and
    // smoothing arcs; n = 1 gives classical Kauffman state circles.
    struct Circles {
        int count = 0;
        // circle index per (door point); door points indexed by point_id
        std::vector<int> membership;
        std::vector<std::vector<int>> circle_points;  // point ids per circle
    };
    Circles state_circles(const KauffmanState& s, int n = 1) const;

    // Cable point ids: per crossing, corner, strand index 0..n-1 (indexed
    // from the corner's counterclockwise-first side).
    int point_id(DoorRef d, int strand, int n) const {
        return (d.crossing * 4 + (int)d.corner) * n + strand;
    }
    int point_count(int n) const { return crossing_number() * 4 * n; }

    friend KnotDiagram build_diagram(const WeightedPlanarGraph& g);

private:
    void build_doors();
    void trace();

    std::vector<DoorRef> mate_;       // flattened door -> mate
    std::vector<DoorRef> traversal_;
    std::vector<bool> parallel_;
};

// Validates the boundary of F_G is a single component and assembles the
// twist-region structure. Throws DiagramError("not a knot") otherwise.
KnotDiagram build_diagram(const WeightedPlanarGraph& g);

// Twist number of the Seifert-state surface, per-crossing counting with the
// global saddle-sign switch (+1 or -1).
Rational seifert_twist(const KnotDiagram& d, int saddle_sign = +1);

}  // namespace knotsurf
