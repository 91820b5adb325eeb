#include "knotsurf/diagram.hpp"

#include "knotsurf/convention.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace knotsurf {

namespace {

// Union-find over ints.
struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int KnotDiagram::negative_crossings() const {
    int c = 0;
    for (auto& x : crossings) c += x.sign < 0;
    return c;
}

int KnotDiagram::positive_crossings() const {
    int c = 0;
    for (auto& x : crossings) c += x.sign > 0;
    return c;
}

DoorRef KnotDiagram::door_mate(DoorRef d) const {
    return mate_[d.crossing * 4 + (int)d.corner];
}

bool KnotDiagram::door_on_over_strand(DoorRef d) const {
    bool nw_se = (d.corner == NW || d.corner == SE);
    bool over_nwse = crossings[d.crossing].sign < 0 ? convention::over_nwse_neg
                                                    : convention::over_nwse_pos;
    return nw_se == over_nwse;
}

void KnotDiagram::build_doors() {
    mate_.assign(crossing_number() * 4, DoorRef{});
    auto set_mate = [&](DoorRef a, DoorRef b) {
        mate_[a.crossing * 4 + (int)a.corner] = b;
        mate_[b.crossing * 4 + (int)b.corner] = a;
    };

    // Within each region: consecutive crossings chain W -> E.
    for (auto& r : regions) {
        for (int j = 0; j + 1 < r.crossing_count; ++j) {
            int a = r.first_crossing + j, b = a + 1;
            set_mate({a, NE}, {b, NW});
            set_mate({a, SE}, {b, SW});
        }
    }

    // Band-end ports, two per edge end, in counterclockwise order at the
    // vertex. End 0 faces the band's N side, end 1 its S side.
    auto ports = [&](int edge_index, int end) -> std::array<DoorRef, 2> {
        const TwistRegion& r = regions[edge_index];
        int first = r.first_crossing;
        int last = r.first_crossing + r.crossing_count - 1;
        if (end == 0) return {DoorRef{first, NW}, DoorRef{last, NE}};
        return {DoorRef{last, SE}, DoorRef{first, SW}};
    };

    // Disk arcs: slot i's second port joins slot i+1's first port.
    for (int v : graph.vertex_ids) {
        auto& rot = graph.rotations.at(v);
        int d = (int)rot.size();
        for (int i = 0; i < d; ++i) {
            auto [e1, end1] = rot[i];
            auto [e2, end2] = rot[(i + 1) % d];
            set_mate(ports(e1, end1)[1], ports(e2, end2)[0]);
        }
    }
}

void KnotDiagram::trace() {
    int nd = crossing_number() * 4;
    std::vector<bool> seen(nd, false);
    traversal_.clear();

    // Walk: enter a door, cross the strand to the opposite corner, leave
    // through its mate. One component must cover all doors.
    DoorRef d{0, NW};
    std::vector<DoorRef> order;
    while (true) {
        int idx = d.crossing * 4 + (int)d.corner;
        if (seen[idx]) break;
        seen[idx] = true;
        order.push_back(d);
        DoorRef exit{d.crossing, opposite(d.corner)};
        int eidx = exit.crossing * 4 + (int)exit.corner;
        if (seen[eidx]) break;
        seen[eidx] = true;
        order.push_back(exit);
        d = door_mate(exit);
    }
    if ((int)order.size() != nd) throw DiagramError("not a knot");
    traversal_ = std::move(order);

    // Strand directions: a passage heads E iff it enters at a W-side corner.
    parallel_.assign(crossing_number(), false);
    std::vector<std::vector<bool>> east(crossing_number());
    for (size_t i = 0; i < traversal_.size(); i += 2) {
        DoorRef enter = traversal_[i];
        bool eastward = (enter.corner == NW || enter.corner == SW);
        east[enter.crossing].push_back(eastward);
    }
    for (int c = 0; c < crossing_number(); ++c) {
        if (east[c].size() != 2) throw DiagramError("traversal inconsistency");
        parallel_[c] = east[c][0] == east[c][1];
    }
}

KauffmanState KnotDiagram::seifert_state() const {
    KauffmanState s(crossing_number());
    for (int c = 0; c < crossing_number(); ++c)
        s[c] = parallel_[c] ? Smoothing::Through : Smoothing::Turnback;
    return s;
}

KnotDiagram::Circles KnotDiagram::state_circles(const KauffmanState& s, int n) const {
    if ((int)s.size() != crossing_number()) throw DiagramError("state size mismatch");
    UF uf(point_count(n));
    auto join = [&](DoorRef a, DoorRef b) {
        for (int i = 0; i < n; ++i) uf.unite(point_id(a, i, n), point_id(b, i, n));
    };
    for (int c = 0; c < crossing_number(); ++c) {
        if (s[c] == Smoothing::Through) {
            join({c, NW}, {c, NE});
            join({c, SW}, {c, SE});
        } else {
            join({c, NW}, {c, SW});
            join({c, NE}, {c, SE});
        }
        join({c, NW}, door_mate({c, NW}));
        join({c, NE}, door_mate({c, NE}));
        join({c, SE}, door_mate({c, SE}));
        join({c, SW}, door_mate({c, SW}));
    }
    Circles out;
    std::map<int, int> root_to_circle;
    out.membership.resize(point_count(n));
    for (int p = 0; p < point_count(n); ++p) {
        int r = uf.find(p);
        auto [it, fresh] = root_to_circle.try_emplace(r, (int)root_to_circle.size());
        if (fresh) out.circle_points.emplace_back();
        out.membership[p] = it->second;
        out.circle_points[it->second].push_back(p);
    }
    out.count = (int)root_to_circle.size();
    return out;
}

KnotDiagram build_diagram(const WeightedPlanarGraph& g) {
    KnotDiagram d;
    d.graph = g;
    int next = 0;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const GraphEdge& e = g.edges[ei];
        TwistRegion r;
        r.edge_index = ei;
        r.edge_id = e.id;
        r.crossing_count = (int)std::llabs(e.weight);
        r.sign = e.weight > 0 ? +1 : -1;
        r.first_crossing = next;
        for (int j = 0; j < r.crossing_count; ++j)
            d.crossings.push_back({ei, j, r.sign});
        next += r.crossing_count;
        d.regions.push_back(r);
    }
    if (d.crossings.empty()) throw DiagramError("diagram has no crossings");
    d.build_doors();
    d.trace();
    return d;
}

Rational seifert_twist(const KnotDiagram& d, int saddle_sign) {
    // tau(Sigma_0) = 2(s_- - s_+)/m per sheet; a braidlike (oriented-parallel)
    // saddle does not twist around the knot, a turnback saddle twists once
    // with the handedness of its crossing. Counted in per-sheet units so
    // slopes land in (1/n)Z downstream.
    long long t = 0;
    for (int c = 0; c < d.crossing_number(); ++c)
        if (!d.strands_parallel(c)) t += d.crossings[c].sign;
    return Rational(saddle_sign * t);
}

}  // namespace knotsurf
