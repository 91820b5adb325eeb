#include "knotsurf/jones.hpp"

#include <numeric>
#include <stdexcept>

namespace knotsurf {

namespace {

struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

TLElement elementary_crossing(int strands, int k, int sign, BracketConvention conv) {
    TLElement one = TLElement::identity(strands);
    TLElement cap = TLElement::generator(strands, k);
    if (conv == BracketConvention::Verbatim) {
        if (sign > 0)
            return RationalFunction(LaurentPoly::monomial(1, 1)) * one +
                   RationalFunction(LaurentPoly::monomial(-1, 2)) * cap;
        return RationalFunction(LaurentPoly::monomial(1, -2)) * cap +
               RationalFunction(LaurentPoly::monomial(-1, -1)) * one;
    }
    if (sign > 0)
        return RationalFunction(LaurentPoly::monomial(1, 1)) * one +
               RationalFunction(LaurentPoly::monomial(1, -1)) * cap;
    return RationalFunction(LaurentPoly::monomial(1, -1)) * one +
           RationalFunction(LaurentPoly::monomial(1, 1)) * cap;
}

}  // namespace

TLElement region_element(const KnotDiagram& d, int region, int n, BracketConvention conv) {
    const TwistRegion& r = d.regions[region];
    int strands = 2 * n;
    TLElement acc = TLElement::identity(strands);
    for (int j = 0; j < r.crossing_count; ++j) {
        // bundle swap: the N bundle (positions 1..n) crosses the S bundle
        TLElement x = TLElement::identity(strands);
        for (int i = 1; i <= n; ++i)
            for (int jj = 0; jj < n; ++jj)
                x = elementary_crossing(strands, n - i + 1 + jj, r.sign, conv) * x;
        acc = x * acc;
    }
    return acc;
}

int oriented_sign(const KnotDiagram& d, int crossing) {
    static const int cx[4] = {-1, 1, 1, -1};  // NW NE SE SW
    static const int cy[4] = {1, 1, -1, -1};
    int over_dx = 0, over_dy = 0, under_dx = 0, under_dy = 0;
    const auto& tour = d.traversal();
    for (size_t i = 0; i < tour.size(); i += 2) {
        DoorRef enter = tour[i];
        if (enter.crossing != crossing) continue;
        int dx = -2 * cx[(int)enter.corner];
        int dy = -2 * cy[(int)enter.corner];
        if (d.door_on_over_strand(enter)) {
            over_dx = dx;
            over_dy = dy;
        } else {
            under_dx = dx;
            under_dy = dy;
        }
    }
    long long cross = (long long)over_dx * under_dy - (long long)over_dy * under_dx;
    return cross < 0 ? +1 : -1;
}

RationalFunction cabled_bracket(const KnotDiagram& d, int n, bool with_projector,
                                BracketConvention conv, long long guard) {
    int nr = (int)d.regions.size();
    std::vector<TLElement> elems(nr);
    long long work = 1;
    for (int r = 0; r < nr; ++r) {
        elems[r] = region_element(d, r, n, conv);
        if (r == 0 && with_projector) {
            TLElement insert = jones_wenzl(n).tensor(TLElement::identity(n));
            elems[r] = elems[r] * insert;
        }
        work *= (long long)elems[r].terms().size();
        if (work > guard || work <= 0)
            throw std::runtime_error("cabled_bracket: resource guard exceeded");
    }

    // Door-point wiring through the vertex disks (strand i to strand i).
    std::vector<std::pair<int, int>> wires;
    for (int r = 0; r < nr; ++r) {
        int f = d.regions[r].first_crossing;
        int l = f + d.regions[r].crossing_count - 1;
        for (DoorRef door : {DoorRef{f, NW}, DoorRef{f, SW}, DoorRef{l, NE}, DoorRef{l, SE}}) {
            DoorRef m = d.door_mate(door);
            for (int i = 0; i < n; ++i)
                wires.push_back({d.point_id(door, i, n), d.point_id(m, i, n)});
        }
    }

    // Enumerate one matching per region.
    std::vector<std::map<PlanarMatching, RationalFunction>::const_iterator> pick(nr);
    for (int r = 0; r < nr; ++r) pick[r] = elems[r].terms().begin();

    RationalFunction total;
    RationalFunction delta{loop_value()};
    if (conv == BracketConvention::Classical)
        delta = RationalFunction(-(LaurentPoly::monomial(1, 2) + LaurentPoly::monomial(1, -2)));

    int npoints = d.point_count(n);
    while (true) {
        RationalFunction coeff(1);
        UF uf(npoints);
        for (auto& [a, b] : wires) uf.unite(a, b);
        for (int r = 0; r < nr; ++r) {
            coeff *= pick[r]->second;
            const PlanarMatching& m = pick[r]->first;
            int f = d.regions[r].first_crossing;
            int l = f + d.regions[r].crossing_count - 1;
            auto pt = [&](int tl_id) {
                int strands = 2 * n;
                if (tl_id < strands) {  // bottom = W end, N to S
                    if (tl_id < n) return d.point_id({f, NW}, tl_id, n);
                    return d.point_id({f, SW}, strands - 1 - tl_id, n);
                }
                int t = tl_id - strands;  // top = E end, N to S
                if (t < n) return d.point_id({l, NE}, t, n);
                return d.point_id({l, SE}, strands - 1 - t, n);
            };
            for (int p = 0; p < 4 * n; ++p)
                if (m.mate(p) > p) uf.unite(pt(p), pt(m.mate(p)));
        }
        // Count circles among end-door points.
        std::vector<bool> is_end(npoints, false);
        for (int r = 0; r < nr; ++r) {
            int f = d.regions[r].first_crossing;
            int l = f + d.regions[r].crossing_count - 1;
            for (DoorRef door : {DoorRef{f, NW}, DoorRef{f, SW}, DoorRef{l, NE}, DoorRef{l, SE}})
                for (int i = 0; i < n; ++i) is_end[d.point_id(door, i, n)] = true;
        }
        std::vector<int> roots;
        for (int p = 0; p < npoints; ++p)
            if (is_end[p]) roots.push_back(uf.find(p));
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        RationalFunction term = coeff;
        for (size_t i = 0; i < roots.size(); ++i) term *= delta;
        total += term;

        // next tuple
        int r = 0;
        while (r < nr) {
            ++pick[r];
            if (pick[r] != elems[r].terms().end()) break;
            pick[r] = elems[r].terms().begin();
            ++r;
        }
        if (r == nr) break;
    }
    return total;
}

LaurentPoly colored_jones(const KnotDiagram& d, int n, BracketConvention conv,
                          long long guard) {
    RationalFunction b = cabled_bracket(d, n, true, conv, guard);
    // framing correction: kink factors from the one-crossing unknot diagrams
    auto kink = [&](int w) {
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
        return build_diagram(g);
    };
    RationalFunction deltan(1);
    RationalFunction delta{loop_value()};
    if (conv == BracketConvention::Classical)
        delta = RationalFunction(-(LaurentPoly::monomial(1, 2) + LaurentPoly::monomial(1, -2)));
    for (int i = 0; i < n; ++i) deltan *= delta;

    int wp = 0, wm = 0;
    for (int c = 0; c < d.crossing_number(); ++c)
        (oriented_sign(d, c) > 0 ? wp : wm)++;
    RationalFunction result = b;
    if (wp) {
        RationalFunction fp = cabled_bracket(kink(+1), n, true, conv, guard);
        RationalFunction corr = deltan / fp;
        for (int i = 0; i < wp; ++i) result *= corr;
    }
    if (wm) {
        RationalFunction fm = cabled_bracket(kink(-1), n, true, conv, guard);
        RationalFunction corr = deltan / fm;
        for (int i = 0; i < wm; ++i) result *= corr;
    }
    if (!result.is_polynomial())
        throw std::runtime_error("colored_jones: normalization did not clear denominators");
    return result.num();
}

}  // namespace knotsurf
