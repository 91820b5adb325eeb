#include "knotsurf/states.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "knotsurf/khovanov.hpp"

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

}  // namespace

int skein_degree(int l, int r, int k, int n) {
    if (l < 0 || r < 0 || k < 0 || l + 2 * k + r > n)
        throw std::invalid_argument("skein_degree: out of range");
    return k * (n - r - k - l);
}

int crossing_degree(int k, int n, int sign) {
    if (k < 0 || k > n) throw std::invalid_argument("crossing_degree: k out of range");
    return sign > 0 ? n * n - k * k : k * k;
}

int twist_degree(int k, int n, int c, int sign) {
    if (c < 1) throw std::invalid_argument("twist_degree: c < 1");
    return c * crossing_degree(k, n, sign);
}

RegionCircles region_circles(const KnotDiagram& d, const ColoredState& s) {
    int n = s.n;
    int npoints = d.point_count(n);
    // successor maps: region-side and wiring-side neighbors of each end-door
    // cable point
    std::vector<int> region_nbr(npoints, -1), wiring_nbr(npoints, -1);
    std::vector<int> passage_region(npoints, -1);  // through-arc starting here
    std::vector<int> passage_dir(npoints, 0);
    auto end_doors = [&](int region) {
        const TwistRegion& r = d.regions[region];
        int f = r.first_crossing, l = f + r.crossing_count - 1;
        return std::array<DoorRef, 4>{DoorRef{f, NW}, DoorRef{f, SW}, DoorRef{l, NE},
                                      DoorRef{l, SE}};
    };
    for (int reg = 0; reg < (int)d.regions.size(); ++reg) {
        const TwistRegion& r = d.regions[reg];
        int k = s.sigma[reg];
        int f = r.first_crossing, l = f + r.crossing_count - 1;
        bool odd = r.crossing_count % 2 == 1;
        for (DoorRef door : end_doors(reg)) {
            DoorRef m = d.door_mate(door);
            for (int i = 0; i < n; ++i) {
                wiring_nbr[d.point_id(door, i, n)] = d.point_id(m, i, n);
            }
        }
        for (int i = 0; i < n; ++i) {
            int nw = d.point_id({f, NW}, i, n), sw = d.point_id({f, SW}, i, n);
            int ne = d.point_id({l, NE}, i, n), se = d.point_id({l, SE}, i, n);
            if (i < k) {
                int nw_to = odd ? se : ne;
                int sw_to = odd ? ne : se;
                region_nbr[nw] = nw_to;
                region_nbr[nw_to] = nw;
                region_nbr[sw] = sw_to;
                region_nbr[sw_to] = sw;
                passage_region[nw] = reg;
                passage_dir[nw] = +1;
                passage_region[sw] = reg;
                passage_dir[sw] = +1;
                passage_region[nw_to] = reg;
                passage_dir[nw_to] = -1;
                passage_region[sw_to] = reg;
                passage_dir[sw_to] = -1;
            } else {
                region_nbr[nw] = sw;
                region_nbr[sw] = nw;
                region_nbr[ne] = se;
                region_nbr[se] = ne;
            }
        }
    }
    RegionCircles out;
    out.membership.assign(npoints, -1);
    std::vector<bool> seen(npoints, false);
    for (int p = 0; p < npoints; ++p) {
        if (seen[p] || region_nbr[p] < 0) continue;
        int circle = out.count++;
        out.circle_regions.emplace_back();
        out.circle_dirs.emplace_back();
        // walk: alternate region-side and wiring-side steps
        int cur = p;
        bool take_region = true;
        while (true) {
            seen[cur] = true;
            out.membership[cur] = circle;
            if (take_region) {
                if (passage_region[cur] >= 0) {
                    out.circle_regions[circle].push_back(passage_region[cur]);
                    out.circle_dirs[circle].push_back(passage_dir[cur]);
                }
                cur = region_nbr[cur];
            } else {
                cur = wiring_nbr[cur];
            }
            take_region = !take_region;
            if (cur == p && take_region) break;
        }
    }
    return out;
}

std::optional<Flow> induces_flow(const KnotDiagram& d, const ColoredState& s) {
    int ne = (int)d.regions.size();
    std::vector<int> nonzero;
    for (int e = 0; e < ne; ++e)
        if (s.sigma[e] != 0) nonzero.push_back(e);
    // search orientations of the nonzero edges for conservation at vertices
    int m = (int)nonzero.size();
    if (m > 20) throw std::runtime_error("induces_flow: too many edges");
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::map<int, long long> net;
        for (int v : d.graph.vertex_ids) net[v] = 0;
        for (int i = 0; i < m; ++i) {
            const GraphEdge& ge = d.graph.edges[nonzero[i]];
            int orient = (mask >> i) & 1 ? +1 : -1;  // +1: end0 -> end1
            net[ge.ends[0]] -= orient * s.sigma[nonzero[i]];
            net[ge.ends[1]] += orient * s.sigma[nonzero[i]];
        }
        bool ok = true;
        for (auto& [v, x] : net)
            if (x != 0) ok = false;
        if (!ok) continue;
        Flow f;
        f.orientation.assign(ne, 0);
        f.value = s.sigma;
        for (int i = 0; i < m; ++i) f.orientation[nonzero[i]] = (mask >> i) & 1 ? +1 : -1;
        return f;
    }
    return std::nullopt;
}

ConditionsReport check_conditions(const KnotDiagram& d, const ColoredState& s) {
    ConditionsReport rep;
    auto flow = induces_flow(d, s);
    rep.has_flow = flow.has_value();
    if (!rep.has_flow) return rep;

    int n = s.n;
    rep.c1 = rep.c2 = rep.c3 = rep.c4 = rep.c5 = true;
    for (int v : d.graph.vertex_ids) {
        long long pos_sum = 0;
        int neg_nonzero = 0;
        int in_nonzero = 0, out_nonzero = 0, nonzero_here = 0;
        for (auto& [ei, end] : d.graph.rotations.at(v)) {
            const GraphEdge& ge = d.graph.edges[ei];
            int k = s.sigma[ei];
            if (ge.weight > 0) pos_sum += k;
            if (k == 0) continue;
            nonzero_here++;
            if (ge.weight < 0) neg_nonzero++;
            int orient = flow->orientation[ei];
            bool incoming = (end == 1) == (orient == +1);
            (incoming ? in_nonzero : out_nonzero)++;
        }
        if (pos_sum > n) rep.c1 = false;
        if (neg_nonzero > 1) rep.c2 = false;
        if (nonzero_here > 0 && in_nonzero != 1 && out_nonzero != 1) rep.c3 = false;
    }
    for (int e = 0; e < (int)d.regions.size(); ++e)
        if (d.graph.edges[e].weight < 0 && s.sigma[e] != 0 && s.sigma[e] != n) rep.c4 = false;

    // condition 5: circles stay within one negative component and do not
    // revisit a negative region
    {
        UF comp((int)d.regions.size());
        for (int v : d.graph.vertex_ids) {
            int prev = -1;
            for (auto& [ei, end] : d.graph.rotations.at(v)) {
                (void)end;
                if (d.graph.edges[ei].weight >= 0) continue;
                if (prev >= 0) comp.unite(prev, ei);
                prev = ei;
            }
        }
        auto circ = region_circles(d, s);
        for (int c = 0; c < circ.count && rep.c5; ++c) {
            const auto& regs = circ.circle_regions[c];
            int m = (int)regs.size();
            int comp_id = -1;
            for (int i = 0; i < m; ++i) {
                int reg = regs[i];
                if (d.graph.edges[reg].weight >= 0) continue;
                // re-entering the same negative region in the same direction
                // (a turnback bounce, opposite directions, is the multicone
                // cap structure and is allowed)
                if (m > 1 && regs[(i + 1) % m] == reg &&
                    circ.circle_dirs[c][(i + 1) % m] == circ.circle_dirs[c][i])
                    rep.c5 = false;
                if (m == 1) rep.c5 = false;
                int cid = comp.find(reg);
                if (comp_id < 0) comp_id = cid;
                else if (comp_id != cid) rep.c5 = false;
            }
        }
    }
    return rep;
}

KauffmanState uniform_lift(const KnotDiagram& d, const ColoredState& s) {
    KauffmanState st(d.crossing_number());
    for (int c = 0; c < d.crossing_number(); ++c) {
        int reg = d.crossings[c].region;
        if (s.sigma[reg] != 0 && s.sigma[reg] != s.n)
            throw std::invalid_argument("uniform_lift: sigma not in {0,n}");
        st[c] = s.sigma[reg] == s.n ? Smoothing::Through : Smoothing::Turnback;
    }
    return st;
}

StateClassification classify_state(const KnotDiagram& d, const ColoredState& s) {
    StateClassification out;
    int ne = (int)d.regions.size();
    bool zero_n_valued = true;
    for (int e = 0; e < ne; ++e)
        if (s.sigma[e] != 0 && s.sigma[e] != s.n) zero_n_valued = false;
    if (zero_n_valued) {
        KauffmanState lift = uniform_lift(d, s);
        out.adequate = is_adequate(d, lift);
        if (out.adequate) {
            out.route = SurfaceRoute::StateSurface;
            out.conditions = check_conditions(d, s);
            return out;
        }
    }
    out.conditions = check_conditions(d, s);
    if (!out.conditions.all()) return out;

    // Normal assignment per the case table: full flow -> S_II(n, n, 0, w);
    // partial flow -> S_I(n, k, w); zero edges -> S_I(n, 0, w). A region
    // whose two through-passages lie on different circles takes S_III.
    auto circ = region_circles(d, s);
    out.kinds.assign(ne, SurfaceKind::I);
    out.kind_k.assign(ne, 0);
    out.kind_r.assign(ne, 0);
    for (int e = 0; e < ne; ++e) {
        int k = s.sigma[e];
        // circles passing through e
        std::set<int> circles_here;
        for (int c = 0; c < circ.count; ++c)
            for (int reg : circ.circle_regions[c])
                if (reg == e) circles_here.insert(c);
        bool same_path = circles_here.size() <= 1;
        if (!same_path) {
            out.kinds[e] = SurfaceKind::III;
            out.kind_k[e] = k;
        } else if (k == s.n) {
            out.kinds[e] = SurfaceKind::II;
            out.kind_k[e] = s.n;
            out.kind_r[e] = 0;
        } else {
            out.kinds[e] = SurfaceKind::I;
            out.kind_k[e] = k;
        }
    }
    out.route = SurfaceRoute::NormalAssignment;
    return out;
}

long long raw_degree(const KnotDiagram& d, const ColoredState& s) {
    long long h = 0;
    for (int e = 0; e < (int)d.regions.size(); ++e)
        h += twist_degree(s.sigma[e], s.n, d.regions[e].crossing_count, d.regions[e].sign);
    return h;
}

ColoredState seifert_colored_state(const KnotDiagram& d, int n) {
    ColoredState s;
    s.n = n;
    s.sigma.assign(d.regions.size(), 0);
    for (int e = 0; e < (int)d.regions.size(); ++e) {
        // regions are strand-parallel or not uniformly: use the first crossing
        bool parallel = d.strands_parallel(d.regions[e].first_crossing);
        s.sigma[e] = parallel ? n : 0;
    }
    return s;
}

DegreeReport state_degree(const KnotDiagram& d, const ColoredState& s) {
    DegreeReport rep;
    rep.h_raw = raw_degree(d, s);
    rep.h = rep.h_raw - raw_degree(d, seifert_colored_state(d, s.n));
    auto flow = induces_flow(d, s);
    bool nonzero = std::any_of(s.sigma.begin(), s.sigma.end(), [](int x) { return x != 0; });
    if (flow && nonzero) {
        // path-partition value: per circle with constant nonzero flow,
        // ((sum of w over its edges) - 1) k^2
        auto circ = region_circles(d, s);
        long long h = 0;
        bool well_formed = true;
        for (int c = 0; c < circ.count; ++c) {
            if (circ.circle_regions[c].empty()) continue;
            long long wsum = 0;
            int kval = -1;
            for (int reg : circ.circle_regions[c]) {
                wsum += d.graph.edges[reg].weight;
                if (kval < 0) kval = s.sigma[reg];
                else if (kval != s.sigma[reg]) well_formed = false;
            }
            if (kval > 0) h += (wsum - 1) * (long long)kval * kval;
        }
        if (well_formed) {
            rep.h_path = h;
            rep.formulas_agree = (h == rep.h);
        }
    }
    return rep;
}

Rational state_surface_twist(const KnotDiagram& d, const ColoredState& s, int saddle_sign) {
    KauffmanState lift = uniform_lift(d, s);
    long long t = 0;
    for (int c = 0; c < d.crossing_number(); ++c)
        if (lift[c] == Smoothing::Turnback) t += d.crossings[c].sign;
    return Rational(saddle_sign * t);
}

std::vector<VerificationRecord> verify_main_theorem(const KnotDiagram& d,
                                                    const InflatedTriangulation& T,
                                                    const QMatchingSystem& sys, int n,
                                                    const VerifyOptions& opts) {
    int ne = (int)d.regions.size();
    long long total = 1;
    for (int e = 0; e < ne; ++e) {
        total *= (n + 1);
        if (total > opts.guard) throw std::runtime_error("verify: resource guard exceeded");
    }
    ColoredState seif = seifert_colored_state(d, n);
    Rational tau_sigma0 = state_surface_twist(d, seif, opts.saddle_sign);

    std::vector<VerificationRecord> records;
    std::vector<int> sigma(ne, 0);
    std::function<void(int)> enumerate = [&](int pos) {
        if (pos == ne) {
            ColoredState st{n, sigma};
            StateClassification cls = classify_state(d, st);
            if (cls.route == SurfaceRoute::None) return;
            VerificationRecord rec;
            rec.state = st;
            rec.route = cls.route;
            DegreeReport deg = state_degree(d, st);
            rec.h = deg.h;
            rec.h_path = deg.h_path;
            if (cls.route == SurfaceRoute::StateSurface) {
                rec.tau = state_surface_twist(d, st, opts.saddle_sign);
                rec.slope = boundary_slope(rec.tau, tau_sigma0);
                rec.surface_kinds.assign(ne, "state-surface");
            } else {
                std::vector<TwistContribution> contribs;
                std::vector<LocalSurface> fragments;
                for (int e = 0; e < ne; ++e) {
                    contribs.push_back(make_contribution(cls.kinds[e], d.regions[e].sign, n,
                                                         cls.kind_k[e], cls.kind_r[e],
                                                         d.regions[e].crossing_count, e));
                    fragments.push_back(local_surface(T, d, sys, e, cls.kinds[e], n,
                                                      cls.kind_k[e], cls.kind_r[e]));
                    switch (cls.kinds[e]) {
                        case SurfaceKind::I: rec.surface_kinds.push_back("S_I"); break;
                        case SurfaceKind::II: rec.surface_kinds.push_back("S_II"); break;
                        default: rec.surface_kinds.push_back("S_III"); break;
                    }
                    rec.surface_kinds.back() += d.regions[e].sign > 0 ? "+" : "-";
                }
                rec.quads = concatenate_fragments(sys, fragments);
                rec.normal_ok = is_normal(rec.quads, sys);
                rec.tau = total_twist(contribs, ne);
                rec.slope = boundary_slope(rec.tau, tau_sigma0);
                if (opts.require_normal && !rec.normal_ok) {
                    rec.verdict = false;
                    records.push_back(std::move(rec));
                    return;
                }
            }
            Rational lhs(rec.h);
            Rational rhs = rec.slope * Rational((long long)n * n);
            rec.verdict = (lhs == rhs);
            records.push_back(std::move(rec));
            return;
        }
        for (int v = 0; v <= n; ++v) {
            sigma[pos] = v;
            enumerate(pos + 1);
        }
    };
    enumerate(0);
    return records;
}

std::vector<int> calibrate_saddle_sign(const KnotDiagram& d) {
    std::vector<int> passing;
    for (int sign : {+1, -1}) {
        // sigma_0 verdict at n = 2: a_{sigma0} = s(N_0)
        int n = 2;
        ColoredState sigma0{n, std::vector<int>(d.regions.size(), 0)};
        ColoredState seif = seifert_colored_state(d, n);
        DegreeReport deg = state_degree(d, sigma0);
        Rational a0 = Rational(deg.h) / Rational((long long)n * n);
        Rational s0 = boundary_slope(state_surface_twist(d, sigma0, sign),
                                     state_surface_twist(d, seif, sign));
        if (a0 == s0) passing.push_back(sign);
    }
    return passing;
}

}  // namespace knotsurf
