#include "knotsurf/triangulation.hpp"

#include "knotsurf/convention.hpp"
#include "knotsurf/smith.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <functional>
#include <numeric>
#include <sstream>

namespace knotsurf {

long long frame_debug_separates = 0, frame_debug_alt = 0, frame_debug_gloc = 0,
          frame_debug_gdup = 0;
long long assembly_debug_leaves = 0, assembly_debug_nodes = 0;
int assembly_candidate_order = 0;  // 0: mate first, 1: same-crossing first

namespace {

// Learned gluing patterns from successful assemblies: per wall type
// (sign, corner, top) a list of (partner-at-mate?, partner corner, partner
// top, corr) descriptors tried first on later searches.
struct PatternHint {
    bool at_mate;
    int corner, top;
    bool corr;
    bool operator==(const PatternHint& o) const {
        return at_mate == o.at_mate && corner == o.corner && top == o.top && corr == o.corr;
    }
};
std::map<std::tuple<int, int, int>, std::vector<PatternHint>> g_hints;
std::mutex g_hints_mu;

}  // namespace


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

// Octahedron-coordinate maps of the five tetrahedra (z, u_f, u_b, l_f, l_b),
// derived from Tables 1 and 2: each printed pairing is the identity gluing
// on a shared octahedron face under these vertex injections.
constexpr int kNegOmap[5][4] = {
    {1, 2, 3, 4},  // z
    {1, 0, 3, 2},  // u_f
    {1, 0, 3, 4},  // u_b
    {5, 2, 4, 1},  // l_f
    {2, 4, 3, 5},  // l_b
};
constexpr int kPosOmap[5][4] = {
    {2, 1, 4, 3},  // z
    {0, 4, 2, 1},  // u_f
    {4, 2, 3, 0},  // u_b
    {3, 5, 1, 2},  // l_f
    {3, 5, 1, 4},  // l_b
};

// Equator vertex per quadrant (N,E,S,W) and pole roles, by crossing sign.
struct SignTables {
    int quad_o[4];       // o-vertex in quadrant N, E, S, W
    bool north_pole[6];  // among o1..o4
};

SignTables sign_tables(int sign) {
    SignTables t{};
    const int* q = sign < 0 ? convention::quad_neg : convention::quad_pos;
    for (int i = 0; i < 4; ++i) t.quad_o[i] = q[i];
    if (sign < 0)
        t.north_pole[1] = t.north_pole[3] = true;
    else
        t.north_pole[2] = t.north_pole[4] = true;
    return t;
}

// door corner -> its two quadrants (N=0, E=1, S=2, W=3)
constexpr int kDoorQuads[4][2] = {
    {0, 3},  // NW
    {0, 1},  // NE
    {2, 1},  // SE
    {2, 3},  // SW
};

}  // namespace

void Triangulation::glue(int ta, std::array<int, 3> fa, int tb, std::array<int, 3> fb) {
    auto omitted = [](const std::array<int, 3>& f) { return 6 - f[0] - f[1] - f[2]; };
    int oa = omitted(fa), ob = omitted(fb);
    if (glue_[ta][oa] || glue_[tb][ob]) throw TriangulationError("face already glued");
    Gluing ga, gb;
    ga.other = tb;
    gb.other = ta;
    ga.vmap = {-1, -1, -1, -1};
    for (int i = 0; i < 3; ++i) ga.vmap[fa[i]] = fb[i];
    ga.vmap[oa] = ob;
    for (int i = 0; i < 4; ++i) gb.vmap[ga.vmap[i]] = i;
    glue_[ta][oa] = ga;
    glue_[tb][ob] = gb;
}

void Triangulation::unglue(int ta, std::array<int, 3> fa) {
    int oa = 6 - fa[0] - fa[1] - fa[2];
    if (!glue_[ta][oa]) throw TriangulationError("face not glued");
    Gluing g = *glue_[ta][oa];
    glue_[ta][oa].reset();
    glue_[g.other][g.vmap[oa]].reset();
}

std::vector<std::pair<int, int>> Triangulation::free_faces() const {
    std::vector<std::pair<int, int>> out;
    for (int t = 0; t < tet_count(); ++t)
        for (int f = 0; f < 4; ++f)
            if (!glue_[t][f]) out.push_back({t, f});
    return out;
}

namespace {
int relabel_classes(UF& uf, int n, std::vector<int>& out) {
    std::map<int, int> ids;
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        auto [it, fresh] = ids.try_emplace(r, (int)ids.size());
        out[i] = it->second;
    }
    return (int)ids.size();
}
}  // namespace

std::vector<int> Triangulation::vertex_classes() const {
    UF uf(4 * tet_count());
    for (int t = 0; t < tet_count(); ++t)
        for (int f = 0; f < 4; ++f)
            if (glue_[t][f])
                for (int v = 0; v < 4; ++v)
                    if (v != f) uf.unite(4 * t + v, 4 * glue_[t][f]->other + glue_[t][f]->vmap[v]);
    std::vector<int> cls;
    relabel_classes(uf, 4 * tet_count(), cls);
    return cls;
}

int Triangulation::vertex_class_count() const {
    auto cls = vertex_classes();
    return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
}

int Triangulation::edge_slot(int a, int b) {
    if (a > b) std::swap(a, b);
    static const int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[a][b];
}

std::pair<int, int> Triangulation::edge_pair(int slot) {
    static const std::pair<int, int> table[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return table[slot];
}

std::vector<int> Triangulation::edge_classes() const {
    UF uf(6 * tet_count());
    for (int t = 0; t < tet_count(); ++t)
        for (int f = 0; f < 4; ++f)
            if (glue_[t][f]) {
                auto& g = *glue_[t][f];
                for (int a = 0; a < 4; ++a)
                    for (int b = a + 1; b < 4; ++b) {
                        if (a == f || b == f) continue;
                        uf.unite(6 * t + edge_slot(a, b),
                                 6 * g.other + edge_slot(g.vmap[a], g.vmap[b]));
                    }
            }
    std::vector<int> cls;
    relabel_classes(uf, 6 * tet_count(), cls);
    return cls;
}

int Triangulation::edge_class_count() const {
    auto cls = edge_classes();
    return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
}

std::vector<bool> Triangulation::edge_class_on_boundary() const {
    auto cls = edge_classes();
    int n = edge_class_count();
    std::vector<bool> bd(n, false);
    for (int t = 0; t < tet_count(); ++t)
        for (int f = 0; f < 4; ++f)
            if (!glue_[t][f])
                for (int a = 0; a < 4; ++a)
                    for (int b = a + 1; b < 4; ++b)
                        if (a != f && b != f) bd[cls[6 * t + edge_slot(a, b)]] = true;
    return bd;
}

Triangulation::EdgeRing Triangulation::edge_ring(int tet, int a, int b) const {
    EdgeRing ring;
    auto other_two = [&](int x, int y) {
        std::array<int, 2> o{};
        int k = 0;
        for (int v = 0; v < 4; ++v)
            if (v != x && v != y) o[k++] = v;
        return o;
    };
    // step across the face {a, b, via}
    auto step = [&](int tt, int& aa, int& bb, int via) -> int {
        int fourth = 6 - aa - bb - via;
        auto& g = glue_[tt][fourth];
        if (!g) return -1;
        int na = g->vmap[aa], nb = g->vmap[bb];
        aa = na;
        bb = nb;
        return g->other;
    };

    auto o = other_two(a, b);
    int t = tet, ca = a, cb = b, entry = o[0];
    // rewind to a boundary if the class is open
    {
        int guard = 0;
        int rt = t, ra = ca, rb = cb, rentry = entry;
        while (guard++ <= 6 * tet_count()) {
            int na = ra, nb = rb;
            int fourth_via = rentry;
            int nt;
            {
                int tmpa = ra, tmpb = rb;
                nt = step(rt, tmpa, tmpb, fourth_via);
                na = tmpa;
                nb = tmpb;
            }
            if (nt < 0) {
                t = rt;
                ca = ra;
                cb = rb;
                entry = rentry;
                break;
            }
            // entering nt through the image face; next entry vertex = image of exit
            auto& g = *glue_[rt][6 - ra - rb - rentry];
            int image_entry = g.vmap[rentry];
            int nexit = image_entry;
            rt = nt;
            ra = na;
            rb = nb;
            // new entry is the other vertex
            rentry = 6 - ra - rb - nexit;
            if (rt == t && ra == a && rb == b && rentry == o[0]) break;  // closed
        }
    }

    int st = t, sa = ca, sb = cb, sentry = entry;
    int guard = 0;
    while (guard++ <= 6 * tet_count() + 2) {
        int exit = 6 - ca - cb - entry;
        ring.steps.push_back({t, ca, cb, entry, exit});
        auto& g = glue_[t][6 - ca - cb - entry == exit ? 6 - ca - cb - entry : exit];
        (void)g;
        auto& gl = glue_[t][exit];
        if (!gl) {
            ring.closed = false;
            return ring;
        }
        int na = gl->vmap[ca], nb = gl->vmap[cb], nentry = gl->vmap[exit];
        t = gl->other;
        ca = na;
        cb = nb;
        entry = nentry;
        if (t == st && entry == sentry && ((ca == sa && cb == sb) || (ca == sb && cb == sa))) {
            ring.closed = true;
            ring.orientation_consistent = (ca == sa && cb == sb);
            return ring;
        }
    }
    throw TriangulationError("edge ring walk did not terminate");
}

ValidationReport Triangulation::validate() const {
    ValidationReport r;
    r.tet_count = tet_count();
    r.free_faces = (int)free_faces().size();

    for (int t = 0; t < tet_count(); ++t)
        for (int f = 0; f < 4; ++f)
            if (glue_[t][f]) {
                auto& g = *glue_[t][f];
                auto& h = glue_[g.other][g.vmap[f]];
                if (!h || h->other != t) {
                    r.ok = false;
                    r.failures.push_back("unpaired face at " + tets[t].label);
                    continue;
                }
                for (int v = 0; v < 4; ++v)
                    if (h->vmap[g.vmap[v]] != v) {
                        r.ok = false;
                        r.failures.push_back("non-involutive pairing at " + tets[t].label);
                        break;
                    }
            }

    r.vertex_classes = vertex_class_count();
    auto ecls = edge_classes();
    r.edge_classes = edge_class_count();
    {
        int glued = 0;
        for (int t = 0; t < tet_count(); ++t)
            for (int f = 0; f < 4; ++f)
                if (glue_[t][f]) glued++;
        r.face_classes = glued / 2 + r.free_faces;
    }

    // orientability
    {
        std::vector<int> color(tet_count(), 0);
        std::vector<int> stack;
        bool ok = true;
        for (int s = 0; s < tet_count() && ok; ++s) {
            if (color[s]) continue;
            color[s] = 1;
            stack.push_back(s);
            while (!stack.empty() && ok) {
                int t = stack.back();
                stack.pop_back();
                for (int f = 0; f < 4; ++f) {
                    if (!glue_[t][f]) continue;
                    auto& g = *glue_[t][f];
                    int inv = 0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = i + 1; j < 4; ++j)
                            if (g.vmap[i] > g.vmap[j]) inv++;
                    int want = (inv % 2 == 1) ? color[t] : -color[t];
                    if (color[g.other] == 0) {
                        color[g.other] = want;
                        stack.push_back(g.other);
                    } else if (color[g.other] != want) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        r.orientable = ok;
        if (!ok) {
            r.ok = false;
            r.failures.push_back("not orientable");
        }
    }

    // interior edge-class closure
    {
        auto on_bd = edge_class_on_boundary();
        std::vector<bool> done(std::max(1, r.edge_classes), false);
        for (int t = 0; t < tet_count(); ++t)
            for (int s = 0; s < 6; ++s) {
                int c = ecls[6 * t + s];
                if (done[c]) continue;
                done[c] = true;
                if (on_bd[c]) continue;
                auto [a, b] = edge_pair(s);
                auto ring = edge_ring(t, a, b);
                if (!ring.closed) {
                    r.ok = false;
                    r.failures.push_back("interior edge class not closed");
                } else if (!ring.orientation_consistent) {
                    r.ok = false;
                    r.failures.push_back("edge class closes with a flip");
                }
            }
    }

    // vertex link Euler characteristics
    {
        auto vcls = vertex_classes();
        int nv = r.vertex_classes;
        std::vector<int> link_tris(nv, 0), link_edges(nv, 0), link_verts(nv, 0);
        for (int t = 0; t < tet_count(); ++t)
            for (int v = 0; v < 4; ++v) link_tris[vcls[4 * t + v]]++;
        // link edge classes: (tet, corner v, face f) arcs glued across pairings
        UF euf(16 * tet_count());
        // link vertex classes: (tet, corner v, towards u) points
        UF vuf(16 * tet_count());
        for (int t = 0; t < tet_count(); ++t)
            for (int f = 0; f < 4; ++f) {
                if (!glue_[t][f]) continue;
                auto& g = *glue_[t][f];
                for (int v = 0; v < 4; ++v) {
                    if (v == f) continue;
                    euf.unite(16 * t + 4 * v + f, 16 * g.other + 4 * g.vmap[v] + g.vmap[f]);
                    for (int u = 0; u < 4; ++u) {
                        if (u == v || u == f) continue;
                        vuf.unite(16 * t + 4 * v + u, 16 * g.other + 4 * g.vmap[v] + g.vmap[u]);
                    }
                }
            }
        std::set<int> eseen, vseen;
        for (int t = 0; t < tet_count(); ++t)
            for (int v = 0; v < 4; ++v)
                for (int u = 0; u < 4; ++u) {
                    if (u == v) continue;
                    if (eseen.insert(euf.find(16 * t + 4 * v + u)).second)
                        link_edges[vcls[4 * t + v]]++;
                    if (vseen.insert(vuf.find(16 * t + 4 * v + u)).second)
                        link_verts[vcls[4 * t + v]]++;
                }
        for (int c = 0; c < nv; ++c)
            r.cusp_euler.push_back(link_verts[c] - link_edges[c] + link_tris[c]);
    }
    return r;
}


Triangulation::Homology Triangulation::first_homology() const {
    int T = tet_count();
    auto vcls = vertex_classes();
    int nv = vcls.empty() ? 0 : *std::max_element(vcls.begin(), vcls.end()) + 1;

    // oriented edge classes: parity union-find over the 6T edge slots,
    // parity 1 when the canonical (min -> max) directions disagree.
    std::vector<int> parent(6 * T), par(6 * T, 0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::pair<int, int>(int)> find = [&](int x) {
        int p = 0;
        while (parent[x] != x) {
            p ^= par[x];
            x = parent[x];
        }
        return std::make_pair(x, p);
    };
    auto unite = [&](int a, int b, int parity) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return;
        parent[ra] = rb;
        par[ra] = pa ^ pb ^ parity;
    };
    for (int t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            auto& g = glue_[t][f];
            if (!g) continue;
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    if (a == f || b == f) continue;
                    int a2 = g->vmap[a], b2 = g->vmap[b];
                    int parity = a2 < b2 ? 0 : 1;
                    unite(6 * t + edge_slot(a, b), 6 * g->other + edge_slot(a2, b2), parity);
                }
        }
    std::map<int, int> eid;
    std::vector<int> ecls(6 * T), epar(6 * T);
    for (int i = 0; i < 6 * T; ++i) {
        auto [r, p] = find(i);
        auto [it, fresh] = eid.try_emplace(r, (int)eid.size());
        ecls[i] = it->second;
        epar[i] = p;
    }
    int ne = (int)eid.size();

    // d1: vertex boundary of each edge class (via any representative).
    std::vector<std::vector<long long>> d1(nv, std::vector<long long>(ne, 0));
    std::vector<bool> done(ne, false);
    for (int t = 0; t < T; ++t)
        for (int s2 = 0; s2 < 6; ++s2) {
            int cls = ecls[6 * t + s2];
            if (done[cls]) continue;
            done[cls] = true;
            auto [a, b] = edge_pair(s2);  // canonical a < b
            int head = vcls[4 * t + b], tail = vcls[4 * t + a];
            if (epar[6 * t + s2]) std::swap(head, tail);
            d1[head][cls] += 1;
            d1[tail][cls] -= 1;
        }

    // d2: one column per face class (free faces included).
    std::vector<std::vector<long long>> d2(ne);
    for (auto& row : d2) row.assign(0, 0);
    std::vector<std::vector<long long>> cols;
    std::set<std::pair<int, int>> seen;
    for (int t = 0; t < T; ++t)
        for (int f = 0; f < 4; ++f) {
            if (seen.count({t, f})) continue;
            seen.insert({t, f});
            auto& g = glue_[t][f];
            if (g) seen.insert({g->other, g->vmap[f]});
            std::array<int, 3> v{};
            int k = 0;
            for (int u = 0; u < 4; ++u)
                if (u != f) v[k++] = u;
            std::vector<long long> col(ne, 0);
            for (int i = 0; i < 3; ++i) {
                int a = v[i], b = v[(i + 1) % 3];
                int dir = a < b ? +1 : -1;
                int slot = 6 * t + edge_slot(a, b);
                int sign = dir * (epar[slot] ? -1 : +1);
                col[ecls[slot]] += sign;
            }
            cols.push_back(std::move(col));
        }
    int nf = (int)cols.size();
    std::vector<std::vector<long long>> d2m(ne, std::vector<long long>(nf, 0));
    for (int j = 0; j < nf; ++j)
        for (int i = 0; i < ne; ++i) d2m[i][j] = cols[j][i];

    SmithResult s1 = smith_normal_form(d1);
    SmithResult s2 = smith_normal_form(d2m);
    Homology h;
    h.rank = ne - s1.rank - s2.rank;
    h.torsion = s2.divisors;
    return h;
}

int Triangulation::find_tet(const std::string& label) const {
    for (int t = 0; t < tet_count(); ++t)
        if (tets[t].label == label) return t;
    throw TriangulationError("no tet labeled " + label);
}

std::string Triangulation::export_gluing_table() const {
    std::ostringstream os;
    os << "#tets " << tet_count() << "\n";
    for (int t = 0; t < tet_count(); ++t) os << "#tet " << t << " " << tets[t].label << "\n";
    auto freef = free_faces();
    os << "#free";
    for (auto& [t, f] : freef) {
        os << " " << tets[t].label << ":";
        for (int v = 0; v < 4; ++v)
            if (v != f) os << v;
    }
    os << "\n";
    for (int t = 0; t < tet_count(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (!glue_[t][f]) continue;
            auto& g = *glue_[t][f];
            if (g.other < t || (g.other == t && g.vmap[f] < f)) continue;
            std::array<int, 3> fa{}, fb{};
            int k = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) fa[k++] = v;
            for (int i = 0; i < 3; ++i) fb[i] = g.vmap[fa[i]];
            os << tets[t].label << ":" << fa[0] << fa[1] << fa[2] << " -> "
               << tets[g.other].label << ":" << fb[0] << fb[1] << fb[2] << "\n";
        }
    return os.str();
}

Triangulation parse_gluing_table(const std::string& text) {
    Triangulation tri;
    std::istringstream is(text);
    std::string line;
    std::map<std::string, int> by_label;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("#tet ", 0) == 0) {
            std::istringstream ls(line.substr(5));
            int idx;
            std::string label;
            ls >> idx >> label;
            by_label[label] = tri.add_tet(label);
            continue;
        }
        if (line[0] == '#') continue;
        auto arrow = line.find(" -> ");
        if (arrow == std::string::npos) throw TriangulationError("bad gluing line: " + line);
        auto parse_side = [&](const std::string& s) {
            auto colon = s.rfind(':');
            if (colon == std::string::npos) throw TriangulationError("bad side: " + s);
            std::string label = s.substr(0, colon);
            std::string digits = s.substr(colon + 1);
            if (digits.size() != 3) throw TriangulationError("bad face: " + s);
            std::array<int, 3> f{};
            for (int i = 0; i < 3; ++i) f[i] = digits[i] - '0';
            if (!by_label.count(label)) throw TriangulationError("unknown tet " + label);
            return std::make_pair(by_label[label], f);
        };
        auto [ta, fa] = parse_side(line.substr(0, arrow));
        auto [tb, fb] = parse_side(line.substr(arrow + 4));
        tri.glue(ta, fa, tb, fb);
    }
    return tri;
}

OctahedronTets crossing_octahedron(Triangulation& tri, int sign, int crossing_id) {
    static const char* names[5] = {"z", "uf", "ub", "lf", "lb"};
    OctahedronTets oct{};
    int ids[5];
    std::string prefix = "c" + std::to_string(crossing_id) + ":";
    for (int i = 0; i < 5; ++i) ids[i] = tri.add_tet(prefix + names[i]);
    oct.z = ids[0];
    oct.uf = ids[1];
    oct.ub = ids[2];
    oct.lf = ids[3];
    oct.lb = ids[4];
    auto omap = sign < 0 ? kNegOmap : kPosOmap;
    for (int i = 0; i < 5; ++i)
        for (int v = 0; v < 4; ++v) oct.omap[i][v] = omap[i][v];

    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            std::vector<std::pair<int, int>> shared;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    if (omap[i][a] == omap[j][b]) shared.push_back({a, b});
            if (shared.size() != 3) continue;
            std::array<int, 3> fa{}, fb{};
            for (int k = 0; k < 3; ++k) {
                fa[k] = shared[k].first;
                fb[k] = shared[k].second;
            }
            tri.glue(ids[i], fa, ids[j], fb);
        }
    return oct;
}

namespace {

int oct_tet_id(const OctahedronTets& oct, int i) {
    switch (i) {
        case 0: return oct.z;
        case 1: return oct.uf;
        case 2: return oct.ub;
        case 3: return oct.lf;
        default: return oct.lb;
    }
}

// wall at a door corner; top = apex o0, bottom = apex o5
WallRef wall_of(const OctahedronTets& oct, const SignTables& st, Corner door, bool top) {
    int apex_o = top ? 0 : 5;
    int e1 = st.quad_o[kDoorQuads[(int)door][0]];
    int e2 = st.quad_o[kDoorQuads[(int)door][1]];
    int north_o = st.north_pole[e1] ? e1 : e2;
    int south_o = st.north_pole[e1] ? e2 : e1;
    for (int i = 0; i < 5; ++i) {
        std::array<int, 3> locals{-1, -1, -1};
        int hit = 0;
        for (int v = 0; v < 4; ++v) {
            if (oct.omap[i][v] == apex_o) { locals[0] = v; hit++; }
            if (oct.omap[i][v] == north_o) { locals[1] = v; hit++; }
            if (oct.omap[i][v] == south_o) { locals[2] = v; hit++; }
        }
        if (hit == 3) return WallRef{oct_tet_id(oct, i), locals};
    }
    throw TriangulationError("wall not found");
}

}  // namespace

namespace {

// apexes on the knot; the two equatorial cusps labeled north then south in
// class-discovery order.
void label_roles(IdealStage& stage) {
    stage.roles.assign(4 * stage.tri.tet_count(), VertexRole::Knot);
    auto vcls = stage.tri.vertex_classes();
    std::map<int, int> eq_classes;
    for (size_t c = 0; c < stage.octs.size(); ++c) {
        const OctahedronTets& oct = stage.octs[c];
        for (int i = 0; i < 5; ++i) {
            int tet = oct_tet_id(oct, i);
            for (int v = 0; v < 4; ++v) {
                int o = oct.omap[i][v];
                if (o == 0 || o == 5) {
                    stage.roles[4 * tet + v] = VertexRole::Knot;
                } else {
                    int cls = vcls[4 * tet + v];
                    auto [it, fresh] = eq_classes.try_emplace(cls, (int)eq_classes.size());
                    stage.roles[4 * tet + v] =
                        it->second == 0 ? VertexRole::NorthPole : VertexRole::SouthPole;
                }
            }
        }
    }
    if (eq_classes.size() != 2) throw TriangulationError("pole classes inconsistent");
}

}  // namespace

IdealStage assemble_ideal(const KnotDiagram& d) { return assemble_ideal_accepting(d, nullptr); }

IdealStage assemble_ideal_accepting(const KnotDiagram& d,
                                    const std::function<bool(IdealStage&)>& accept_hook) {
    auto accept = [&](IdealStage& st) { return !accept_hook || accept_hook(st); };
    IdealStage stage;
    stage.diagram = d;
    int nc = d.crossing_number();
    stage.octs.reserve(nc);
    stage.walls.resize(nc);
    for (int c = 0; c < nc; ++c) {
        int sign = d.crossings[c].sign;
        OctahedronTets oct = crossing_octahedron(stage.tri, sign, c);
        stage.octs.push_back(oct);
        SignTables st = sign_tables(sign);
        for (int corner = 0; corner < 4; ++corner) {
            bool over = d.door_on_over_strand({c, (Corner)corner});
            stage.walls[c][corner][0] = wall_of(oct, st, (Corner)corner, over);
            stage.walls[c][corner][1] = wall_of(oct, st, (Corner)corner, !over);
        }
    }

    // The paper fixes the wrap and strand-merge identifications only through
    // its (unavailable) figures; they are pinned here by a deterministic
    // backtracking search over the outer-wall pairings, constrained hard:
    // knot apexes match, every gluing is orientation reversing, and the
    // completed complex must have three ideal vertices whose links are a
    // torus and two spheres, closed interior edge rings, and trivial first
    // homology of the quotient.
    struct WallSlot {
        int crossing, corner;
        bool top;
        WallRef ref;
    };
    std::vector<WallSlot> walls;
    std::map<std::pair<int, int>, int> by_face;  // (tet, omitted) -> wall id
    for (int c = 0; c < nc; ++c) {
        SignTables st = sign_tables(d.crossings[c].sign);
        for (int corner = 0; corner < 4; ++corner)
            for (int top = 0; top < 2; ++top) {
                WallRef w = wall_of(stage.octs[c], st, (Corner)corner, top);
                int omit = 6 - w.face[0] - w.face[1] - w.face[2];
                by_face[{w.tet, omit}] = (int)walls.size();
                walls.push_back({c, corner, (bool)top, w});
            }
    }
    int nw = (int)walls.size();

    // tet orientation colors from the internal block pairings
    std::vector<int> color(stage.tri.tet_count(), 0);
    for (int s0 = 0; s0 < stage.tri.tet_count(); ++s0) {
        if (color[s0]) continue;
        color[s0] = 1;
        std::vector<int> stack{s0};
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            for (int f = 0; f < 4; ++f) {
                auto& g = stage.tri.gluing(t, f);
                if (!g) continue;
                int inv = 0;
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j)
                        if (g->vmap[i] > g->vmap[j]) inv++;
                int want = (inv % 2 == 1) ? color[t] : -color[t];
                if (!color[g->other]) {
                    color[g->other] = want;
                    stack.push_back(g->other);
                }
            }
        }
    }
    auto orientation_ok = [&](const WallRef& a, const WallRef& b, bool swap) {
        std::array<int, 4> vmap{-1, -1, -1, -1};
        int oa = 6 - a.face[0] - a.face[1] - a.face[2];
        int ob = 6 - b.face[0] - b.face[1] - b.face[2];
        vmap[a.face[0]] = b.face[0];
        vmap[a.face[1]] = swap ? b.face[2] : b.face[1];
        vmap[a.face[2]] = swap ? b.face[1] : b.face[2];
        vmap[oa] = ob;
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (vmap[i] > vmap[j]) inv++;
        return (inv % 2 == 1) ? color[a.tet] == color[b.tet] : color[a.tet] != color[b.tet];
    };

    std::vector<int> partner(nw, -1);
    std::vector<bool> corr(nw, false);
    // candidates as (wall, corr) pairs so learned hints can pin both
    auto candidates = [&](int wi) {
        std::vector<std::pair<int, int>> out;  // (wall id, corr or -1 = both)
        const WallSlot& w = walls[wi];
        DoorRef mate = d.door_mate({w.crossing, (Corner)w.corner});
        auto find_wall = [&](int crossing, int corner, bool top) {
            for (int wj = 0; wj < nw; ++wj)
                if (walls[wj].crossing == crossing && walls[wj].corner == corner &&
                    walls[wj].top == top)
                    return wj;
            return -1;
        };
        {
            std::lock_guard<std::mutex> lock(g_hints_mu);
            auto it = g_hints.find({d.crossings[w.crossing].sign, w.corner, w.top});
            if (it != g_hints.end())
                for (const PatternHint& h : it->second) {
                    int wj = h.at_mate ? find_wall(mate.crossing, h.corner, h.top)
                                       : find_wall(w.crossing, h.corner, h.top);
                    if (wj >= 0 && wj != wi) out.push_back({wj, h.corr ? 1 : 0});
                }
        }
        for (int top = 0; top < 2; ++top) {
            bool kind = top == 0 ? w.top : !w.top;
            int wj = find_wall(mate.crossing, (int)mate.corner, kind);
            if (wj >= 0 && wj != wi) out.push_back({wj, -1});
        }
        for (int wj = 0; wj < nw; ++wj) {
            const WallSlot& v = walls[wj];
            if (wj != wi && v.crossing == w.crossing && v.corner != w.corner)
                out.push_back({wj, -1});
        }
        return out;
    };

    long long nodes = 0;
    const long long budget = 50000000;
    std::function<bool(int)> dfs = [&](int wi) -> bool {
        while (wi < nw && partner[wi] >= 0) ++wi;
        if (wi == nw) {
            // build and audit
            Triangulation t2 = stage.tri;
            for (int i = 0; i < nw; ++i) {
                if (partner[i] < i) continue;
                WallRef a = walls[i].ref;
                WallRef b = walls[partner[i]].ref;
                if (corr[i]) std::swap(b.face[1], b.face[2]);
                t2.glue(a.tet, a.face, b.tet, b.face);
            }
            auto rep = t2.validate();
            if (!rep.ok || !rep.orientable || rep.free_faces != 0 || rep.vertex_classes != 3)
                return false;
            // the knot class (all apex corners) must be the torus cusp and
            // the two equatorial classes the sphere cusps
            auto vcls2 = t2.vertex_classes();
            std::set<int> apex_cls, eq_cls;
            for (int c = 0; c < nc; ++c) {
                const OctahedronTets& oct = stage.octs[c];
                for (int i5 = 0; i5 < 5; ++i5) {
                    int tet = oct_tet_id(oct, i5);
                    for (int v = 0; v < 4; ++v) {
                        int o = oct.omap[i5][v];
                        (o == 0 || o == 5 ? apex_cls : eq_cls).insert(vcls2[4 * tet + v]);
                    }
                }
            }
            if (apex_cls.size() != 1 || eq_cls.size() != 2) return false;
            if (rep.cusp_euler[*apex_cls.begin()] != 0) return false;
            for (int cls : eq_cls)
                if (rep.cusp_euler[cls] != 2) return false;
            auto h1 = t2.first_homology();
            if (h1.rank != 0 || !h1.torsion.empty()) return false;
            assembly_debug_leaves++;
            // hand the candidate to the acceptance hook (frame existence etc.)
            Triangulation saved = stage.tri;
            stage.tri = std::move(t2);
            label_roles(stage);
            if (accept(stage)) return true;
            stage.tri = std::move(saved);
            stage.roles.clear();
            return false;
        }
        if (++nodes > budget) throw TriangulationError("assembly search budget exceeded");
        assembly_debug_nodes++;
        std::set<std::pair<int, int>> tried;
        for (auto& [wj, fixed_corr] : candidates(wi)) {
            if (partner[wj] >= 0) continue;
            for (int sw = 0; sw < 2; ++sw) {
                if (fixed_corr >= 0 && sw != fixed_corr) continue;
                if (!tried.insert({wj, sw}).second) continue;
                if (!orientation_ok(walls[wi].ref, walls[wj].ref, sw)) continue;
                partner[wi] = wj;
                partner[wj] = wi;
                corr[wi] = sw;
                if (dfs(wi + 1)) return true;
                partner[wi] = partner[wj] = -1;
            }
        }
        return false;
    };
    if (!dfs(0)) throw TriangulationError("diagram connectivity error: no valid assembly");

    // record the successful patterns as hints for later searches
    {
        std::lock_guard<std::mutex> lock(g_hints_mu);
        for (int wi = 0; wi < nw; ++wi) {
            if (partner[wi] < wi) continue;
            const WallSlot& a = walls[wi];
            const WallSlot& b = walls[partner[wi]];
            DoorRef mate = d.door_mate({a.crossing, (Corner)a.corner});
            PatternHint h;
            h.at_mate = b.crossing != a.crossing;
            if (h.at_mate && b.crossing != mate.crossing) continue;
            h.corner = b.corner;
            h.top = b.top;
            h.corr = corr[wi];
            auto key = std::make_tuple(d.crossings[a.crossing].sign, a.corner, (int)a.top);
            auto& vec = g_hints[key];
            if (std::find(vec.begin(), vec.end(), h) == vec.end()) vec.push_back(h);
        }
    }
    return stage;
}

void insert_pillows(IdealStage& stage) {
    Triangulation& tri = stage.tri;
    auto has_role = [&](int tet, int f, VertexRole role) {
        for (int v = 0; v < 4; ++v)
            if (v != f && stage.roles[4 * tet + v] == role) return true;
        return false;
    };
    std::array<std::pair<int, int>, 2> chosen{std::pair<int, int>{-1, -1},
                                              std::pair<int, int>{-1, -1}};
    std::set<std::pair<int, int>> used;
    VertexRole want[2] = {VertexRole::NorthPole, VertexRole::SouthPole};
    for (int k = 0; k < 2; ++k) {
        for (int t = 0; t < tri.tet_count() && chosen[k].first < 0; ++t)
            for (int f = 0; f < 4; ++f) {
                if (used.count({t, f})) continue;
                if (!tri.gluing(t, f)) continue;
                auto& g = *tri.gluing(t, f);
                if (used.count({g.other, g.vmap[f]})) continue;
                if (has_role(t, f, VertexRole::Knot) && has_role(t, f, want[k])) {
                    chosen[k] = {t, f};
                    used.insert({t, f});
                    used.insert({g.other, g.vmap[f]});
                    break;
                }
            }
        if (chosen[k].first < 0) throw TriangulationError("pillow placement failure");
    }

    for (int k = 0; k < 2; ++k) {
        auto [p, f] = chosen[k];
        auto g = *tri.gluing(p, f);
        int p2 = g.other;
        std::array<int, 3> fv{};
        {
            int i = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) fv[i++] = v;
        }
        std::string prefix = "P" + std::to_string(k) + ":";
        int t0 = tri.add_tet(prefix + "0");
        int t1 = tri.add_tet(prefix + "1");
        tri.glue(t0, {0, 1, 2}, t1, {0, 1, 3});
        tri.glue(t0, {1, 2, 3}, t1, {0, 1, 2});
        tri.glue(t1, {0, 2, 3}, t1, {1, 2, 3});
        stage.pillow_tets.push_back(t0);
        stage.pillow_tets.push_back(t1);
        stage.roles.resize(4 * tri.tet_count(), VertexRole::Knot);
        stage.roles[4 * t0 + 3] = want[k];
        stage.roles[4 * t1 + 2] = want[k];

        int pole_v = -1;
        for (int v : fv)
            if (stage.roles[4 * p + v] == want[k]) pole_v = v;
        if (pole_v < 0) throw TriangulationError("pillow pole corner missing");
        std::array<int, 2> bigs{};
        {
            int i = 0;
            for (int v : fv)
                if (v != pole_v) bigs[i++] = v;
        }
        tri.unglue(p, fv);
        bool placed = false;
        for (int attempt = 0; attempt < 2 && !placed; ++attempt) {
            std::array<int, 3> pa = {bigs[0], bigs[1], pole_v};
            if (attempt == 1) pa = {bigs[1], bigs[0], pole_v};
            // free pillow faces: A = t0(013), B = t0(023); through-map A->B is
            // t0-0 -> t0-0, t0-1 -> t0-2, t0-3 -> t0-3.
            tri.glue(p, pa, t0, {0, 1, 3});
            std::array<int, 3> qb = {g.vmap[pa[0]], g.vmap[pa[1]], g.vmap[pa[2]]};
            tri.glue(t0, {0, 2, 3}, p2, qb);
            auto rep = tri.validate();
            if (rep.orientable) {
                placed = true;
            } else {
                tri.unglue(p, pa);
                tri.unglue(t0, {0, 2, 3});
            }
        }
        if (!placed) throw TriangulationError("pillow orientation failure");
    }
    for (auto& role : stage.roles) role = VertexRole::Cusp;
}

int BoundarySurface::euler() const { return bvertex_count - bedge_count + (int)tris.size(); }

BoundarySurface boundary_surface(const Triangulation& tri) {
    BoundarySurface s;
    std::map<std::pair<int, int>, int> tri_index;
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int v = 0; v < 4; ++v) {
            tri_index[{t, v}] = (int)s.tris.size();
            s.tris.push_back({t, v});
        }
    int n = (int)s.tris.size();
    s.side_face.resize(n);
    s.adj.assign(n, {std::pair<int, int>{-1, -1}, std::pair<int, int>{-1, -1},
                     std::pair<int, int>{-1, -1}});
    for (int i = 0; i < n; ++i) {
        int v = s.tris[i].corner;
        int k = 0;
        for (int u = 0; u < 4; ++u)
            if (u != v) s.side_face[i][k++] = u;
    }
    auto side_of = [&](int i, int face) {
        for (int k = 0; k < 3; ++k)
            if (s.side_face[i][k] == face) return k;
        throw TriangulationError("boundary side not found");
    };
    for (int i = 0; i < n; ++i) {
        auto [t, v] = std::pair<int, int>(s.tris[i].tet, s.tris[i].corner);
        for (int k = 0; k < 3; ++k) {
            int f = s.side_face[i][k];
            auto& g = tri.gluing(t, f);
            if (!g) continue;
            int j = tri_index.at({g->other, g->vmap[v]});
            s.adj[i][k] = {j, side_of(j, g->vmap[f])};
        }
    }
    UF uf(16 * tri.tet_count());
    auto corner_id = [&](int t, int v, int u) { return 16 * t + 4 * v + u; };
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int f = 0; f < 4; ++f) {
            auto& g = tri.gluing(t, f);
            if (!g) continue;
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                for (int u = 0; u < 4; ++u) {
                    if (u == v || u == f) continue;
                    uf.unite(corner_id(t, v, u), corner_id(g->other, g->vmap[v], g->vmap[u]));
                }
            }
        }
    std::map<int, int> vclass;
    s.bvertex.assign(n, {-1, -1, -1});
    for (int i = 0; i < n; ++i) {
        auto [t, v] = std::pair<int, int>(s.tris[i].tet, s.tris[i].corner);
        for (int k = 0; k < 3; ++k) {
            int u = s.side_face[i][k];
            int root = uf.find(corner_id(t, v, u));
            auto [it, fresh] = vclass.try_emplace(root, (int)vclass.size());
            s.bvertex[i][k] = it->second;
        }
    }
    s.bvertex_count = (int)vclass.size();
    s.bedge.assign(n, {-1, -1, -1});
    int ecount = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k) {
            if (s.bedge[i][k] >= 0) continue;
            s.bedge[i][k] = ecount;
            auto [j, l] = s.adj[i][k];
            if (j >= 0) s.bedge[j][l] = ecount;
            ecount++;
        }
    s.bedge_count = ecount;
    return s;
}

// Corner k of boundary triangle (t, v) truncates tet-edge (v, side_face[k]);
// side k of the triangle is the arc in face side_face[k], whose endpoints are
// the corners at the other two slots.

namespace {

struct FrameSearch {
    const IdealStage* stage;
    const Triangulation* tri;
    BoundarySurface bs;
    std::set<int> pillows;
    int ntri = 0;
    // incident usable edge slots per boundary vertex
    std::vector<std::vector<std::pair<int, int>>> incident;

    bool usable(int i, int k) const {
        if (pillows.count(bs.tris[i].tet)) return false;
        auto [j, l] = bs.adj[i][k];
        return j >= 0 && !pillows.count(bs.tris[j].tet);
    }
    std::array<int, 2> ends(int i, int k) const {
        return {bs.bvertex[i][(k + 1) % 3], bs.bvertex[i][(k + 2) % 3]};
    }
    std::pair<int, int> fclass(int i, int k) const {
        auto [j, l] = bs.adj[i][k];
        auto a = std::make_pair(bs.tris[i].tet, bs.side_face[i][k]);
        if (j < 0) return a;
        return std::min(a, std::make_pair(bs.tris[j].tet, bs.side_face[j][l]));
    }
};

// an embedded edge-cycle through v*, as ordered (tri, side, to-vertex) steps
using Cycle = std::vector<std::tuple<int, int, int>>;

// enumerate embedded cycles through vstar in breadth-first order of length,
// avoiding the given edge ids / face classes / vertices
void cycles_through(const FrameSearch& fs, int vstar, const std::set<int>& avoid_edges,
                    const std::set<std::pair<int, int>>& avoid_fcs,
                    const std::set<int>& avoid_verts, int max_len,
                    const std::function<bool(const Cycle&)>& visit) {
    // iterative deepening DFS for determinism and embeddedness
    Cycle path;
    std::set<int> used_verts;
    std::set<std::pair<int, int>> used_fcs;
    std::set<int> used_edges;
    std::function<bool(int, int)> dfs = [&](int v, int depth) -> bool {
        if (depth > max_len) return false;
        for (auto& [i, k] : fs.incident[v]) {
            int be = fs.bs.bedge[i][k];
            if (avoid_edges.count(be) || used_edges.count(be)) continue;
            auto fc = fs.fclass(i, k);
            if (avoid_fcs.count(fc) || used_fcs.count(fc)) continue;
            auto e = fs.ends(i, k);
            int to = e[0] == v ? e[1] : e[0];
            if (e[0] != v && e[1] != v) continue;
            if (to == vstar && depth >= 1) {
                path.push_back({i, k, to});
                if (visit(path)) return true;
                path.pop_back();
                continue;
            }
            if (avoid_verts.count(to) || used_verts.count(to) || to == vstar) continue;
            path.push_back({i, k, to});
            used_verts.insert(to);
            used_fcs.insert(fc);
            used_edges.insert(be);
            if (dfs(to, depth + 1)) return true;
            used_edges.erase(be);
            used_fcs.erase(fc);
            used_verts.erase(to);
            path.pop_back();
        }
        return false;
    };
    for (int len = 1; len <= max_len; ++len) {
        // depth-limited search at exactly this length bound
        std::function<bool(int, int)> dfs_exact = [&](int v, int depth) -> bool {
            for (auto& [i, k] : fs.incident[v]) {
                int be = fs.bs.bedge[i][k];
                if (avoid_edges.count(be) || used_edges.count(be)) continue;
                auto fc = fs.fclass(i, k);
                if (avoid_fcs.count(fc) || used_fcs.count(fc)) continue;
                auto e = fs.ends(i, k);
                if (e[0] != v && e[1] != v) continue;
                int to = e[0] == v ? e[1] : e[0];
                if (to == vstar && depth + 1 == len) {
                    path.push_back({i, k, to});
                    if (visit(path)) return true;
                    path.pop_back();
                    continue;
                }
                if (depth + 1 >= len) continue;
                if (avoid_verts.count(to) || used_verts.count(to) || to == vstar) continue;
                path.push_back({i, k, to});
                used_verts.insert(to);
                used_fcs.insert(fc);
                used_edges.insert(be);
                if (dfs_exact(to, depth + 1)) return true;
                used_edges.erase(be);
                used_fcs.erase(fc);
                used_verts.erase(to);
                path.pop_back();
            }
            return false;
        };
        if (dfs_exact(vstar, 0)) return;
    }
    (void)dfs;
}

}  // namespace

Frame choose_frame(const IdealStage& stage) {
    FrameSearch fs;
    fs.stage = &stage;
    fs.tri = &stage.tri;
    fs.bs = boundary_surface(stage.tri);
    fs.pillows = std::set<int>(stage.pillow_tets.begin(), stage.pillow_tets.end());
    fs.ntri = (int)fs.bs.tris.size();
    fs.incident.assign(fs.bs.bvertex_count, {});
    for (int i = 0; i < fs.ntri; ++i)
        for (int k = 0; k < 3; ++k) {
            auto [j, l] = fs.bs.adj[i][k];
            if (j >= 0 && (j < i || (j == i && l < k))) continue;  // one slot per edge
            if (!fs.usable(i, k)) continue;
            auto e = fs.ends(i, k);
            fs.incident[e[0]].push_back({i, k});
            if (e[1] != e[0]) fs.incident[e[1]].push_back({i, k});
        }

    auto make_edge = [&](int i, int k, int bwd_vertex_class) {
        Frame::FrameEdge e;
        e.tet = fs.bs.tris[i].tet;
        int apex = fs.bs.tris[i].corner;
        int u1 = fs.bs.side_face[i][(k + 1) % 3];
        int u2 = fs.bs.side_face[i][(k + 2) % 3];
        int c1 = fs.bs.bvertex[i][(k + 1) % 3];
        int fwd = c1 == bwd_vertex_class ? u2 : u1;
        int bwd = c1 == bwd_vertex_class ? u1 : u2;
        e.face = {apex, fwd, bwd};
        return e;
    };

    // germ of a cycle end at vstar: (tri, side, corner-slot of that end)
    auto germ_of = [&](int i, int k, int at_vertex, bool at_start) -> std::array<int, 3> {
        // the step (i,k) connects two corner slots; the germ at `at_vertex`
        // is the corner slot holding it; loops distinguish ends by order.
        int s1 = (k + 1) % 3, s2 = (k + 2) % 3;
        int c1 = fs.bs.bvertex[i][s1];
        int slot;
        if (c1 == at_vertex && fs.bs.bvertex[i][s2] == at_vertex)
            slot = at_start ? s1 : s2;  // loop edge: fixed convention
        else
            slot = c1 == at_vertex ? s1 : s2;
        return {i, k, slot};
    };

    // canonical germ: translate (tri, side, corner) to the lexicographically
    // smaller side of the edge via the exact gluing map
    auto canon_germ = [&](std::array<int, 3> g) -> std::array<int, 3> {
        auto [i, k, c] = g;
        int t = fs.bs.tris[i].tet, v = fs.bs.tris[i].corner;
        int f = fs.bs.side_face[i][k];
        auto& gl = fs.tri->gluing(t, f);
        if (!gl) return g;
        int j = -1;
        for (int i2 = 0; i2 < fs.ntri; ++i2)
            if (fs.bs.tris[i2].tet == gl->other && fs.bs.tris[i2].corner == gl->vmap[v]) j = i2;
        int l = -1, cj = -1;
        for (int k2 = 0; k2 < 3; ++k2) {
            if (fs.bs.side_face[j][k2] == gl->vmap[f]) l = k2;
            if (fs.bs.side_face[j][k2] == gl->vmap[fs.bs.side_face[i][c]]) cj = k2;
        }
        if (j < 0 || l < 0 || cj < 0) return g;
        if (std::make_pair(j, l) < std::make_pair(i, k)) return {j, l, cj};
        return g;
    };

    // cyclic rotation of edge germs around a vertex
    auto rotation_at = [&](int vstar) {
        std::vector<std::array<int, 3>> rot;
        // find a starting germ
        int si = -1, sk = -1, sc = -1;
        for (int i = 0; i < fs.ntri && si < 0; ++i)
            for (int k = 0; k < 3 && si < 0; ++k) {
                for (int c = 0; c < 3; ++c)
                    if (c != k && fs.bs.bvertex[i][c] == vstar) {
                        si = i;
                        sk = k;
                        sc = c;
                        break;
                    }
            }
        if (si < 0) throw TriangulationError("rotation start not found");
        int i = si, k = sk, c = sc;
        int guard = 0;
        do {
            rot.push_back(canon_germ({i, k, c}));
            int t = fs.bs.tris[i].tet, v = fs.bs.tris[i].corner;
            int f = fs.bs.side_face[i][k];
            auto& g = fs.tri->gluing(t, f);
            if (!g) throw TriangulationError("boundary rotation hit surface boundary");
            int j = -1;
            // triangle of (g->other, g->vmap[v])
            for (int i2 = 0; i2 < fs.ntri; ++i2)
                if (fs.bs.tris[i2].tet == g->other && fs.bs.tris[i2].corner == g->vmap[v]) j = i2;
            int l = -1, cj = -1;
            for (int k2 = 0; k2 < 3; ++k2) {
                if (fs.bs.side_face[j][k2] == g->vmap[f]) l = k2;
                if (fs.bs.side_face[j][k2] == g->vmap[fs.bs.side_face[i][c]]) cj = k2;
            }
            if (l < 0 || cj < 0) throw TriangulationError("rotation step failed");
            int nk = 3 - l - cj;
            i = j;
            k = nk;
            c = cj;
            if (guard++ > 100000) throw TriangulationError("rotation not closing");
        } while (!(i == si && k == sk && c == sc));
        return rot;
    };

    // essential test: cutting the torus along the cycle leaves it connected
    auto essential = [&](const std::set<int>& cut_edges) {
        std::vector<int> comp(fs.ntri, -1);
        std::vector<int> stk{0};
        comp[0] = 0;
        for (size_t si = 0; si < stk.size(); ++si)
            for (int k3 = 0; k3 < 3; ++k3) {
                auto [j3, l3] = fs.bs.adj[stk[si]][k3];
                if (j3 < 0 || comp[j3] != -1) continue;
                if (cut_edges.count(fs.bs.bedge[stk[si]][k3])) continue;
                comp[j3] = 0;
                stk.push_back(j3);
            }
        for (int t0 = 0; t0 < fs.ntri; ++t0)
            if (comp[t0] != 0) return false;
        return true;
    };
    struct FrameBudget {};
    auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(1500);
    long long pair_budget = 200000;
    long long clock_probe = 0;
    auto check_budget = [&]() {
        if ((++clock_probe & 1023) == 0 && std::chrono::steady_clock::now() > deadline)
            throw FrameBudget{};
    };

    // try branch points in deterministic order
    for (int vstar = 0; vstar < fs.bs.bvertex_count; ++vstar) {
        if (fs.incident[vstar].empty()) continue;
        Frame found;
        bool have = false;
        try {
        // meridian candidates: short cycles through vstar
        cycles_through(fs, vstar, {}, {}, {}, 8, [&](const Cycle& ycyc) {
            std::set<int> yedges;
            std::set<std::pair<int, int>> yfcs;
            std::set<int> yverts;
            for (auto& [i, k, tv] : ycyc) {
                yedges.insert(fs.bs.bedge[i][k]);
                yfcs.insert(fs.fclass(i, k));
                if (tv != vstar) yverts.insert(tv);
            }
            check_budget();
            if (!essential(yedges)) return false;
            if (--pair_budget <= 0) throw FrameBudget{};
            cycles_through(fs, vstar, yedges, yfcs, yverts, 10, [&](const Cycle& xcyc) {
                check_budget();
                // spine check: complement connected
                std::set<int> fb = yedges;
                for (auto& [i, k, tv] : xcyc) fb.insert(fs.bs.bedge[i][k]);
                std::vector<int> comp(fs.ntri, -1);
                std::vector<int> stk{0};
                comp[0] = 0;
                for (size_t si = 0; si < stk.size(); ++si)
                    for (int k3 = 0; k3 < 3; ++k3) {
                        auto [j3, l3] = fs.bs.adj[stk[si]][k3];
                        if (j3 < 0 || comp[j3] != -1) continue;
                        if (fb.count(fs.bs.bedge[stk[si]][k3])) continue;
                        comp[j3] = 0;
                        stk.push_back(j3);
                    }
                for (int t0 = 0; t0 < fs.ntri; ++t0)
                    if (comp[t0] != 0) { frame_debug_separates++; return false; }
                // transversality: the four branch germs must alternate x,y
                auto rot = rotation_at(vstar);
                auto locate = [&](std::array<int, 3> g) -> int {
                    for (size_t r = 0; r < rot.size(); ++r)
                        if (rot[r] == g) return (int)r;
                    return -1;
                };
                auto& [xi0, xk0, xv0] = xcyc.front();
                auto& [xiL, xkL, xvL] = xcyc.back();
                auto& [yi0, yk0, yv0] = ycyc.front();
                auto& [yiL, ykL, yvL] = ycyc.back();
                int first_x0 = xcyc.size() == 1 ? 1 : (fs.ends(xi0, xk0)[0] == vstar &&
                                                       fs.ends(xi0, xk0)[1] == vstar)
                                  ? 1 : 1;
                (void)first_x0;
                std::array<int, 3> gx_start = canon_germ(germ_of(xi0, xk0, vstar, true));
                std::array<int, 3> gx_end = canon_germ(germ_of(xiL, xkL, vstar, false));
                std::array<int, 3> gy_start = canon_germ(germ_of(yi0, yk0, vstar, true));
                std::array<int, 3> gy_end = canon_germ(germ_of(yiL, ykL, vstar, false));
                int px0 = locate(gx_start), px1 = locate(gx_end);
                int py0 = locate(gy_start), py1 = locate(gy_end);
                if (px0 < 0 || px1 < 0 || py0 < 0 || py1 < 0) { frame_debug_gloc++; return false; }
                if (px0 == px1 || py0 == py1) { frame_debug_gdup++; return false; }
                // order around the vertex: x, y, x, y
                std::vector<std::pair<int, char>> order = {{px0, 'x'}, {px1, 'x'},
                                                           {py0, 'y'}, {py1, 'y'}};
                std::sort(order.begin(), order.end());
                bool alternating = order[0].second != order[1].second &&
                                   order[1].second != order[2].second &&
                                   order[2].second != order[3].second;
                if (!alternating) { frame_debug_alt++; return false; }

                // accept: build the frame
                int cur = vstar;
                for (auto& [i, k, tv] : xcyc) {
                    found.longitude.push_back(make_edge(i, k, cur));
                    cur = tv;
                }
                cur = vstar;
                for (auto& [i, k, tv] : ycyc) {
                    found.meridian.push_back(make_edge(i, k, cur));
                    cur = tv;
                }
                have = true;
                return true;
            });
            return have;
        });
        } catch (const FrameBudget&) {
            throw TriangulationError("frame placement failure (budget)");
        }
        if (!have) continue;

        // bookkeeping: crossing of the meridian's first tet, region gaps
        std::vector<int> tet_crossing(stage.tri.tet_count(), -1);
        for (int c = 0; c < (int)stage.octs.size(); ++c)
            for (int t5 = 0; t5 < 5; ++t5) tet_crossing[oct_tet_id(stage.octs[c], t5)] = c;
        found.branch_crossing = tet_crossing[found.meridian.front().tet];
        const KnotDiagram& d = stage.diagram;
        for (auto& fe : found.longitude) {
            int ca = tet_crossing[fe.tet];
            int omit = 6 - fe.face[0] - fe.face[1] - fe.face[2];
            auto& g = stage.tri.gluing(fe.tet, omit);
            int cb = g ? tet_crossing[g->other] : -1;
            if (ca >= 0 && cb >= 0) {
                fe.exit_crossing = ca;
                fe.enter_crossing = cb;
                fe.exit_pos = d.crossings[ca].pos;
                fe.enter_pos = d.crossings[cb].pos;
                if (d.crossings[ca].region == d.crossings[cb].region &&
                    std::abs(fe.exit_pos - fe.enter_pos) == 1)
                    fe.region = d.crossings[ca].region;
            }
        }
        return found;
    }
    throw TriangulationError("frame placement failure");
}

namespace {

// Consistently orient the boundary surface; returns +1/-1 per triangle.
std::vector<int> orient_boundary(const BoundarySurface& bs) {
    int n = (int)bs.tris.size();
    std::vector<int> orient(n, 0);
    for (int s = 0; s < n; ++s) {
        if (orient[s]) continue;
        orient[s] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int k = 0; k < 3; ++k) {
                auto [j, l] = bs.adj[i][k];
                if (j < 0) continue;
                // canonical direction of side k: corner (k+1)%3 -> (k+2)%3;
                // matching endpoints across the gluing decides the flip.
                int a1 = bs.bvertex[i][(k + 1) % 3], a2 = bs.bvertex[i][(k + 2) % 3];
                int b1 = bs.bvertex[j][(l + 1) % 3], b2 = bs.bvertex[j][(l + 2) % 3];
                int want;
                if (a1 == b1 && a2 == b2)
                    want = -orient[i];  // same direction: must flip orientation
                else if (a1 == b2 && a2 == b1)
                    want = orient[i];
                else {
                    // ambiguous endpoints (loop edge): fall back to same-flip
                    want = orient[i];
                }
                if (orient[j] == 0) {
                    orient[j] = want;
                    stack.push_back(j);
                }
            }
        }
    }
    return orient;
}

}  // namespace

InflatedTriangulation inflate(const IdealStage& stage, const Frame& frame) {
    InflatedTriangulation out;
    out.tri = stage.tri;
    out.octs = stage.octs;
    out.walls = stage.walls;
    out.pillow_tets = stage.pillow_tets;
    Triangulation& tri = out.tri;
    BoundarySurface bs = boundary_surface(stage.tri);
    std::vector<int> orient = orient_boundary(bs);

    std::map<std::pair<int, int>, int> tri_index;
    {
        int n = 0;
        for (int t = 0; t < stage.tri.tet_count(); ++t)
            for (int v = 0; v < 4; ++v) tri_index[{t, v}] = n++;
    }
    auto side_slot = [&](int i, int face) {
        for (int k = 0; k < 3; ++k)
            if (bs.side_face[i][k] == face) return k;
        throw TriangulationError("side slot not found");
    };

    auto left_is_A = [&](const Frame::FrameEdge& e) {
        int apex = e.face[0], fwd = e.face[1], bwd = e.face[2];
        int omit = 6 - apex - fwd - bwd;
        int i = tri_index.at({e.tet, apex});
        int k = side_slot(i, omit);
        int slot_fwd = side_slot(i, fwd);
        int slot_bwd = side_slot(i, bwd);
        bool canonical_matches = ((k + 1) % 3 == slot_bwd && (k + 2) % 3 == slot_fwd);
        return canonical_matches == (orient[i] == 1);
    };

    std::set<std::pair<int, int>> used_faces;
    auto inflate_edge = [&](const Frame::FrameEdge& e, const std::string& label) {
        int apex = e.face[0], fwd = e.face[1], bwd = e.face[2];
        int omit = 6 - apex - fwd - bwd;
        auto gopt = tri.gluing(e.tet, omit);
        if (!gopt) throw TriangulationError("frame face already free");
        auto g = *gopt;
        if (!used_faces.insert({e.tet, omit}).second ||
            !used_faces.insert({g.other, g.vmap[omit]}).second)
            throw TriangulationError("face meets the frame in more than one edge");
        std::array<int, 3> fa = {apex, fwd, bwd};
        std::array<int, 3> fb = {g.vmap[apex], g.vmap[fwd], g.vmap[bwd]};
        int lam = tri.add_tet(label);
        bool a_left = left_is_A(e);
        tri.unglue(e.tet, fa);
        if (a_left) {
            tri.glue(e.tet, fa, lam, {0, 3, 2});
            tri.glue(lam, {1, 3, 2}, g.other, fb);
        } else {
            tri.glue(g.other, fb, lam, {0, 3, 2});
            tri.glue(lam, {1, 3, 2}, e.tet, fa);
        }
        return lam;
    };

    int m = (int)frame.longitude.size();
    int kqty = (int)frame.meridian.size();
    out.m = m;
    for (int j = 0; j < m; ++j) {
        int lam = inflate_edge(frame.longitude[j], "x" + std::to_string(j + 1));
        out.x_tets.push_back(lam);
        const auto& e = frame.longitude[j];
        if (e.region >= 0) {
            int gap = std::min(e.exit_pos, e.enter_pos);
            auto& vec = out.gap_tets[e.region];
            int gaps = stage.diagram.regions[e.region].crossing_count - 1;
            if ((int)vec.size() < gaps) vec.resize(gaps, {-1, -1});
            if (vec[gap].first < 0)
                vec[gap].first = lam;
            else
                vec[gap].second = lam;
        }
    }
    for (int j = 0; j < kqty; ++j)
        out.y_tets.push_back(inflate_edge(frame.meridian[j], "y" + std::to_string(j + 1)));

    // generic closures along both branches (not across the branch point)
    for (int j = 0; j + 1 < m; ++j)
        tri.glue(out.x_tets[j], {0, 1, 3}, out.x_tets[j + 1], {0, 1, 2});
    for (int j = 0; j + 1 < kqty; ++j)
        tri.glue(out.y_tets[j], {0, 1, 3}, out.y_tets[j + 1], {0, 1, 2});

    // branch configuration at v*: cyclic order of the four prong germs
    struct Germ {
        int tri_i, side_k, corner_slot;
        bool operator==(const Germ& o) const {
            return tri_i == o.tri_i && side_k == o.side_k && corner_slot == o.corner_slot;
        }
    };
    auto canon_germ = [&](Germ g) -> Germ {
        int t = bs.tris[g.tri_i].tet, v = bs.tris[g.tri_i].corner;
        int f = bs.side_face[g.tri_i][g.side_k];
        auto& gl = stage.tri.gluing(t, f);
        if (!gl) return g;
        int j = tri_index.at({gl->other, gl->vmap[v]});
        int l = -1, cj = -1;
        for (int k2 = 0; k2 < 3; ++k2) {
            if (bs.side_face[j][k2] == gl->vmap[f]) l = k2;
            if (bs.side_face[j][k2] == gl->vmap[bs.side_face[g.tri_i][g.corner_slot]]) cj = k2;
        }
        if (l < 0 || cj < 0) return g;
        if (std::make_pair(j, l) < std::make_pair(g.tri_i, g.side_k)) return Germ{j, l, cj};
        return g;
    };
    auto germ_of = [&](const Frame::FrameEdge& e, bool at_fwd) {
        int apex = e.face[0], fwd = e.face[1], bwd = e.face[2];
        int omit = 6 - apex - fwd - bwd;
        int i = tri_index.at({e.tet, apex});
        Germ g;
        g.tri_i = i;
        g.side_k = side_slot(i, omit);
        g.corner_slot = side_slot(i, at_fwd ? fwd : bwd);
        return canon_germ(g);
    };
    Germ g_x1 = germ_of(frame.longitude[0], false);
    Germ g_xm = germ_of(frame.longitude[m - 1], true);
    Germ g_y_f = germ_of(frame.meridian[kqty - 1], true);
    Germ g_y_b = germ_of(frame.meridian[0], false);

    std::vector<Germ> rotation;
    {
        Germ cur = g_x1;
        int guard = 0;
        do {
            rotation.push_back(canon_germ(cur));
            int t = bs.tris[cur.tri_i].tet, v = bs.tris[cur.tri_i].corner;
            int f = bs.side_face[cur.tri_i][cur.side_k];
            auto& g = stage.tri.gluing(t, f);
            if (!g) throw TriangulationError("boundary rotation hit the surface boundary");
            int j = tri_index.at({g->other, g->vmap[v]});
            int l = -1, cj = -1;
            for (int k2 = 0; k2 < 3; ++k2) {
                if (bs.side_face[j][k2] == g->vmap[f]) l = k2;
                if (bs.side_face[j][k2] == g->vmap[bs.side_face[cur.tri_i][cur.corner_slot]])
                    cj = k2;
            }
            if (l < 0 || cj < 0) throw TriangulationError("rotation step failed");
            int next_side = 3 - l - cj;
            cur = Germ{j, next_side, cj};
            if (guard++ > 100000) throw TriangulationError("rotation did not close");
        } while (!(canon_germ(cur) == g_x1));
    }
    auto pos_of = [&](const Germ& g) {
        for (size_t i = 0; i < rotation.size(); ++i)
            if (rotation[i] == g) return (int)i;
        throw TriangulationError("prong germ not on the rotation");
    };
    struct Prong {
        int pos;
        int which;  // 0 = x1 bwd, 1 = y fwd, 2 = xm fwd, 3 = y bwd
    };
    std::vector<Prong> prongs = {{pos_of(g_x1), 0}, {pos_of(g_y_f), 1},
                                 {pos_of(g_xm), 2}, {pos_of(g_y_b), 3}};
    std::sort(prongs.begin(), prongs.end(), [](auto& a, auto& b) { return a.pos < b.pos; });
    while (prongs[0].which != 0) std::rotate(prongs.begin(), prongs.begin() + 1, prongs.end());
    bool y_first_is_fwd;
    if (prongs[1].which == 1 && prongs[2].which == 2 && prongs[3].which == 3)
        y_first_is_fwd = true;
    else if (prongs[1].which == 3 && prongs[2].which == 2 && prongs[3].which == 1)
        y_first_is_fwd = false;
    else
        throw TriangulationError("branch prongs out of order");

    int b1 = tri.add_tet("b*0");
    int b2 = tri.add_tet("b*1");
    out.cone_tet[0] = b1;
    out.cone_tet[1] = b2;
    tri.glue(b1, {0, 2, 3}, b2, {0, 1, 3});  // shared face cone(0,2,4)

    int x1 = out.x_tets[0], xm = out.x_tets[m - 1];
    int y_first = y_first_is_fwd ? out.y_tets[kqty - 1] : out.y_tets[0];
    int y_last = y_first_is_fwd ? out.y_tets[0] : out.y_tets[kqty - 1];
    std::array<int, 3> y_first_face = y_first_is_fwd ? std::array<int, 3>{0, 1, 3}
                                                     : std::array<int, 3>{0, 1, 2};
    std::array<int, 3> y_last_face = y_first_is_fwd ? std::array<int, 3>{0, 1, 2}
                                                    : std::array<int, 3>{0, 1, 3};
    // prong gluings around the subdivided cone: sides (4,1), (1,2), (2,3), (3,4)
    tri.glue(x1, {0, 1, 2}, b1, {3, 1, 0});
    tri.glue(y_first, y_first_face, b1, {2, 1, 0});
    tri.glue(xm, {0, 1, 3}, b2, {2, 1, 0});
    tri.glue(y_last, y_last_face, b2, {2, 3, 0});

    return out;
}

namespace {

std::string cache_dir() {
    const char* env = std::getenv("KNOTSURF_CACHE");
    if (env && *env) return env;
    return "/tmp/knotsurf-cache";
}

std::string cache_key(const std::string& text) {
    // FNV-1a
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

bool load_cached(const std::string& key, InflatedTriangulation& out) {
    std::ifstream in(cache_dir() + "/" + key + ".tri");
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto pos = text.find("\n#aux ");
    if (pos == std::string::npos) return false;
    out.tri = parse_gluing_table(text.substr(0, pos + 1));
    std::istringstream aux(text.substr(pos + 6));
    int noct, ngap;
    aux >> out.m >> noct >> ngap;
    out.octs.resize(noct);
    for (int c = 0; c < noct; ++c) {
        auto& oct = out.octs[c];
        aux >> oct.z >> oct.uf >> oct.ub >> oct.lf >> oct.lb;
        for (int i = 0; i < 5; ++i)
            for (int v = 0; v < 4; ++v) aux >> oct.omap[i][v];
    }
    int npil, nx, ny;
    aux >> npil;
    out.pillow_tets.resize(npil);
    for (int& t : out.pillow_tets) aux >> t;
    aux >> nx;
    out.x_tets.resize(nx);
    for (int& t : out.x_tets) aux >> t;
    aux >> ny;
    out.y_tets.resize(ny);
    for (int& t : out.y_tets) aux >> t;
    aux >> out.cone_tet[0] >> out.cone_tet[1];
    for (int g = 0; g < ngap; ++g) {
        int region, cnt;
        aux >> region >> cnt;
        auto& vec = out.gap_tets[region];
        vec.resize(cnt);
        for (auto& [a, b] : vec) aux >> a >> b;
    }
    out.walls.clear();
    return bool(aux);
}

void store_cached(const std::string& key, const InflatedTriangulation& T) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir(), ec);
    std::ofstream outf(cache_dir() + "/" + key + ".tri");
    if (!outf) return;
    outf << T.tri.export_gluing_table();
    outf << "#aux " << T.m << " " << T.octs.size() << " " << T.gap_tets.size() << "\n";
    for (auto& oct : T.octs) {
        outf << oct.z << " " << oct.uf << " " << oct.ub << " " << oct.lf << " " << oct.lb;
        for (int i = 0; i < 5; ++i)
            for (int v = 0; v < 4; ++v) outf << " " << oct.omap[i][v];
        outf << "\n";
    }
    outf << T.pillow_tets.size();
    for (int t : T.pillow_tets) outf << " " << t;
    outf << "\n" << T.x_tets.size();
    for (int t : T.x_tets) outf << " " << t;
    outf << "\n" << T.y_tets.size();
    for (int t : T.y_tets) outf << " " << t;
    outf << "\n" << T.cone_tet[0] << " " << T.cone_tet[1] << "\n";
    for (auto& [region, vec] : T.gap_tets) {
        outf << region << " " << vec.size();
        for (auto& [a, b] : vec) outf << " " << a << " " << b;
        outf << "\n";
    }
}

}  // namespace

InflatedTriangulation triangulate(const KnotDiagram& d) {
    // memoized: assembly searches are expensive and fixtures recur
    static std::map<std::string, InflatedTriangulation> cache;
    static std::mutex cache_mu;
    std::string key = graph_to_json(d.graph);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        InflatedTriangulation from_disk;
        if (load_cached(cache_key(key), from_disk)) {
            auto [it2, fresh] = cache.emplace(key, std::move(from_disk));
            return it2->second;
        }
    }
    // Search assemblies until one admits the pillows, an index-4 frame, and
    // a clean inflation.
    InflatedTriangulation result;
    bool done = false;
    assemble_ideal_accepting(d, [&](IdealStage& stage) {
        IdealStage trial = stage;
        try {
            insert_pillows(trial);
            Frame frame = choose_frame(trial);
            InflatedTriangulation T = inflate(trial, frame);
            auto rep = T.tri.validate();
            if (!rep.ok || !rep.orientable || rep.free_faces != 2) return false;
            auto h1 = T.tri.first_homology();
            if (h1.rank != 1 || !h1.torsion.empty()) return false;
            result = std::move(T);
            done = true;
            return true;
        } catch (const TriangulationError&) {
            return false;
        }
    });
    if (!done) throw TriangulationError("no assembly admits the inflation");
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        cache.emplace(key, result);
    }
    store_cached(cache_key(key), result);
    return result;
}

}  // namespace knotsurf
