#include "knotsurf/normal.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace knotsurf {

int quad_type_separating(int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 0) return b;  // {0,1}->1, {0,2}->2, {0,3}->3
    return 6 - a - b;      // complement pair {0, 6-a-b}
}

bool quad_meets_edge(int type, int a, int b) {
    return quad_type_separating(a, b) != type;
}

long long QMatchingSystem::row_dot(int row, const QVector& v) const {
    long long s = 0;
    for (auto& [col, c] : rows[row]) s += c * v[col];
    return s;
}

std::string QMatchingSystem::to_triplet_text() const {
    std::ostringstream os;
    os << "# rows " << rows.size() << " cols " << cols() << "\n";
    for (size_t r = 0; r < rows.size(); ++r)
        for (auto& [c, val] : rows[r]) os << r << " " << c << " " << val << "\n";
    return os.str();
}

QMatchingSystem qmatching_matrix(const Triangulation& tri) {
    QMatchingSystem sys;
    sys.tets = tri.tet_count();
    sys.edge_class_of_edge = tri.edge_classes();
    int nclasses = tri.edge_class_count();
    auto on_bd = tri.edge_class_on_boundary();
    sys.class_is_interior.assign(nclasses, true);
    for (int c = 0; c < nclasses; ++c) sys.class_is_interior[c] = !on_bd[c];

    std::vector<bool> seen(nclasses, false);
    for (int t = 0; t < tri.tet_count(); ++t)
        for (int s = 0; s < 6; ++s) {
            int cls = sys.edge_class_of_edge[6 * t + s];
            if (seen[cls] || !sys.class_is_interior[cls]) continue;
            seen[cls] = true;
            auto [a, b] = Triangulation::edge_pair(s);
            auto ring = tri.edge_ring(t, a, b);
            if (!ring.closed) throw NormalError("interior edge ring not closed");
            std::map<int, long long> entries;
            for (auto& st : ring.steps) {
                // quads meeting the edge: pairing (a,entry) slopes +1,
                // pairing (a,exit) slopes -1
                int qplus = quad_type_separating(st.a, st.entry);
                int qminus = quad_type_separating(st.a, st.exit);
                entries[3 * st.tet + (qplus - 1)] += 1;
                entries[3 * st.tet + (qminus - 1)] -= 1;
            }
            std::vector<std::pair<int, int>> row;
            for (auto& [col, val] : entries)
                if (val != 0) row.push_back({col, (int)val});
            sys.row_of_class[cls] = (int)sys.rows.size();
            sys.row_edge_class.push_back(cls);
            sys.rows.push_back(std::move(row));
        }
    return sys;
}

int total_slope(const Triangulation& tri, const QMatchingSystem& sys, int tet, int type,
                int etet, int a, int b) {
    int cls = sys.edge_class_of_edge[6 * etet + Triangulation::edge_slot(a, b)];
    auto it = sys.row_of_class.find(cls);
    if (it == sys.row_of_class.end()) {
        // boundary class: recompute from the open fan
        auto ring = tri.edge_ring(etet, a, b);
        int s = 0;
        for (auto& st : ring.steps) {
            if (st.tet != tet) continue;
            int qplus = quad_type_separating(st.a, st.entry);
            int qminus = quad_type_separating(st.a, st.exit);
            if (qplus == type) s += 1;
            if (qminus == type) s -= 1;
        }
        return s;
    }
    for (auto& [col, val] : sys.rows[it->second])
        if (col == 3 * tet + (type - 1)) return val;
    return 0;
}

bool is_admissible(const QVector& v, int tets) {
    if ((int)v.size() != 3 * tets) return false;
    for (long long x : v)
        if (x < 0) return false;
    for (int t = 0; t < tets; ++t) {
        int nz = 0;
        for (int k = 0; k < 3; ++k)
            if (v[3 * t + k] != 0) nz++;
        if (nz > 1) return false;
    }
    return true;
}

bool is_normal(const QVector& v, const QMatchingSystem& sys) {
    if ((int)v.size() != sys.cols()) throw NormalError("dimension mismatch");
    if (!is_admissible(v, sys.tets)) return false;
    for (size_t r = 0; r < sys.rows.size(); ++r)
        if (sys.row_dot((int)r, v) != 0) return false;
    return true;
}

std::vector<QVector> fundamental_solutions(const QMatchingSystem& sys, int bound,
                                           long long guard) {
    if (bound < 1) throw NormalError("bound must be positive");
    int t = sys.tets;
    // Order tets so that pruning closes rows early: greedy by row coverage.
    std::vector<int> order;
    {
        std::set<int> placed;
        // start from tet 0; repeatedly pick the tet sharing most rows with placed
        std::vector<std::set<int>> tet_rows(t);
        for (size_t r = 0; r < sys.rows.size(); ++r)
            for (auto& [col, val] : sys.rows[r]) tet_rows[col / 3].insert((int)r);
        int cur = 0;
        while ((int)placed.size() < t) {
            if (placed.count(cur)) {
                int best = -1, score = -1;
                for (int cand = 0; cand < t; ++cand) {
                    if (placed.count(cand)) continue;
                    int s = 0;
                    for (int r : tet_rows[cand])
                        for (auto& [col, val] : sys.rows[r])
                            if (placed.count(col / 3)) { s++; break; }
                    if (s > score) {
                        score = s;
                        best = cand;
                    }
                }
                cur = best;
            }
            placed.insert(cur);
            order.push_back(cur);
        }
    }
    std::vector<int> pos_of_tet(t);
    for (int i = 0; i < t; ++i) pos_of_tet[order[i]] = i;
    // rows become checkable once their last tet is placed
    std::vector<std::vector<int>> check_after(t);
    for (size_t r = 0; r < sys.rows.size(); ++r) {
        int last = -1;
        for (auto& [col, val] : sys.rows[r]) last = std::max(last, pos_of_tet[col / 3]);
        if (last >= 0) check_after[last].push_back((int)r);
    }

    std::vector<QVector> found;
    QVector v(3 * t, 0);
    long long visited = 0;
    std::function<void(int)> dfs = [&](int depth) {
        if (++visited > guard) throw NormalError("fundamental_solutions: resource guard");
        if (depth == t) {
            bool nonzero = std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; });
            if (nonzero) found.push_back(v);
            return;
        }
        int tet = order[depth];
        auto try_choice = [&](int type, int val) {
            if (type) v[3 * tet + (type - 1)] = val;
            bool ok = true;
            for (int r : check_after[depth])
                if (sys.row_dot(r, v) != 0) {
                    ok = false;
                    break;
                }
            if (ok) dfs(depth + 1);
            if (type) v[3 * tet + (type - 1)] = 0;
        };
        try_choice(0, 0);
        for (int type = 1; type <= 3; ++type)
            for (int val = 1; val <= bound; ++val) try_choice(type, val);
    };
    dfs(0);

    // keep only solutions that are not sums of two smaller admissible solutions
    std::set<QVector> all(found.begin(), found.end());
    std::vector<QVector> fundamental;
    for (auto& f : found) {
        bool decomposable = false;
        for (auto& x : found) {
            if (decomposable) break;
            if (x == f) continue;
            bool le = true;
            for (size_t i = 0; i < f.size(); ++i)
                if (x[i] > f[i]) {
                    le = false;
                    break;
                }
            if (!le) continue;
            QVector rest(f.size());
            bool zero = true;
            for (size_t i = 0; i < f.size(); ++i) {
                rest[i] = f[i] - x[i];
                if (rest[i] != 0) zero = false;
            }
            if (!zero && all.count(rest) && is_admissible(rest, t)) decomposable = true;
        }
        if (!decomposable) fundamental.push_back(f);
    }
    std::sort(fundamental.begin(), fundamental.end());
    return fundamental;
}

std::vector<int> region_tets(const InflatedTriangulation& T, const KnotDiagram& d, int region) {
    std::vector<int> tets;
    const TwistRegion& r = d.regions[region];
    for (int j = 0; j < r.crossing_count; ++j) {
        const OctahedronTets& oct = T.octs[r.first_crossing + j];
        for (int id : {oct.z, oct.uf, oct.ub, oct.lf, oct.lb}) tets.push_back(id);
    }
    auto it = T.gap_tets.find(region);
    if (it != T.gap_tets.end())
        for (auto& [a, b] : it->second) {
            if (a >= 0) tets.push_back(a);
            if (b >= 0) tets.push_back(b);
        }
    std::sort(tets.begin(), tets.end());
    return tets;
}

std::vector<int> interior_classes(const InflatedTriangulation& T, const QMatchingSystem& sys,
                                  const std::vector<int>& tets) {
    std::set<int> inside(tets.begin(), tets.end());
    // a class is interior to O_T if every tet around it lies in O_T
    std::map<int, bool> interior;
    for (int t = 0; t < T.tri.tet_count(); ++t)
        for (int s = 0; s < 6; ++s) {
            int cls = sys.edge_class_of_edge[6 * t + s];
            auto [it, fresh] = interior.try_emplace(cls, true);
            if (!inside.count(t)) it->second = false;
        }
    std::vector<int> out;
    for (auto& [cls, is_int] : interior)
        if (is_int && sys.class_is_interior[cls]) out.push_back(cls);
    return out;
}

LocalSurface local_surface(const InflatedTriangulation& T, const KnotDiagram& d,
                           const QMatchingSystem& sys, int region, SurfaceKind kind, int n,
                           int k, int r) {
    const TwistRegion& reg = d.regions[region];
    int w = reg.crossing_count;
    if (n < 1) throw NormalError("n must be positive");
    if (kind == SurfaceKind::I && !(0 <= k && k < n)) throw NormalError("S_I needs 0 <= k < n");
    if (k < 0 || k > n) throw NormalError("k out of range");
    if (r < 0 || r > w) throw NormalError("r out of range");

    LocalSurface out;
    out.kind = kind;
    out.region = region;
    out.n = n;
    out.k = k;
    out.r = r;
    out.quads.assign(3 * T.tri.tet_count(), 0);
    out.tris.assign(4 * T.tri.tet_count(), 0);
    out.support_tets = region_tets(T, d, region);

    // Center quad types in each z tet: the two diagonals of the octahedron
    // are the edges shared by z with both upper (or both lower) side tets.
    // Type II takes the quad missing both diagonals; Types I and III take
    // the two quads meeting them.
    auto z_center_type = [&](int crossing) -> int {
        const OctahedronTets& oct = T.octs[crossing];
        // diagonal o-pairs: top split diagonal and bottom split diagonal
        // determine the two local edges of z realizing them
        auto local_of = [&](int o) {
            for (int v = 0; v < 4; ++v)
                if (oct.omap[0][v] == o) return v;
            throw NormalError("octahedron map broken");
        };
        int sign = d.crossings[crossing].sign;
        int d1a = local_of(1), d1b = local_of(3);  // o(13)
        int d2a = local_of(2), d2b = local_of(4);  // o(24)
        (void)sign;
        int miss_both = quad_type_separating(d1a, d1b);
        int miss_other = quad_type_separating(d2a, d2b);
        if (miss_both != miss_other)
            throw NormalError("diagonals do not share a missing quad type");
        // the diagonal-missing type (both diagonals pair up the same way)
        int type2 = miss_both;
        // the other two types, ordered deterministically
        std::array<int, 2> meets{};
        int idx = 0;
        for (int ty = 1; ty <= 3; ++ty)
            if (ty != type2) meets[idx++] = ty;
        switch (kind) {
            case SurfaceKind::I: return meets[0];
            case SurfaceKind::III: return meets[1];
            default: return type2;
        }
    };

    // Place k copies of the center quad in every z tet, then search for a
    // k-weighted extension by side/gap quads satisfying the Q-matching
    // equations at every edge class interior to O_T.
    if (k > 0) {
        for (int j = 0; j < w; ++j) {
            int c = reg.first_crossing + j;
            int ty = z_center_type(c);
            out.quads[3 * T.octs[c].z + (ty - 1)] = k;
        }
        // candidate tets: all of O_T except the centers
        std::vector<int> cands;
        std::set<int> centers;
        for (int j = 0; j < w; ++j) centers.insert(T.octs[reg.first_crossing + j].z);
        for (int t : out.support_tets)
            if (!centers.count(t)) cands.push_back(t);
        auto interior = interior_classes(T, sys, out.support_tets);
        std::set<int> interior_set(interior.begin(), interior.end());
        std::vector<int> check_rows;
        for (int cls : interior)
            if (sys.row_of_class.count(cls)) check_rows.push_back(sys.row_of_class.at(cls));

        // DFS with row pruning, smallest support first (choices: none or a
        // quad type with coefficient k).
        std::vector<int> pos_of(T.tri.tet_count(), -1);
        for (size_t i = 0; i < cands.size(); ++i) pos_of[cands[i]] = (int)i;
        std::vector<std::vector<int>> check_after(cands.size());
        std::vector<int> check_now;
        for (int row : check_rows) {
            int last = -1;
            bool relevant = true;
            for (auto& [col, val] : sys.rows[row]) {
                int t = col / 3;
                if (pos_of[t] >= 0) last = std::max(last, pos_of[t]);
            }
            if (!relevant) continue;
            if (last < 0)
                check_now.push_back(row);
            else
                check_after[last].push_back(row);
        }
        for (int row : check_now)
            if (sys.row_dot(row, out.quads) != 0)
                throw NormalError("local_surface: center quads violate a fixed interior row");

        bool found = false;
        QVector best;
        long long best_support = -1;
        long long visited = 0;
        std::function<void(int, long long)> dfs = [&](int depth, long long support) {
            if (++visited > 2000000) throw NormalError("local_surface: search guard");
            if (found && best_support >= 0 && support > best_support) return;
            if (depth == (int)cands.size()) {
                if (!found || support < best_support) {
                    found = true;
                    best = out.quads;
                    best_support = support;
                }
                return;
            }
            int tet = cands[depth];
            auto try_choice = [&](int type) {
                if (type) out.quads[3 * tet + (type - 1)] = k;
                bool ok = true;
                for (int row : check_after[depth])
                    if (sys.row_dot(row, out.quads) != 0) {
                        ok = false;
                        break;
                    }
                if (ok) dfs(depth + 1, support + (type ? 1 : 0));
                if (type) out.quads[3 * tet + (type - 1)] = 0;
            };
            try_choice(0);
            for (int type = 1; type <= 3; ++type) try_choice(type);
        };
        dfs(0, 0);
        if (!found) throw NormalError("local_surface: no interior-matching extension");
        out.quads = best;
    }

    // Triangle part: (n - k) sheets recorded as corner disks along the
    // region's tets (bookkeeping only; triangles enter no Q-matching row).
    if (n - k > 0)
        for (int t : out.support_tets)
            for (int v = 0; v < 4; ++v) out.tris[4 * t + v] = n - k;
    return out;
}

QVector concatenate_fragments(const QMatchingSystem& sys,
                              const std::vector<LocalSurface>& fragments) {
    QVector v(sys.cols(), 0);
    for (auto& f : fragments)
        for (int i = 0; i < sys.cols(); ++i) v[i] += f.quads[i];
    return v;
}

bool lemma_main_check(const InflatedTriangulation& T, const QMatchingSystem& sys,
                      const std::vector<LocalSurface>& fragments) {
    QVector v = concatenate_fragments(sys, fragments);
    (void)T;
    for (size_t rw = 0; rw < sys.rows.size(); ++rw)
        if (sys.row_dot((int)rw, v) != 0) return false;
    return true;
}

}  // namespace knotsurf
