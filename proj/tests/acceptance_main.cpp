// Acceptance suite: one pass/fail line per criterion, exit nonzero on failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "knotsurf/jones.hpp"
#include "knotsurf/report.hpp"

using namespace knotsurf;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << "[" << (ok ? "PASS" : "FAIL") << "] criterion " << idx << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) failures++;
}

struct Fixture {
    std::string name;
    WeightedPlanarGraph graph;
};

std::vector<Fixture> theorem_fixtures() {
    std::vector<Fixture> out;
    out.push_back({"edge(-3)", fixtures::single_edge(-3)});
    out.push_back({"edge(3)", fixtures::single_edge(3)});
    out.push_back({"edge(-5)", fixtures::single_edge(-5)});
    out.push_back({"edge(5)", fixtures::single_edge(5)});
    out.push_back({"two(3,2)", fixtures::two_edge(3, 2)});
    out.push_back({"two(-3,2)", fixtures::two_edge(-3, 2)});
    out.push_back({"theta(1,1,-3)", fixtures::theta(1, 1, -3)});
    out.push_back({"theta(1,1,3)", fixtures::theta(1, 1, 3)});
    out.push_back({"theta(3,-2,5)", fixtures::theta(3, -2, 5)});
    out.push_back({"theta(-3,2,-5)", fixtures::theta(-3, 2, -5)});
    out.push_back({"theta(1,3,5)", fixtures::theta(1, 3, 5)});
    return out;
}

// Criterion 1: h_sigma = s_sigma n^2 for every enumerated colored surface
// state on the fixture family, n in 1..4.
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    long long states = 0;
    for (auto& fx : theorem_fixtures()) {
        KnotDiagram d = build_diagram(fx.graph);
        InflatedTriangulation T = triangulate(d);
        QMatchingSystem sys = qmatching_matrix(T.tri);
        for (int n = 1; n <= 4; ++n) {
            auto records = verify_main_theorem(d, T, sys, n);
            states += (long long)records.size();
            for (auto& r : records)
                if (!r.verdict) {
                    ok = false;
                    if (detail.empty())
                        detail = fx.name + " n=" + std::to_string(n) + " k-vector failure";
                }
        }
    }
    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (detail.empty())
        detail = std::to_string(states) + " states, " + std::to_string(dt) + " ms";
    report(1, "main theorem identity h = s n^2", ok, detail);
}

// Criterion 2: some sign assignment of the reconstructed 20-crossing fixture
// yields a colored surface state of slope exactly 4 with h = 16 at n = 2.
void criterion2() {
    bool found = false;
    std::string detail;
    std::vector<std::vector<int>> sign_choices;
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<int> signs(5);
        for (int i = 0; i < 5; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
        sign_choices.push_back(signs);
    }
    for (auto& signs : sign_choices) {
        WeightedPlanarGraph g = fixtures::example20(signs);
        KnotDiagram d;
        try {
            d = build_diagram(g);
        } catch (const DiagramError&) {
            continue;  // link, not a knot, under this sign pattern
        }
        try {
            InflatedTriangulation T = triangulate(d);
            QMatchingSystem sys = qmatching_matrix(T.tri);
            int n = 2;
            auto records = verify_main_theorem(d, T, sys, n);
            for (auto& r : records) {
                if (r.slope == Rational(4) && r.h == 16 && r.verdict) {
                    found = true;
                    std::string s = "signs ";
                    for (int x : signs) s += x > 0 ? "+" : "-";
                    detail = s;
                    break;
                }
            }
        } catch (const std::exception& e) {
            continue;
        }
        if (found) break;
    }
    report(2, "20-crossing example admits a slope-4 state with h=16 at n=2", found, detail);
}

// Criterion 3: every normal assignment emitted by verify satisfies the full
// Q-matching system and admissibility.
void criterion3() {
    bool ok = true;
    long long checked = 0;
    for (auto& fx : theorem_fixtures()) {
        KnotDiagram d = build_diagram(fx.graph);
        InflatedTriangulation T = triangulate(d);
        QMatchingSystem sys = qmatching_matrix(T.tri);
        for (int n = 1; n <= 3; ++n) {
            auto records = verify_main_theorem(d, T, sys, n);
            for (auto& r : records) {
                if (r.route != SurfaceRoute::NormalAssignment) continue;
                checked++;
                if (!is_normal(r.quads, sys)) ok = false;
            }
        }
    }
    report(3, "normal-surface soundness of emitted assignments", ok,
           std::to_string(checked) + " assignments");
}

// Criterion 4: triangulation audits on all fixtures.
void criterion4() {
    bool ok = true;
    std::string detail;
    for (auto& fx : theorem_fixtures()) {
        KnotDiagram d = build_diagram(fx.graph);
        InflatedTriangulation T = triangulate(d);
        auto rep = T.tri.validate();
        int expect = 5 * d.crossing_number() + 4 + T.m + 3;
        bool here = rep.ok && rep.orientable && rep.free_faces == 2 &&
                    T.tri.tet_count() == expect;
        if (!here && detail.empty()) detail = fx.name;
        ok &= here;
    }
    report(4, "triangulation audits (free faces, pairings, edge classes, count)", ok, detail);
}

// Criterion 5: Jones-Wenzl projector properties for n <= 6.
void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int n = 1; n <= 6 && ok; ++n) {
        const TLElement& p = jones_wenzl(n);
        if (!(p * p == p)) ok = false;
        if (!(p.coeff(PlanarMatching::identity(n)) == RationalFunction(1))) ok = false;
        for (int i = 1; i < n && ok; ++i) {
            if (!(TLElement::generator(n, i) * p).is_zero()) ok = false;
            if (!(p * TLElement::generator(n, i)).is_zero()) ok = false;
        }
    }
    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    report(5, "Jones-Wenzl idempotence and turnback annihilation, n <= 6", ok,
           std::to_string(dt) + " ms");
}

// Criterion 6: colored Jones oracle.
void criterion6() {
    bool ok = true;
    std::string detail;
    // unknot normalization up to n = 8
    KnotDiagram u = build_diagram(fixtures::single_edge(1));
    for (int n = 1; n <= 8 && ok; ++n) {
        if (colored_jones(u, n) != loop_value().pow(n)) {
            ok = false;
            detail = "unknot n=" + std::to_string(n);
        }
    }
    // n=2 brute force on <=3 crossing fixtures: exhaustive elementary-state
    // expansion with the projector expanded term by term
    for (long long w : {3LL, -3LL}) {
        if (!ok) break;
        KnotDiagram d = build_diagram(fixtures::single_edge(w));
        int n = 2;
        RationalFunction fast = cabled_bracket(d, n, true);
        // oracle: expand every elementary crossing of every region by brute
        // force instead of composing region elements
        RationalFunction slow(0);
        const TLElement& p = jones_wenzl(n);
        TLElement insert = p.tensor(TLElement::identity(n));
        // build each region element by multiplying *basis matchings* chosen
        // per elementary crossing, enumerated explicitly
        const TwistRegion& reg = d.regions[0];
        int crossings = reg.crossing_count;
        int elementary = crossings * n * n;
        std::vector<std::pair<int, int>> word;  // (generator index, crossing sign)
        for (int j = 0; j < crossings; ++j)
            for (int i = 1; i <= n; ++i)
                for (int jj = 0; jj < n; ++jj) word.push_back({n - i + 1 + jj, reg.sign});
        for (long long mask = 0; mask < (1LL << elementary); ++mask) {
            TLElement acc = insert;
            RationalFunction coeff(1);
            for (int step = 0; step < elementary; ++step) {
                auto [gen, sign] = word[step];
                bool cap = (mask >> step) & 1;
                TLElement term = cap ? TLElement::generator(2 * n, gen)
                                     : TLElement::identity(2 * n);
                if (sign > 0)
                    coeff *= RationalFunction(
                        cap ? LaurentPoly::monomial(-1, 2) : LaurentPoly::monomial(1, 1));
                else
                    coeff *= RationalFunction(
                        cap ? LaurentPoly::monomial(1, -2) : LaurentPoly::monomial(-1, -1));
                acc = term * acc;
            }
            // close through the vertex wiring: NW<->NE bundle and SW<->SE
            // (trace closure on the first n strands and the last n strands)
            for (auto& [m, c] : acc.terms()) {
                // count loops of the closure identifying bottom i with top i
                int N = 2 * n;
                std::vector<bool> seen(2 * N, false);
                int loops = 0;
                for (int pt = 0; pt < 2 * N; ++pt) {
                    if (seen[pt]) continue;
                    int cur = pt;
                    while (!seen[cur]) {
                        seen[cur] = true;
                        int q = m.mate(cur);
                        seen[q] = true;
                        cur = q < N ? q + N : q - N;
                    }
                    loops++;
                }
                RationalFunction term = coeff * c;
                for (int i = 0; i < loops; ++i) term *= RationalFunction(loop_value());
                slow += term;
            }
        }
        if (!(slow == fast)) {
            ok = false;
            detail = "cable oracle w=" + std::to_string(w);
        }
    }
    report(6, "colored Jones oracle (unknot normalization, cable brute force)", ok, detail);
}

// Criterion 7: Khovanov homology at n = 1.
void criterion7() {
    bool ok = true;
    std::string detail;
    std::vector<WeightedPlanarGraph> fixtures_list = {
        fixtures::single_edge(1), fixtures::single_edge(-1), fixtures::single_edge(3),
        fixtures::single_edge(-3), fixtures::theta(1, 1, 1), fixtures::theta(1, 1, -3)};
    for (auto& g : fixtures_list) {
        KnotDiagram d = build_diagram(g);
        KhovanovResult kh = khovanov_homology(d);  // d^2 = 0 enforced internally
        if (kh.euler != kauffman_bracket(d)) {
            ok = false;
            detail = "euler mismatch";
        }
        // adequate states are cycles
        for (int mask = 0; mask < (1 << d.crossing_number()); ++mask) {
            KauffmanState s(d.crossing_number());
            for (int c = 0; c < d.crossing_number(); ++c)
                s[c] = (mask >> c) & 1 ? Smoothing::Through : Smoothing::Turnback;
            if (is_adequate(d, s) && !cycle_check(d, s)) {
                ok = false;
                detail = "adequate state fails the cycle check";
            }
        }
    }
    report(7, "Khovanov n=1: d^2=0, Euler = bracket, adequate states are cycles", ok, detail);
}

// Criterion 8: fundamental solution enumeration against brute force.
void criterion8() {
    KnotDiagram d = fixtures::trefoil();
    InflatedTriangulation T = triangulate(d);
    QMatchingSystem sys = qmatching_matrix(T.tri);
    bool ok = true;
    std::string detail;
    try {
        auto sols = fundamental_solutions(sys, 2);
        // oracle: independent kernel-box enumeration via per-tet DFS in a
        // different order with explicit final row checks
        std::set<QVector> oracle;
        {
            int t = sys.tets;
            QVector v(3 * t, 0);
            std::function<void(int)> dfs = [&](int tet) {
                if (tet == t) {
                    bool nz = false;
                    for (auto x : v) nz |= x != 0;
                    if (!nz) return;
                    for (size_t r = 0; r < sys.rows.size(); ++r)
                        if (sys.row_dot((int)r, v) != 0) return;
                    oracle.insert(v);
                    return;
                }
                // prune with any fully-assigned row to keep the oracle feasible
                for (size_t r = 0; r < sys.rows.size(); ++r) {
                    bool complete = true;
                    long long sum = 0;
                    for (auto& [col, val] : sys.rows[r]) {
                        if (col / 3 >= tet) {
                            complete = false;
                            break;
                        }
                        sum += val * v[col];
                    }
                    if (complete && sum != 0) return;
                }
                dfs(tet + 1);
                for (int ty = 1; ty <= 3; ++ty)
                    for (int val = 1; val <= 2; ++val) {
                        v[3 * tet + ty - 1] = val;
                        dfs(tet + 1);
                        v[3 * tet + ty - 1] = 0;
                    }
            };
            dfs(0);
        }
        // filter oracle to fundamentals
        std::set<QVector> oracle_fund;
        for (auto& f : oracle) {
            bool decomposable = false;
            for (auto& x : oracle) {
                if (x == f) continue;
                bool le = true;
                for (size_t i = 0; i < f.size(); ++i)
                    if (x[i] > f[i]) le = false;
                if (!le) continue;
                QVector rest(f.size());
                bool zero = true;
                for (size_t i = 0; i < f.size(); ++i) {
                    rest[i] = f[i] - x[i];
                    zero &= rest[i] == 0;
                }
                if (!zero && oracle.count(rest) && is_admissible(rest, sys.tets))
                    decomposable = true;
            }
            if (!decomposable) oracle_fund.insert(f);
        }
        std::set<QVector> got(sols.begin(), sols.end());
        ok = got == oracle_fund;
        detail = std::to_string(sols.size()) + " fundamental solutions";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(8, "fundamental solutions equal brute-force enumeration (bound 2)", ok, detail);
}

// Criterion 9: calibration self-test pins the saddle-sign switch.
void criterion9() {
    KnotDiagram d = fixtures::trefoil();
    auto passing = calibrate_saddle_sign(d);
    bool ok = passing.size() == 1;
    report(9, "sigma_0 calibration passes under exactly one saddle-sign setting", ok,
           ok ? (passing[0] > 0 ? "+1" : "-1") : "");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << std::endl;
    return failures == 0 ? 0 : 1;
}
