#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotsurf/diagram.hpp"
#include "knotsurf/normal.hpp"
#include "knotsurf/slope.hpp"

namespace knotsurf {

// A colored Kauffman state: one multicone parameter per twist region.
// Projector expansions are taken greedily minimal (identity terms), so the
// state is determined by sigma alone.
struct ColoredState {
    int n = 1;
    std::vector<int> sigma;  // per region, 0..n
};

int skein_degree(int l, int r, int k, int n);
int crossing_degree(int k, int n, int sign);
int twist_degree(int k, int n, int c, int sign);

// Region-level state circles: S(sigma(T)) replaces each cabled region (its
// k through-strands on the disk-adjacent cable indices, the rest capped at
// both region ends); vertex disks wire cable strands in parallel.
struct RegionCircles {
    int count = 0;
    std::vector<int> membership;                  // per end-door cable point
    std::vector<std::vector<int>> circle_regions; // regions passed through, per circle
    std::vector<std::vector<int>> circle_dirs;    // +1 end0->end1 passage, else -1
};

RegionCircles region_circles(const KnotDiagram& d, const ColoredState& s);

struct Flow {
    std::vector<int> orientation;  // per edge: +1 = end0 -> end1
    std::vector<int> value;        // sigma
};

std::optional<Flow> induces_flow(const KnotDiagram& d, const ColoredState& s);

struct ConditionsReport {
    bool has_flow = false;
    bool c1 = false, c2 = false, c3 = false, c4 = false, c5 = false;
    bool all() const { return has_flow && c1 && c2 && c3 && c4 && c5; }
};

ConditionsReport check_conditions(const KnotDiagram& d, const ColoredState& s);

// Per-crossing Kauffman state of a {0,n}-valued colored state.
KauffmanState uniform_lift(const KnotDiagram& d, const ColoredState& s);

enum class SurfaceRoute { None, StateSurface, NormalAssignment };

struct StateClassification {
    SurfaceRoute route = SurfaceRoute::None;
    bool adequate = false;
    ConditionsReport conditions;
    std::vector<SurfaceKind> kinds;  // per region (NormalAssignment route)
    std::vector<int> kind_k;         // table parameter per region
    std::vector<int> kind_r;
};

StateClassification classify_state(const KnotDiagram& d, const ColoredState& s);

// homological degree: raw multicone aggregation and the Seifert-normalized
// grading used by the main-theorem identity.
struct DegreeReport {
    long long h_raw = 0;
    long long h = 0;  // h_raw - h_raw(Seifert state)
    std::optional<long long> h_path;  // path-partition value, flow states
    bool formulas_agree = true;
};

long long raw_degree(const KnotDiagram& d, const ColoredState& s);
DegreeReport state_degree(const KnotDiagram& d, const ColoredState& s);

// Seifert colored state: n on parallel-strand regions, 0 elsewhere.
ColoredState seifert_colored_state(const KnotDiagram& d, int n);

// Twist number of a region-uniform state surface: each turnback-smoothed
// crossing twists once with its handedness (saddle_sign flips the count).
Rational state_surface_twist(const KnotDiagram& d, const ColoredState& s, int saddle_sign);

struct VerificationRecord {
    ColoredState state;
    SurfaceRoute route = SurfaceRoute::None;
    long long h = 0;
    Rational tau;
    Rational slope;
    bool verdict = false;
    bool normal_ok = true;  // quad-vector soundness for normal assignments
    std::vector<std::string> surface_kinds;
    QVector quads;  // concatenated quad vector (NormalAssignment route)
    std::optional<long long> h_path;
};

struct VerifyOptions {
    int saddle_sign = +1;
    long long guard = 1000000;
    bool require_normal = true;
};

std::vector<VerificationRecord> verify_main_theorem(const KnotDiagram& d,
                                                    const InflatedTriangulation& T,
                                                    const QMatchingSystem& sys, int n,
                                                    const VerifyOptions& opts = {});

// The calibration self-test: returns the saddle-sign settings under which
// the sigma_0 record satisfies a_{sigma0} = s(N_0) on the given diagram.
std::vector<int> calibrate_saddle_sign(const KnotDiagram& d);

}  // namespace knotsurf
