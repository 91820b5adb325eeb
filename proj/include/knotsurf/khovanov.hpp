#pragma once

#include <map>
#include <vector>

#include "knotsurf/diagram.hpp"
#include "knotsurf/laurent.hpp"

namespace knotsurf {

// Khovanov homology of the diagram at n = 1, built from the skein-relation
// cube: positive crossings resolve Through at cube degree 0, negative ones
// Turnback; q-powers follow the printed relations.
struct KhovanovResult {
    // free rank per (homological degree i, quantum degree j)
    std::map<std::pair<int, int>, int> ranks;
    // torsion summand count per (i, j)
    std::map<std::pair<int, int>, int> torsion;
    // graded Euler characteristic sum_{i,j} (-1)^i q^{i+j} rank
    LaurentPoly euler;
};

int cube_degree(const KnotDiagram& d, const KauffmanState& s);
int q_weight(const KnotDiagram& d, const KauffmanState& s);

// Kauffman bracket under the paper's printed relations (verbatim) or the
// classical A-variable convention for cross-checks.
enum class BracketConvention { Verbatim, Classical };

LaurentPoly kauffman_bracket(const KnotDiagram& d,
                             BracketConvention conv = BracketConvention::Verbatim);

KhovanovResult khovanov_homology(const KnotDiagram& d);

// d(X_sigma) = 0 test for the all v_- generator of a state: true iff every
// cube-degree-raising resolution change merges two distinct circles.
bool cycle_check(const KnotDiagram& d, const KauffmanState& s);

// sigma-adequacy: every crossing's two smoothing arcs lie on distinct circles.
bool is_adequate(const KnotDiagram& d, const KauffmanState& s);

}  // namespace knotsurf
