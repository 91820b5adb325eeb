#pragma once

#include <vector>

#include "knotsurf/normal.hpp"
#include "knotsurf/rational.hpp"

namespace knotsurf {

struct TwistContribution {
    int region = -1;
    SurfaceKind kind = SurfaceKind::III;
    int sign = +1;
    int n = 1, k = 0, r = 0, w = 1;  // w = crossing count
    Rational value;
};

// Local slope contribution of a Type I/II/III surface; w is the crossing
// count, the sign selects the mirror rows of the table.
Rational twist_contribution(SurfaceKind kind, int sign, int n, int k, int r, int w);

TwistContribution make_contribution(SurfaceKind kind, int sign, int n, int k, int r, int w,
                                    int region = -1);

// tau(N) = sum of the per-region contributions (one per twist region).
Rational total_twist(const std::vector<TwistContribution>& contributions, int region_count);

// s(N) = tau(N) - tau(Sigma_0)
Rational boundary_slope(const Rational& tau_n, const Rational& tau_sigma0);

}  // namespace knotsurf
