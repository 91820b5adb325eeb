#include "knotsurf/slope.hpp"

#include <set>

namespace knotsurf {

Rational twist_contribution(SurfaceKind kind, int sign, int n, int k, int r, int w) {
    if (n < 1) throw NormalError("twist_contribution: n < 1");
    if (w < 1) throw NormalError("twist_contribution: w < 1");
    if (k < 0 || k > n) throw NormalError("twist_contribution: k out of range");
    if (kind == SurfaceKind::I && k == n) throw NormalError("S_I needs k < n");
    if (r < 0 || r > w) throw NormalError("twist_contribution: r out of range");
    if (kind == SurfaceKind::III) return Rational(0);
    if (kind == SurfaceKind::I) {
        // S_I^-: -2(1 - k/n), mirrored for +
        Rational v = Rational(-2) * (Rational(1) - Rational(k, n));
        return sign < 0 ? v : -v;
    }
    // S_II^-: 2(w - r + 1 - k/n) with w taken in its negative form
    Rational v = Rational(2) * (Rational(-w) - Rational(r) + Rational(1) - Rational(k, n));
    return sign < 0 ? v : -v;
}

TwistContribution make_contribution(SurfaceKind kind, int sign, int n, int k, int r, int w,
                                    int region) {
    TwistContribution c;
    c.kind = kind;
    c.sign = sign;
    c.n = n;
    c.k = k;
    c.r = r;
    c.w = w;
    c.region = region;
    c.value = twist_contribution(kind, sign, n, k, r, w);
    return c;
}

Rational total_twist(const std::vector<TwistContribution>& contributions, int region_count) {
    std::set<int> seen;
    Rational tau(0);
    for (auto& c : contributions) {
        if (!seen.insert(c.region).second)
            throw NormalError("total_twist: duplicate region contribution");
        tau += c.value;
    }
    if ((int)seen.size() != region_count) throw NormalError("total_twist: missing region");
    return tau;
}

Rational boundary_slope(const Rational& tau_n, const Rational& tau_sigma0) {
    return tau_n - tau_sigma0;
}

}  // namespace knotsurf
