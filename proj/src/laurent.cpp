#include "knotsurf/laurent.hpp"

#include <algorithm>
#include <numeric>

namespace knotsurf {

namespace {

using Big = __int128;
using Dense = std::vector<Big>;  // index = exponent, little-endian

void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Big big_gcd(Big a, Big b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { Big t = a % b; a = b; b = t; }
    return a;
}

Big content(const Dense& p) {
    Big g = 0;
    for (Big c : p) g = big_gcd(g, c);
    return g == 0 ? 1 : g;
}

void divide_scalar(Dense& p, Big s) {
    for (Big& c : p) c /= s;
}

// Pseudo-remainder of a by b (b nonzero), with primitive reduction.
Dense prem_primitive(Dense a, const Dense& b) {
    Big lb = b.back();
    while (a.size() >= b.size()) {
        Big la = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < a.size(); ++i) a[i] *= lb;
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
        trim(a);
        Big c = content(a);
        if (c > 1) divide_scalar(a, c);
        if (a.empty()) break;
    }
    return a;
}

Dense poly_gcd(Dense a, Dense b) {
    trim(a);
    trim(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    divide_scalar(a, content(a));
    divide_scalar(b, content(b));
    while (!b.empty()) {
        Dense r = prem_primitive(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.back() < 0) for (Big& c : a) c = -c;
    return a;
}

// Exact polynomial division; caller guarantees divisibility.
Dense exact_div(Dense a, const Dense& b) {
    trim(a);
    if (a.empty()) return {};
    Dense q(a.size() - b.size() + 1, 0);
    while (!a.empty() && a.size() >= b.size()) {
        Big la = a.back(), lb = b.back();
        if (la % lb != 0) throw std::logic_error("exact_div: not divisible");
        Big coef = la / lb;
        size_t shift = a.size() - b.size();
        q[shift] = coef;
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= coef * b[i];
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("exact_div: nonzero remainder");
    trim(q);
    return q;
}

Dense to_dense(const LaurentPoly& p, int base) {
    Dense d;
    for (auto& [k, c] : p.terms()) {
        size_t idx = (size_t)(k - base);
        if (d.size() <= idx) d.resize(idx + 1, 0);
        d[idx] = c;
    }
    return d;
}

LaurentPoly from_dense(const Dense& d, int base) {
    LaurentPoly p;
    for (size_t i = 0; i < d.size(); ++i) {
        Big c = d[i];
        if (c == 0) continue;
        if (c > INT64_MAX || c < INT64_MIN) throw std::overflow_error("LaurentPoly overflow");
        p.add_term(base + (int)i, (long long)c);
    }
    return p;
}

}  // namespace

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    int nbase = num_.min_deg();
    int dbase = den_.min_deg();
    Dense n = to_dense(num_, nbase);
    Dense d = to_dense(den_, dbase);
    Dense g = poly_gcd(n, d);
    if (g.size() > 1 || (g.size() == 1 && g[0] != 1)) {
        n = exact_div(std::move(n), g);
        d = exact_div(std::move(d), g);
    }
    Big cn = content(n), cd = content(d);
    Big c = big_gcd(cn, cd);
    if (c > 1) {
        divide_scalar(n, c);
        divide_scalar(d, c);
    }
    if (d.back() < 0) {
        for (Big& x : n) x = -x;
        for (Big& x : d) x = -x;
    }
    // Absorb the monomial shift into the numerator: denominator min exponent 0.
    num_ = from_dense(n, nbase - dbase);
    den_ = from_dense(d, 0);
    while (!den_.is_zero() && den_.min_deg() > 0) {
        den_ = den_.shifted(-1);
        num_ = num_.shifted(-1);
    }
}

}  // namespace knotsurf
