#include "knotsurf/tl.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace knotsurf {

PlanarMatching::PlanarMatching(std::vector<int> mate) : mate_(std::move(mate)) {
    int m = (int)mate_.size();
    if (m % 2) throw std::invalid_argument("odd point count");
    for (int p = 0; p < m; ++p) {
        if (mate_[p] < 0 || mate_[p] >= m || mate_[p] == p || mate_[mate_[p]] != p)
            throw std::invalid_argument("not a perfect matching");
    }
    // Planarity: non-crossing in disk boundary order b0..b_{n-1}, t_{n-1}..t0.
    int n = m / 2;
    auto pos = [&](int p) { return p < n ? p : 2 * n - 1 - (p - n); };
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            if (p == q || p == mate_[q]) continue;
            int a1 = pos(p), a2 = pos(mate_[p]), b1 = pos(q), b2 = pos(mate_[q]);
            if (a1 > a2) std::swap(a1, a2);
            if (b1 > b2) std::swap(b1, b2);
            bool cross = (a1 < b1 && b1 < a2 && a2 < b2);
            if (cross) throw std::invalid_argument("crossing matching");
        }
}

PlanarMatching PlanarMatching::identity(int n) {
    std::vector<int> m(2 * n);
    for (int i = 0; i < n; ++i) {
        m[i] = n + i;
        m[n + i] = i;
    }
    return PlanarMatching(std::move(m));
}

bool PlanarMatching::is_identity() const {
    int n = strands();
    for (int i = 0; i < n; ++i)
        if (mate_[i] != n + i) return false;
    return true;
}

int PlanarMatching::through_count() const {
    int n = strands(), t = 0;
    for (int i = 0; i < n; ++i)
        if (mate_[i] >= n) ++t;
    return t;
}

std::string PlanarMatching::paren_string() const {
    int n = strands();
    std::string s(2 * n, '?');
    auto pos = [&](int p) { return p < n ? p : 2 * n - 1 - (p - n); };
    for (int p = 0; p < 2 * n; ++p) {
        int a = pos(p), b = pos(mate_[p]);
        s[a] = a < b ? '(' : ')';
    }
    return s;
}

std::pair<PlanarMatching, int> compose_matchings(const PlanarMatching& a,
                                                 const PlanarMatching& b) {
    int n = a.strands();
    if (b.strands() != n) throw std::invalid_argument("arity mismatch");
    // Result boundary: bottom = b's bottom (ids 0..n-1), top = a's top
    // (ids n..2n-1). Interface: b's top i  <-> a's bottom i.
    auto walk = [&](int p) {
        // p in result ids; returns its partner by walking the interface.
        bool in_a = p >= n;
        int cur = in_a ? (p - n) + n : p;  // local id within a or b
        while (true) {
            int m = in_a ? a.mate(cur) : b.mate(cur);
            if (in_a) {
                if (m >= n) return n + (m - n);  // a's top: result top
                // a's bottom -> interface -> b's top
                in_a = false;
                cur = n + m;
            } else {
                if (m < n) return m;  // b's bottom: result bottom
                in_a = true;
                cur = m - n;
            }
        }
    };
    std::vector<int> mate(2 * n, -1);
    for (int p = 0; p < 2 * n; ++p)
        if (mate[p] == -1) {
            int q = walk(p);
            mate[p] = q;
            mate[q] = p;
        }
    // Loops: interface strands never reaching the result boundary.
    std::vector<bool> seen(n, false);
    int loops = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int cur = i;
        bool closed = true;
        while (true) {
            seen[cur] = true;
            int m = a.mate(cur);  // a-arc from interface point cur
            if (m >= n) { closed = false; break; }  // escapes to a's top
            seen[m] = true;
            int m2 = b.mate(n + m);  // b-arc from interface point m
            if (m2 < n) { closed = false; break; }  // escapes to b's bottom
            cur = m2 - n;
            if (cur == i) break;  // loop closed
        }
        if (closed) ++loops;
    }
    return {PlanarMatching(std::move(mate)), loops};
}

TLElement TLElement::identity(int n) {
    return basis(PlanarMatching::identity(n));
}

TLElement TLElement::generator(int n, int i) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("bad generator index");
    std::vector<int> m(2 * n);
    for (int k = 0; k < n; ++k) {
        m[k] = n + k;
        m[n + k] = k;
    }
    // cap joining bottom i-1,i (0-based) and cup joining top i-1,i
    m[i - 1] = i;
    m[i] = i - 1;
    m[n + i - 1] = n + i;
    m[n + i] = n + i - 1;
    return basis(PlanarMatching(std::move(m)));
}

TLElement TLElement::basis(const PlanarMatching& m, RationalFunction c) {
    TLElement e(m.strands());
    e.add(m, c);
    return e;
}

RationalFunction TLElement::coeff(const PlanarMatching& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RationalFunction() : it->second;
}

void TLElement::add(const PlanarMatching& m, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TLElement operator+(const TLElement& a, const TLElement& b) {
    TLElement r = a;
    r.n_ = a.n_ ? a.n_ : b.n_;
    for (auto& [m, c] : b.terms_) r.add(m, c);
    return r;
}

TLElement operator-(const TLElement& a, const TLElement& b) {
    TLElement r = a;
    r.n_ = a.n_ ? a.n_ : b.n_;
    for (auto& [m, c] : b.terms_) r.add(m, -c);
    return r;
}

TLElement operator*(const RationalFunction& c, const TLElement& a) {
    TLElement r(a.n_);
    for (auto& [m, k] : a.terms_) r.add(m, c * k);
    return r;
}

TLElement operator*(const TLElement& a, const TLElement& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("arity mismatch");
    TLElement r(a.n_);
    RationalFunction delta{loop_value()};
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) {
            auto [m, loops] = compose_matchings(ma, mb);
            RationalFunction c = ca * cb;
            for (int i = 0; i < loops; ++i) c *= delta;
            r.add(m, c);
        }
    return r;
}

TLElement TLElement::tensor(const TLElement& other) const {
    int n1 = n_, n2 = other.n_, n = n1 + n2;
    TLElement r(n);
    auto embed = [&](const PlanarMatching& a, const PlanarMatching& b) {
        std::vector<int> m(2 * n);
        auto mapa = [&](int p) { return p < n1 ? p : n + (p - n1); };
        auto mapb = [&](int p) { return p < n2 ? n1 + p : n + n1 + (p - n2); };
        for (int p = 0; p < 2 * n1; ++p) m[mapa(p)] = mapa(a.mate(p));
        for (int p = 0; p < 2 * n2; ++p) m[mapb(p)] = mapb(b.mate(p));
        return PlanarMatching(std::move(m));
    };
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : other.terms_) r.add(embed(ma, mb), ca * cb);
    return r;
}

RationalFunction TLElement::closure() const {
    RationalFunction total;
    RationalFunction delta{loop_value()};
    for (auto& [m, c] : terms_) {
        int n = m.strands();
        std::vector<bool> seen(2 * n, false);
        int loops = 0;
        for (int p = 0; p < 2 * n; ++p) {
            if (seen[p]) continue;
            int cur = p;
            while (!seen[cur]) {
                seen[cur] = true;
                int q = m.mate(cur);
                seen[q] = true;
                cur = q < n ? q + n : q - n;  // closure arc
            }
            ++loops;
        }
        RationalFunction term = c;
        for (int i = 0; i < loops; ++i) term *= delta;
        total += term;
    }
    return total;
}

RationalFunction quantum_int(int n) {
    if (n < 0) throw std::invalid_argument("quantum_int: n < 0");
    LaurentPoly num = LaurentPoly::monomial(1, n) - LaurentPoly::monomial(1, -n);
    LaurentPoly den = LaurentPoly::monomial(1, 1) - LaurentPoly::monomial(1, -1);
    return RationalFunction(num, den);
}

LaurentPoly loop_value() {
    return LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(1, -1);
}

const TLElement& jones_wenzl(int n) {
    if (n < 1) throw std::invalid_argument("jones_wenzl: n < 1");
    static std::map<int, TLElement> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (!cache.count(1)) cache.emplace(1, TLElement::identity(1));
    for (int k = 2; k <= n; ++k) {
        if (cache.count(k)) continue;
        const TLElement& prev = cache.at(k - 1);
        TLElement wide = prev.tensor(TLElement::identity(1));
        TLElement e = TLElement::generator(k, k - 1);
        RationalFunction c = quantum_int(k - 1) / quantum_int(k);
        cache.emplace(k, wide - c * (wide * e * wide));
    }
    return cache.at(n);
}

}  // namespace knotsurf
