#pragma once

#include <map>
#include <string>
#include <vector>

#include "knotsurf/laurent.hpp"

namespace knotsurf {

// Non-crossing perfect matching of n bottom and n top boundary points of the
// square. Point ids: bottom i = i (left to right), top i = n + i.
class PlanarMatching {
public:
    PlanarMatching() = default;
    explicit PlanarMatching(std::vector<int> mate);

    static PlanarMatching identity(int n);
    int strands() const { return (int)mate_.size() / 2; }
    int mate(int p) const { return mate_[p]; }
    const std::vector<int>& mates() const { return mate_; }

    bool is_identity() const;
    int through_count() const;  // strands connecting bottom to top

    // Balanced-parenthesis canonical form in disk boundary order.
    std::string paren_string() const;

    friend bool operator<(const PlanarMatching& a, const PlanarMatching& b) {
        return a.mate_ < b.mate_;
    }
    friend bool operator==(const PlanarMatching& a, const PlanarMatching& b) {
        return a.mate_ == b.mate_;
    }

private:
    std::vector<int> mate_;
};

// Stack a on top of b (a's bottom glued to b's top); returns the composed
// matching and the number of closed loops formed.
std::pair<PlanarMatching, int> compose_matchings(const PlanarMatching& a,
                                                 const PlanarMatching& b);

// Finitely supported sum of planar matchings with rational-function
// coefficients: a skein element of TL_n.
class TLElement {
public:
    TLElement() = default;
    explicit TLElement(int n) : n_(n) {}

    static TLElement identity(int n);
    static TLElement generator(int n, int i);  // e_i, 1 <= i <= n-1
    static TLElement basis(const PlanarMatching& m, RationalFunction c = RationalFunction(1));

    int strands() const { return n_; }
    const std::map<PlanarMatching, RationalFunction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    RationalFunction coeff(const PlanarMatching& m) const;

    void add(const PlanarMatching& m, const RationalFunction& c);

    friend TLElement operator+(const TLElement& a, const TLElement& b);
    friend TLElement operator-(const TLElement& a, const TLElement& b);
    friend TLElement operator*(const RationalFunction& c, const TLElement& a);
    // Algebra product: stacking a on top of b, loops become (q + q^-1).
    friend TLElement operator*(const TLElement& a, const TLElement& b);

    TLElement tensor(const TLElement& other) const;  // side by side

    // Markov trace closure: connect top i to bottom i around; loops to delta.
    RationalFunction closure() const;

    friend bool operator==(const TLElement& a, const TLElement& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

private:
    int n_ = 0;
    std::map<PlanarMatching, RationalFunction> terms_;
};

// [n] = (q^n - q^-n)/(q - q^-1), reduced (a Laurent polynomial for n >= 0).
RationalFunction quantum_int(int n);

// delta = q + q^-1
LaurentPoly loop_value();

// Jones-Wenzl projector via the Wenzl recurrence; memoized.
const TLElement& jones_wenzl(int n);

}  // namespace knotsurf
