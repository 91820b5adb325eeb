#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace knotsurf {

// Laurent polynomial in q with exact integer coefficients.
// Zero coefficients are never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long long c) { if (c != 0) terms_[0] = c; }
    static LaurentPoly monomial(long long c, int k) {
        LaurentPoly p;
        if (c != 0) p.terms_[k] = c;
        return p;
    }

    const std::map<int, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long long coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? 0 : it->second;
    }
    int min_deg() const {
        if (is_zero()) throw std::domain_error("min_deg of zero");
        return terms_.begin()->first;
    }
    int max_deg() const {
        if (is_zero()) throw std::domain_error("max_deg of zero");
        return terms_.rbegin()->first;
    }

    void add_term(int k, long long c) {
        if (c == 0) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            __int128 s = (__int128)it->second + c;
            check(s);
            if (s == 0) terms_.erase(it);
            else it->second = (long long)s;
        }
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r = a;
        for (auto& [k, c] : b.terms_) r.add_term(k, negate_ll(c));
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [k, c] : terms_) r.terms_[k] = negate_ll(c);
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) {
                __int128 p = (__int128)ca * cb;
                check(p);
                r.add_term(ka + kb, (long long)p);
            }
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) { *this = *this + o; return *this; }
    LaurentPoly& operator-=(const LaurentPoly& o) { *this = *this - o; return *this; }
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    // q -> q^{-1}
    LaurentPoly mirror() const {
        LaurentPoly r;
        for (auto& [k, c] : terms_) r.terms_[-k] = c;
        return r;
    }

    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (auto& [e, c] : terms_) r.terms_[e + k] = c;
        return r;
    }

    LaurentPoly pow(int e) const {
        LaurentPoly r(1);
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    // Sorted `coeff*q^k` rendering, e.g. "q^-2 - 1 + q^2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [k, c] : terms_) {
            long long mag = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (mag != 1 || k == 0) out += std::to_string(mag);
            if (k != 0) {
                if (mag != 1) out += "*";
                out += "q";
                if (k != 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
        return os << p.str();
    }

private:
    static void check(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("LaurentPoly overflow");
    }
    static long long negate_ll(long long v) {
        if (v == INT64_MIN) throw std::overflow_error("LaurentPoly overflow");
        return -v;
    }

    std::map<int, long long> terms_;
};

// Quotient of Laurent polynomials, kept gcd-reduced with a canonical
// denominator (lowest exponent 0, positive leading coefficient).
class RationalFunction {
public:
    RationalFunction() : num_(0), den_(1) {}
    RationalFunction(long long c) : num_(c), den_(1) {}
    RationalFunction(const LaurentPoly& p) : num_(p), den_(1) {}
    RationalFunction(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        reduce();
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == LaurentPoly(1); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    RationalFunction& operator+=(const RationalFunction& o) { *this = *this + o; return *this; }
    RationalFunction& operator-=(const RationalFunction& o) { *this = *this - o; return *this; }
    RationalFunction& operator*=(const RationalFunction& o) { *this = *this * o; return *this; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void reduce();

    LaurentPoly num_;
    LaurentPoly den_;
};

}  // namespace knotsurf
