#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include "solenoid/common.hpp"

namespace solenoid {

// ── PadicRational ─────────────────────────────────────────────────────────────
// One coordinate of a group element: the exact value num / p^exp with exp >= 0.
// Canonical form: exp == 0 or p does not divide num; zero is (0, 0).
// The base p is ambient context and is passed to the operations that need it.

class PadicRational {
public:
    PadicRational() : num_(0), exp_(0) {}
    PadicRational(std::int64_t num, int exp, std::int64_t p) { assign(num, exp, p); }

    std::int64_t num() const { return num_; }
    int exp() const { return exp_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return exp_ == 0; }

    double value(std::int64_t p) const {
        return static_cast<double>(num_) / static_cast<double>(checked_pow(p, exp_));
    }

    PadicRational negated() const {
        PadicRational r;
        r.num_ = -num_;
        r.exp_ = exp_;
        return r;
    }

    friend bool operator==(const PadicRational& a, const PadicRational& b) {
        return a.num_ == b.num_ && a.exp_ == b.exp_;
    }
    friend bool operator!=(const PadicRational& a, const PadicRational& b) { return !(a == b); }

private:
    void assign(std::int64_t num, int exp, std::int64_t p) {
        if (exp < 0) throw std::invalid_argument("PadicRational: exponent must be >= 0");
        if (p < 2) throw std::invalid_argument("PadicRational: p must be >= 2");
        while (exp > 0 && num != 0 && num % p == 0) {
            num /= p;
            --exp;
        }
        if (num == 0) exp = 0;
        num_ = num;
        exp_ = exp;
    }

    std::int64_t num_;
    int exp_;
};

// Canonical reduction of m / p^k.
inline PadicRational reduce(std::int64_t m, int k, std::int64_t p) {
    return PadicRational(m, k, p);
}

inline PadicRational padic_add(const PadicRational& a, const PadicRational& b, std::int64_t p) {
    int e = std::max(a.exp(), b.exp());
    std::int64_t na = checked_mul(a.num(), checked_pow(p, e - a.exp()));
    std::int64_t nb = checked_mul(b.num(), checked_pow(p, e - b.exp()));
    return PadicRational(checked_add(na, nb), e, p);
}

inline PadicRational padic_sub(const PadicRational& a, const PadicRational& b, std::int64_t p) {
    return padic_add(a, b.negated(), p);
}

// Exact comparison of values a/p^a.exp vs b/p^b.exp; 128-bit cross-multiply.
inline int padic_compare(std::int64_t p, const PadicRational& a, const PadicRational& b) {
    __int128 lhs = a.num();
    __int128 rhs = b.num();
    for (int i = 0; i < b.exp(); ++i) lhs *= p;
    for (int i = 0; i < a.exp(); ++i) rhs *= p;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

// ── GroupElement ──────────────────────────────────────────────────────────────
// An element of G_infinity = Z[1/p]^d, held coordinatewise in canonical form.
// Elements of G_n are exactly those with level <= n.

class GroupElement {
public:
    GroupElement() : p_(2) {}
    GroupElement(std::vector<PadicRational> coords, std::int64_t p)
        : coords_(std::move(coords)), p_(p) {
        if (p_ < 2) throw std::invalid_argument("GroupElement: p must be >= 2");
        if (coords_.empty()) throw std::invalid_argument("GroupElement: dimension must be >= 1");
    }

    static GroupElement zero(std::int64_t p, int d) {
        return GroupElement(std::vector<PadicRational>(static_cast<std::size_t>(d)), p);
    }

    // Coordinates given as integer numerators over a common denominator p^k.
    static GroupElement from_numerators(const std::vector<std::int64_t>& nums, int k,
                                        std::int64_t p) {
        std::vector<PadicRational> coords;
        coords.reserve(nums.size());
        for (std::int64_t m : nums) coords.emplace_back(m, k, p);
        return GroupElement(std::move(coords), p);
    }

    std::int64_t p() const { return p_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    const std::vector<PadicRational>& coords() const { return coords_; }
    const PadicRational& coord(int j) const { return coords_[static_cast<std::size_t>(j)]; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    double x(int j) const { return coords_[static_cast<std::size_t>(j)].value(p_); }

    friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
        a.check_ambient(b);
        std::vector<PadicRational> coords;
        coords.reserve(a.coords_.size());
        for (std::size_t j = 0; j < a.coords_.size(); ++j)
            coords.push_back(padic_add(a.coords_[j], b.coords_[j], a.p_));
        return GroupElement(std::move(coords), a.p_);
    }

    friend GroupElement operator-(const GroupElement& a, const GroupElement& b) {
        a.check_ambient(b);
        std::vector<PadicRational> coords;
        coords.reserve(a.coords_.size());
        for (std::size_t j = 0; j < a.coords_.size(); ++j)
            coords.push_back(padic_sub(a.coords_[j], b.coords_[j], a.p_));
        return GroupElement(std::move(coords), a.p_);
    }

    GroupElement operator-() const {
        std::vector<PadicRational> coords;
        coords.reserve(coords_.size());
        for (const auto& c : coords_) coords.push_back(c.negated());
        return GroupElement(std::move(coords), p_);
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.p_ == b.p_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

    // Total order: exact lexicographic comparison of coordinate values.
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        a.check_ambient(b);
        for (std::size_t j = 0; j < a.coords_.size(); ++j) {
            int c = padic_compare(a.p_, a.coords_[j], b.coords_[j]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            if (j) os << ",";
            const auto& c = coords_[j];
            os << c.num();
            if (c.exp() > 0) os << "/" << checked_pow(p_, c.exp());
        }
        return os.str();
    }

private:
    void check_ambient(const GroupElement& other) const {
        if (p_ != other.p_ || coords_.size() != other.coords_.size())
            throw std::invalid_argument("GroupElement: ambient (p, d) mismatch");
    }

    std::vector<PadicRational> coords_;
    std::int64_t p_;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const {
        std::size_t h = std::hash<std::int64_t>{}(g.p());
        for (const auto& c : g.coords()) {
            h ^= std::hash<std::int64_t>{}(c.num()) + 0x9e3779b9 + (h << 6) + (h >> 2);
            h ^= std::hash<int>{}(c.exp()) + 0x9e3779b9 + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// ── level, F and L ────────────────────────────────────────────────────────────

// level(g) = min{ n : p^n g in Z^d } = largest coordinate exponent.
inline int level(const GroupElement& g) {
    int l = 0;
    for (const auto& c : g.coords()) l = std::max(l, c.exp());
    return l;
}

// F(g) = p^level(g); in particular F(0) = 1.
inline std::int64_t f_weight(const GroupElement& g) {
    return checked_pow(g.p(), level(g));
}

// Exact integer p^(2n) * L(g)^2 for any scale n >= level(g).
inline std::int64_t length_sq_scaled(const GroupElement& g, int n) {
    std::int64_t p = g.p();
    std::int64_t acc = 0;
    for (const auto& c : g.coords()) {
        std::int64_t m = checked_mul(c.num(), checked_pow(p, n - c.exp()));
        acc = checked_add(acc, checked_mul(m, m));
    }
    std::int64_t fs = checked_pow(p, level(g) + n);
    return checked_add(acc, checked_mul(fs, fs));
}

// L(g) = sqrt( sum_j x_j(g)^2 + F(g)^2 ).  Note L(0) = 1.
inline double length(const GroupElement& g) {
    int n = level(g);
    return std::sqrt(static_cast<double>(length_sq_scaled(g, n))) /
           static_cast<double>(checked_pow(g.p(), n));
}

// Exact membership test L(g) <= r, decided without float square roots.
inline bool length_leq(const GroupElement& g, double r) {
    int n = level(g);
    long double lhs = static_cast<long double>(length_sq_scaled(g, n));
    long double scale = static_cast<long double>(checked_pow(g.p(), n));
    return lhs <= static_cast<long double>(r) * static_cast<long double>(r) * scale * scale;
}

}  // namespace solenoid
