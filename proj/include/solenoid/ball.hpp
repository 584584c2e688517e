#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "solenoid/padic.hpp"

namespace solenoid {

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

// ── BallTable ─────────────────────────────────────────────────────────────────
// The finite set { g in G_n : L(g) <= r }, in a deterministic order that fixes
// the Hilbert-space basis everywhere downstream: sorted by (L, lexicographic
// coordinates), with ties in L broken exactly on the scaled integer L^2.

class BallTable {
public:
    BallTable(std::int64_t p, int d, int n, double r, std::vector<GroupElement> elements)
        : p_(p), d_(d), n_(n), r_(r), elements_(std::move(elements)) {
        index_.reserve(elements_.size());
        for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    }

    std::int64_t p() const { return p_; }
    int d() const { return d_; }
    int level() const { return n_; }
    double radius() const { return r_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<GroupElement>& elements() const { return elements_; }
    const GroupElement& element(std::size_t i) const { return elements_[i]; }

    std::optional<std::size_t> find(const GroupElement& g) const {
        auto it = index_.find(g);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(const GroupElement& g) const { return index_.count(g) > 0; }

private:
    std::int64_t p_;
    int d_;
    int n_;
    double r_;
    std::vector<GroupElement> elements_;
    std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_;
};

// Exhaustive enumeration of { g in G_n : L(g) <= r }: scan the lattice box
// |x_j| <= r in p^-n Z, then filter by the exact membership test.
inline BallTable ball(std::int64_t p, int d, int n, double r,
                      std::size_t cap = kDefaultBallCap) {
    if (p < 2) throw std::invalid_argument("ball: p must be >= 2");
    if (d < 1) throw std::invalid_argument("ball: d must be >= 1");
    if (n < 0) throw std::invalid_argument("ball: level must be >= 0");
    if (r < 1.0) throw std::invalid_argument("ball: radius must be >= 1");

    std::int64_t den = checked_pow(p, n);
    auto half = static_cast<std::int64_t>(std::floor(r * static_cast<double>(den)));
    double box_side = 2.0 * static_cast<double>(half) + 1.0;
    if (std::pow(box_side, d) > 2.0e8)
        throw resource_error("ball: lattice box too large to scan");

    std::vector<GroupElement> elems;
    std::vector<std::int64_t> nums(static_cast<std::size_t>(d), 0);
    // Depth-first scan over the integer box [-half, half]^d of numerators at
    // denominator p^n.
    std::vector<std::int64_t> stack;
    std::function<void(int)> scan = [&](int j) {
        if (j == d) {
            GroupElement g = GroupElement::from_numerators(nums, n, p);
            if (length_leq(g, r)) {
                if (elems.size() >= cap)
                    throw resource_error("ball: element cap exceeded");
                elems.push_back(std::move(g));
            }
            return;
        }
        for (std::int64_t m = -half; m <= half; ++m) {
            nums[static_cast<std::size_t>(j)] = m;
            scan(j + 1);
        }
    };
    scan(0);

    std::sort(elems.begin(), elems.end(), [&](const GroupElement& a, const GroupElement& b) {
        std::int64_t la = length_sq_scaled(a, n);
        std::int64_t lb = length_sq_scaled(b, n);
        if (la != lb) return la < lb;
        return a < b;
    });
    return BallTable(p, d, n, r, std::move(elems));
}

// |ball(n, 2r)| / |ball(n, r)|: the empirical doubling ratio at radius r.
inline double doubling_ratio(std::int64_t p, int d, int n, double r,
                             std::size_t cap = kDefaultBallCap) {
    auto small = ball(p, d, n, r, cap);
    auto large = ball(p, d, n, 2.0 * r, cap);
    return static_cast<double>(large.size()) / static_cast<double>(small.size());
}

// ── coset transversal ─────────────────────────────────────────────────────────
// Fundamental-domain representatives of G_n in G_m (m > n): all k in p^-m Z^d
// with every coordinate in [0, p^-n); 0 is included and no other representative
// lies in G_n.  |C| = p^(d(m-n)).

inline std::vector<GroupElement> coset_representatives(std::int64_t p, int d, int m, int n,
                                                       std::size_t cap = kDefaultBallCap) {
    if (!(m > n && n >= 0))
        throw std::invalid_argument("coset_representatives: need m > n >= 0");
    std::int64_t per_coord = checked_pow(p, m - n);
    double total = std::pow(static_cast<double>(per_coord), d);
    if (total > static_cast<double>(cap))
        throw resource_error("coset_representatives: transversal exceeds cap");

    std::vector<GroupElement> reps;
    std::vector<std::int64_t> nums(static_cast<std::size_t>(d), 0);
    std::function<void(int)> scan = [&](int j) {
        if (j == d) {
            reps.push_back(GroupElement::from_numerators(nums, m, p));
            return;
        }
        for (std::int64_t a = 0; a < per_coord; ++a) {
            nums[static_cast<std::size_t>(j)] = a;
            scan(j + 1);
        }
    };
    scan(0);
    return reps;
}

// ── the F-difference supremum ────────────────────────────────────────────────
// s(g) = sup_h |F(h) - F(h-g)|.  The sup is attained at h = g (against h-g = 0)
// and never exceeded: coordinates of higher level dominate differences.  Closed
// form: 0 when g is integral, F(g) - 1 otherwise.  Validated against the
// brute-force ball supremum in the test suite before use.

inline std::int64_t fdiff_sup(const GroupElement& g, std::optional<int> n = std::nullopt) {
    if (n.has_value() && level(g) > *n)
        throw std::invalid_argument("fdiff_sup: g is not an element of G_n");
    if (level(g) == 0) return 0;
    return f_weight(g) - 1;
}

}  // namespace solenoid
