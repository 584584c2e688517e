#pragma once

#include "solenoid/twisted.hpp"

namespace solenoid {

// ── StateSpec ─────────────────────────────────────────────────────────────────
// Vector states phi(a) = <xi, a xi> for a finitely supported unit vector xi on
// the group basis tensor E; the canonical trace is the vector state at
// delta_0 (x) e.  Every state is carried by its positive-definite function
// phi(g) = <xi, lambda(g) xi>, which is all the distance solver needs.

class StateSpec {
public:
    enum class Kind { trace, vector };

    static StateSpec trace_state(const CocycleSpec& ambient) {
        StateSpec s(ambient);
        s.kind_ = Kind::trace;
        return s;
    }

    // xi given as group point -> fiber vector; normalized on construction.
    static StateSpec vector_state(const CocycleSpec& ambient,
                                  std::map<GroupElement, Vector> xi) {
        StateSpec s(ambient);
        s.kind_ = Kind::vector;
        double norm_sq = 0.0;
        for (const auto& [g, v] : xi) norm_sq += v.squaredNorm();
        if (norm_sq <= 0.0)
            throw std::invalid_argument("StateSpec: vector state requires a nonzero vector");
        double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& [g, v] : xi) v *= inv;
        s.xi_ = std::move(xi);
        return s;
    }

    // The point state at delta_g (x) e_0.
    static StateSpec point_state(const CocycleSpec& ambient, const GroupElement& g,
                                 int fiber_dim) {
        Vector e = Vector::Zero(fiber_dim);
        e[0] = cplx(1.0, 0.0);
        std::map<GroupElement, Vector> xi;
        xi.emplace(g, std::move(e));
        return vector_state(ambient, std::move(xi));
    }

    Kind kind() const { return kind_; }
    const CocycleSpec& ambient() const { return ambient_; }
    const std::map<GroupElement, Vector>& xi() const { return xi_; }

    // phi(g) = <xi, lambda(g) xi> = sum_h sigma_g^h <xi(h), xi(h-g)>.
    cplx phi(const GroupElement& g) const {
        if (kind_ == Kind::trace) return g.is_zero() ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        cplx acc(0.0, 0.0);
        for (const auto& [h, vh] : xi_) {
            auto it = xi_.find(h - g);
            if (it == xi_.end()) continue;
            acc += sigma_shift(ambient_, g, h) * vh.dot(it->second);
        }
        return acc;
    }

private:
    explicit StateSpec(CocycleSpec ambient) : ambient_(std::move(ambient)) {}

    CocycleSpec ambient_;
    Kind kind_ = Kind::trace;
    std::map<GroupElement, Vector> xi_;
};

}  // namespace solenoid
