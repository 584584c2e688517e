#pragma once

#include "solenoid/dirac.hpp"

namespace solenoid {

// ── FejerSpec ─────────────────────────────────────────────────────────────────
// The conditional expectation E_N onto C*(G_n, sigma) smoothed by the product
// Fejer kernel on the dual of G_n.  On Fourier coefficients it multiplies by
//
//   w_N(g) = prod_j max(0, 1 - |p^n x_j(g)| / N)   for g in G_n,   0 off G_n,
//
// so w_N(0) = 1, 0 <= w_N <= 1, and the support is the lattice box of side
// 2N - 1 in p^-n units.

struct FejerSpec {
    int target_level = 0;  // n
    int order = 1;         // N

    FejerSpec(int n, int N) : target_level(n), order(N) {
        if (n < 0) throw std::invalid_argument("FejerSpec: level must be >= 0");
        if (N < 1) throw std::invalid_argument("FejerSpec: order must be >= 1");
    }

    double weight(const GroupElement& g) const {
        if (level(g) > target_level) return 0.0;
        double w = 1.0;
        for (int j = 0; j < g.dim(); ++j) {
            const auto& c = g.coord(j);
            // p^n x_j(g) is the integer lattice coordinate at level n.
            std::int64_t u = checked_mul(std::llabs(c.num()),
                                         checked_pow(g.p(), target_level - c.exp()));
            w *= std::max(0.0, 1.0 - static_cast<double>(u) / static_cast<double>(order));
            if (w == 0.0) return 0.0;
        }
        return w;
    }
};

// E_N f: coefficientwise multiplication by the Fejer weights, dropping all
// coefficients off G_n.
inline FourierPolynomial fejer_smooth(const FourierPolynomial& f, const FejerSpec& spec) {
    FourierPolynomial out(f.ambient());
    for (const auto& [g, c] : f.support()) {
        double w = spec.weight(g);
        if (w != 0.0) out.set(g, w * c);
    }
    return out;
}

struct FejerContractionReport {
    double lip_before = 0.0;
    double lip_after = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Lip(E_N f) <= Lip(f): the dual action is implemented by diagonal unitaries
// commuting with both D and the compression, so the contraction survives
// truncation; tol absorbs eigensolver noise only.
inline FejerContractionReport fejer_lip_contraction_check(const FourierPolynomial& f,
                                                          const FejerSpec& spec,
                                                          const Truncation& t,
                                                          double tol = 1e-6) {
    FejerContractionReport rep;
    rep.tol = tol;
    rep.lip_before = lip(f, t);
    rep.lip_after = lip(fejer_smooth(f, spec), t);
    rep.pass = rep.lip_after <= rep.lip_before * (1.0 + tol);
    return rep;
}

}  // namespace solenoid
