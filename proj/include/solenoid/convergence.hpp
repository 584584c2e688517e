#pragma once

#include "solenoid/fejer.hpp"

namespace solenoid {

// Random self-adjoint polynomial on the nonzero points of a support ball:
// one real N(0, 1) coefficient per {g, -g} pair, as used by every Monte Carlo
// report; the caller records the seed.
inline FourierPolynomial random_self_adjoint(const CocycleSpec& ambient,
                                             const BallTable& support, Rng& rng) {
    FourierPolynomial f(ambient);
    for (const auto& g : support.elements()) {
        if (g.is_zero()) continue;
        GroupElement neg = -g;
        if (neg < g) continue;
        double c = rng.normal();
        f.set(g, cplx(c, 0.0));
        f.set(neg, cplx(c, 0.0));
    }
    return f;
}

// ── bridge-builder diagnostic ─────────────────────────────────────────────────
// Empirical epsilon for the first bridge-builder condition: sample random
// self-adjoint f at the proxy level, normalize to lip(f) = 1, and measure the
// compressed operator norm of f - E_N f.  The second condition holds with
// a = b exactly, so only the schema records it.

struct BridgeBuilderReport {
    int n = 0;        // target level of E_N
    int m = 0;        // proxy level carrying the samples
    int N = 0;        // Fejer order
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double eps_max = 0.0;
    double eps_mean = 0.0;
    double support_radius = 0.0;
};

inline BridgeBuilderReport bridge_builder_epsilon(int n, const FejerSpec& spec,
                                                  const Truncation& t, double support_radius,
                                                  std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("bridge_builder_epsilon: samples must be >= 1");
    if (spec.target_level != n)
        throw std::invalid_argument("bridge_builder_epsilon: Fejer spec targets a different level");

    BridgeBuilderReport rep;
    rep.n = n;
    rep.m = t.level();
    rep.N = spec.order;
    rep.samples = samples;
    rep.seed = seed;
    rep.support_radius = support_radius;

    BallTable support = ball(t.algebra.p, t.algebra.d, t.level(), support_radius);
    double total = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        // Sample streams depend only on (seed, sample index), so a sweep over N
        // sees the identical sample set.
        Rng rng(derived_seed(seed, s));
        FourierPolynomial f = random_self_adjoint(t.algebra, support, rng);
        double norm = lip(f, t);
        if (norm < 1e-12) continue;
        f = cplx(1.0 / norm, 0.0) * f;
        double eps = spectral_norm(lambda_matrix(f - fejer_smooth(f, spec), t));
        rep.eps_max = std::max(rep.eps_max, eps);
        total += eps;
    }
    rep.eps_mean = total / static_cast<double>(samples);
    return rep;
}

// ── spectral comparison ───────────────────────────────────────────────────────
// Hausdorff distance between the two truncated Dirac spectra inside the
// window [-w, w]; a diagnostic proxy for spectral convergence.

inline double hausdorff_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("hausdorff_distance: empty spectrum window");
    auto one_sided = [](const std::vector<double>& from, const std::vector<double>& to) {
        double worst = 0.0;
        for (double x : from) {
            // `to` is sorted; nearest neighbor by binary search.
            auto it = std::lower_bound(to.begin(), to.end(), x);
            double best = std::numeric_limits<double>::infinity();
            if (it != to.end()) best = std::min(best, std::abs(*it - x));
            if (it != to.begin()) best = std::min(best, std::abs(*(it - 1) - x));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

inline double spectral_compare(const Truncation& t1, const Truncation& t2, double window) {
    if (window > std::min(t1.radius(), t2.radius()))
        throw std::invalid_argument("spectral_compare: window exceeds a truncation radius");
    auto clip = [&](std::vector<double> eigs) {
        std::vector<double> out;
        for (double e : eigs)
            if (std::abs(e) <= window) out.push_back(e);
        return out;
    };
    std::vector<double> s1 = clip(dirac_spectrum(t1));
    std::vector<double> s2 = clip(dirac_spectrum(t2));
    if (s1.empty() || s2.empty())
        throw std::invalid_argument("spectral_compare: window contains no spectrum");
    return hausdorff_distance(s1, s2);
}

}  // namespace solenoid
