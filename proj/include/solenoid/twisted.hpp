#pragma once

#include <map>

#include <Eigen/Dense>

#include "solenoid/ball.hpp"
#include "solenoid/clifford.hpp"

namespace solenoid {

// ── CocycleSpec ───────────────────────────────────────────────────────────────
// The antisymmetric bicharacter sigma(g, h) = exp(i pi <g, Theta h>), which is
// a normalized T-valued 2-cocycle on all of Z[1/p]^d and restricts to the
// standard quantum-torus cocycle on each G_n.  This struct doubles as the
// ambient algebra context (p, d, Theta).

struct CocycleSpec {
    std::int64_t p = 2;
    int d = 1;
    Eigen::MatrixXd theta;

    CocycleSpec() : theta(Eigen::MatrixXd::Zero(1, 1)) {}
    CocycleSpec(std::int64_t p_, int d_, Eigen::MatrixXd theta_)
        : p(p_), d(d_), theta(std::move(theta_)) {
        if (p < 2) throw std::invalid_argument("CocycleSpec: p must be >= 2");
        if (d < 1) throw std::invalid_argument("CocycleSpec: d must be >= 1");
        if (theta.rows() != d || theta.cols() != d)
            throw std::invalid_argument("CocycleSpec: theta must be d x d");
        if ((theta + theta.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("CocycleSpec: theta must be antisymmetric");
    }

    // The common d = 2 case: Theta = [[0, theta], [-theta, 0]].
    static CocycleSpec planar(std::int64_t p, double theta) {
        Eigen::MatrixXd m(2, 2);
        m << 0.0, theta, -theta, 0.0;
        return CocycleSpec(p, 2, m);
    }

    bool same_ambient(const CocycleSpec& o) const {
        return p == o.p && d == o.d && theta.rows() == o.theta.rows() &&
               (theta - o.theta).cwiseAbs().maxCoeff() == 0.0;
    }
};

// sigma(g, h) = exp(i pi sum_jk x_j(g) Theta_jk x_k(h)).  The pairing is
// accumulated in long double and reduced mod 2 pi before exponentiating.
inline cplx sigma(const CocycleSpec& spec, const GroupElement& g, const GroupElement& h) {
    long double pairing = 0.0L;
    for (int j = 0; j < spec.d; ++j) {
        if (g.coord(j).is_zero()) continue;
        long double xj = static_cast<long double>(g.coord(j).num()) /
                         static_cast<long double>(checked_pow(spec.p, g.coord(j).exp()));
        for (int k = 0; k < spec.d; ++k) {
            if (spec.theta(j, k) == 0.0 || h.coord(k).is_zero()) continue;
            long double xk = static_cast<long double>(h.coord(k).num()) /
                             static_cast<long double>(checked_pow(spec.p, h.coord(k).exp()));
            pairing += static_cast<long double>(spec.theta(j, k)) * xj * xk;
        }
    }
    long double phase = std::remainderl(static_cast<long double>(M_PI) * pairing,
                                        2.0L * static_cast<long double>(M_PI));
    return std::polar(1.0, static_cast<double>(phase));
}

// sigma_g^h = sigma(g, h - g), the phase of the sigma-projective left regular
// representation: (lambda(g) xi)(h) = sigma_g^h xi(h - g).
inline cplx sigma_shift(const CocycleSpec& spec, const GroupElement& g, const GroupElement& h) {
    return sigma(spec, g, h - g);
}

// ── FourierPolynomial ─────────────────────────────────────────────────────────
// A finitely supported coefficient function g -> C, representing the algebra
// element lambda(f) = sum_g f(g) lambda(g).  Zero coefficients are dropped so
// the support map is canonical; iteration order is the exact total order on
// group elements, which keeps downstream output deterministic.

class FourierPolynomial {
public:
    using Support = std::map<GroupElement, cplx>;

    explicit FourierPolynomial(CocycleSpec ambient) : ambient_(std::move(ambient)) {}

    static FourierPolynomial delta(const CocycleSpec& ambient, const GroupElement& g,
                                   cplx coeff = cplx(1.0, 0.0)) {
        FourierPolynomial f(ambient);
        f.set(g, coeff);
        return f;
    }

    const CocycleSpec& ambient() const { return ambient_; }
    const Support& support() const { return support_; }
    bool empty() const { return support_.empty(); }

    cplx at(const GroupElement& g) const {
        auto it = support_.find(g);
        return it == support_.end() ? cplx(0.0, 0.0) : it->second;
    }

    void set(const GroupElement& g, cplx c) {
        check_element(g);
        if (c == cplx(0.0, 0.0))
            support_.erase(g);
        else
            support_[g] = c;
    }

    void add(const GroupElement& g, cplx c) { set(g, at(g) + c); }

    // max level over the support: the smallest n with support in G_n.
    int support_level() const {
        int l = 0;
        for (const auto& [g, c] : support_) l = std::max(l, level(g));
        return l;
    }

    // max L over the support.
    double support_radius() const {
        double r = 0.0;
        for (const auto& [g, c] : support_) r = std::max(r, length(g));
        return r;
    }

    bool is_self_adjoint(double tol = 0.0) const {
        for (const auto& [g, c] : support_) {
            if (std::abs(at(-g) - std::conj(c)) > tol) return false;
        }
        return true;
    }

    friend FourierPolynomial operator+(const FourierPolynomial& a, const FourierPolynomial& b) {
        a.check_same(b);
        FourierPolynomial out = a;
        for (const auto& [g, c] : b.support_) out.add(g, c);
        return out;
    }

    friend FourierPolynomial operator-(const FourierPolynomial& a, const FourierPolynomial& b) {
        a.check_same(b);
        FourierPolynomial out = a;
        for (const auto& [g, c] : b.support_) out.add(g, -c);
        return out;
    }

    friend FourierPolynomial operator*(cplx s, const FourierPolynomial& f) {
        FourierPolynomial out(f.ambient_);
        for (const auto& [g, c] : f.support_) out.set(g, s * c);
        return out;
    }

private:
    void check_element(const GroupElement& g) const {
        if (g.p() != ambient_.p || g.dim() != ambient_.d)
            throw std::invalid_argument("FourierPolynomial: element from wrong ambient group");
    }
    void check_same(const FourierPolynomial& o) const {
        if (!ambient_.same_ambient(o.ambient_))
            throw std::invalid_argument("FourierPolynomial: ambient mismatch");
    }

    CocycleSpec ambient_;
    Support support_;
};

// (f1 * f2)(h) = sum_g f1(g) f2(h - g) sigma(g, h - g), so that
// lambda(f1 * f2) = lambda(f1) lambda(f2).
inline FourierPolynomial twisted_convolve(const FourierPolynomial& f1,
                                          const FourierPolynomial& f2) {
    if (!f1.ambient().same_ambient(f2.ambient()))
        throw std::invalid_argument("twisted_convolve: ambient mismatch");
    FourierPolynomial out(f1.ambient());
    for (const auto& [g, c1] : f1.support())
        for (const auto& [h2, c2] : f2.support())
            out.add(g + h2, c1 * c2 * sigma(f1.ambient(), g, h2));
    return out;
}

// f*(g) = conj(f(-g)); with a normalized cocycle lambda(f)* = lambda(f*).
inline FourierPolynomial adjoint(const FourierPolynomial& f) {
    FourierPolynomial out(f.ambient());
    for (const auto& [g, c] : f.support()) out.set(-g, std::conj(c));
    return out;
}

// Canonical trace: tau(f) = f(0), the vector state at delta_0 (x) e.
inline cplx trace(const FourierPolynomial& f) {
    return f.at(GroupElement::zero(f.ambient().p, f.ambient().d));
}

// ── Truncation ────────────────────────────────────────────────────────────────
// Finite compression of l^2(G_n) (x) E: the basis is BallTable order tensor
// the standard basis of E, so matrices are reproducible given a config.

struct Truncation {
    CocycleSpec algebra;
    BallTable ball_table;
    GammaSet gammas;

    Truncation(CocycleSpec algebra_, int n, double radius, std::size_t cap = kDefaultBallCap)
        : algebra(std::move(algebra_)),
          ball_table(ball(algebra.p, algebra.d, n, radius, cap)),
          gammas(build_gammas(algebra.d)) {}

    int level() const { return ball_table.level(); }
    double radius() const { return ball_table.radius(); }
    std::size_t points() const { return ball_table.size(); }
    int fiber_dim() const { return gammas.dim; }
    std::size_t hilbert_dim() const { return points() * static_cast<std::size_t>(gammas.dim); }
};

// ── block-sparse matrices on the truncated Hilbert space ─────────────────────
// Entries live on (group point) x (group point) blocks of size dim E.  Dense
// conversion serves the eigensolver path; triplet apply serves the iterative
// one.

struct SpMat {
    std::size_t dim = 0;
    struct Entry {
        std::size_t row, col;
        cplx value;
    };
    std::vector<Entry> entries;

    Matrix dense() const {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (const auto& e : entries)
            m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
        return m;
    }

    Vector apply(const Vector& v) const {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(dim));
        for (const auto& e : entries)
            out[static_cast<Eigen::Index>(e.row)] += e.value * v[static_cast<Eigen::Index>(e.col)];
        return out;
    }

    Vector apply_adjoint(const Vector& v) const {
        Vector out = Vector::Zero(static_cast<Eigen::Index>(dim));
        for (const auto& e : entries)
            out[static_cast<Eigen::Index>(e.col)] +=
                std::conj(e.value) * v[static_cast<Eigen::Index>(e.row)];
        return out;
    }
};

// Compression P lambda(f) P to the truncation: block entry at (h, h') is
// f(h - h') sigma_{h-h'}^{h} 1_E.
inline SpMat lambda_matrix(const FourierPolynomial& f, const Truncation& t) {
    if (!f.ambient().same_ambient(t.algebra))
        throw std::invalid_argument("lambda_matrix: ambient mismatch");
    if (f.support_level() > t.level())
        throw std::domain_error("lambda_matrix: support of f lies outside G_n");

    const auto& tbl = t.ball_table;
    const auto e_dim = static_cast<std::size_t>(t.fiber_dim());
    SpMat m;
    m.dim = t.hilbert_dim();
    for (const auto& [g, c] : f.support()) {
        for (std::size_t col = 0; col < tbl.size(); ++col) {
            const GroupElement& hp = tbl.element(col);
            GroupElement h = hp + g;
            auto row = tbl.find(h);
            if (!row) continue;
            cplx value = c * sigma_shift(t.algebra, g, h);
            for (std::size_t q = 0; q < e_dim; ++q)
                m.entries.push_back({*row * e_dim + q, col * e_dim + q, value});
        }
    }
    return m;
}

}  // namespace solenoid
