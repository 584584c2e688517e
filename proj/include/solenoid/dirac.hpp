#pragma once

#include <numeric>

#include "solenoid/norms.hpp"

namespace solenoid {

// ── the truncated Dirac operator ──────────────────────────────────────────────
// D = sum_j X_j (x) gamma_j + M_F (x) gamma_{d+1}, compressed to the ball.  In
// the group basis it is block diagonal with block
//
//   A(g) = sum_j x_j(g) gamma_j + F(g) gamma_{d+1},
//
// and A(g)^2 = L(g)^2 by the Clifford relations, so the spectrum is the exact
// multiset { +-L(g) : g in ball }, each value with multiplicity dim E / 2.

inline Matrix dirac_block(const Truncation& t, const GroupElement& g) {
    Matrix block = static_cast<double>(f_weight(g)) * t.gammas.gamma(t.algebra.d);
    for (int j = 0; j < t.algebra.d; ++j) {
        double xj = g.x(j);
        if (xj != 0.0) block += xj * t.gammas.gamma(j);
    }
    return block;
}

inline SpMat dirac_matrix(const Truncation& t) {
    const auto e_dim = static_cast<std::size_t>(t.fiber_dim());
    SpMat m;
    m.dim = t.hilbert_dim();
    for (std::size_t i = 0; i < t.points(); ++i) {
        Matrix block = dirac_block(t, t.ball_table.element(i));
        for (std::size_t a = 0; a < e_dim; ++a)
            for (std::size_t b = 0; b < e_dim; ++b) {
                cplx v = block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                if (v != cplx(0.0, 0.0)) m.entries.push_back({i * e_dim + a, i * e_dim + b, v});
            }
    }
    return m;
}

// Eigenvalues of the assembled Dirac matrix, sorted ascending.  The assembly
// is block diagonal by construction, so the blocks are diagonalized
// independently; a dense cross-check lives in the test suite.
inline std::vector<double> dirac_spectrum(const Truncation& t) {
    std::vector<double> eigs;
    eigs.reserve(t.hilbert_dim());
    for (std::size_t i = 0; i < t.points(); ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(dirac_block(t, t.ball_table.element(i)),
                                                 Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw solver_error("dirac_spectrum: eigensolve failed", 0.0);
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
            eigs.push_back(es.eigenvalues()[k]);
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

// The exact multiset { +-L(g) } with multiplicity dim E / 2, sorted ascending.
inline std::vector<double> dirac_spectrum_expected(const Truncation& t) {
    std::vector<double> eigs;
    int half = t.fiber_dim() / 2;
    for (std::size_t i = 0; i < t.points(); ++i) {
        double l = length(t.ball_table.element(i));
        for (int k = 0; k < half; ++k) {
            eigs.push_back(-l);
            eigs.push_back(l);
        }
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

// ── commutators and Lipschitz seminorms ───────────────────────────────────────
// [D, lambda(f)] compressed to the ball has the exact block entries
//
//   (h, h') :  f(h-h') sigma_{h-h'}^{h} ( sum_j x_j(h-h') gamma_j
//                                         + (F(h) - F(h')) gamma_{d+1} ),
//
// banded with bandwidth the support radius of f.  Entries are exact; only
// norms feel the truncation.

inline SpMat commutator_matrix(const FourierPolynomial& f, const Truncation& t) {
    if (!f.ambient().same_ambient(t.algebra))
        throw std::invalid_argument("commutator_matrix: ambient mismatch");
    if (f.support_level() > t.level())
        throw std::domain_error("commutator_matrix: support of f lies outside G_n");

    const auto& tbl = t.ball_table;
    const auto e_dim = static_cast<std::size_t>(t.fiber_dim());
    SpMat m;
    m.dim = t.hilbert_dim();
    for (const auto& [g, c] : f.support()) {
        if (g.is_zero()) continue;  // [D, lambda(0)] = 0
        Matrix x_part = Matrix::Zero(t.fiber_dim(), t.fiber_dim());
        for (int j = 0; j < t.algebra.d; ++j) {
            double xj = g.x(j);
            if (xj != 0.0) x_part += xj * t.gammas.gamma(j);
        }
        for (std::size_t col = 0; col < tbl.size(); ++col) {
            const GroupElement& hp = tbl.element(col);
            GroupElement h = hp + g;
            auto row = tbl.find(h);
            if (!row) continue;
            double df = static_cast<double>(f_weight(h) - f_weight(hp));
            Matrix block = x_part + df * t.gammas.gamma(t.algebra.d);
            cplx phase = c * sigma_shift(t.algebra, g, h);
            for (std::size_t a = 0; a < e_dim; ++a)
                for (std::size_t b = 0; b < e_dim; ++b) {
                    cplx v =
                        phase * block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                    if (v != cplx(0.0, 0.0))
                        m.entries.push_back({*row * e_dim + a, col * e_dim + b, v});
                }
        }
    }
    return m;
}

// Lip_n(f) at truncation level: the spectral norm of the compressed
// commutator.  Monotone nondecreasing in the radius and a lower bound of the
// untruncated seminorm.
inline double lip(const FourierPolynomial& f, const Truncation& t) {
    return spectral_norm(commutator_matrix(f, t));
}

// Exact seminorm of a single generator: || [D, lambda(g)] || equals
// sqrt( sum_j x_j(g)^2 + s(g)^2 ) with s = fdiff_sup, independently of Theta.
inline double lip_exact_generator(const GroupElement& g, std::optional<int> n = std::nullopt) {
    std::int64_t s = fdiff_sup(g, n);
    double acc = static_cast<double>(s) * static_cast<double>(s);
    for (int j = 0; j < g.dim(); ++j) {
        double xj = g.x(j);
        acc += xj * xj;
    }
    return std::sqrt(acc);
}

// Triangle-inequality bound: sum_g |f(g)| lip_exact_generator(g).  Together
// with lip(f, t) this brackets the true seminorm from both sides.
inline double lip_upper_bound(const FourierPolynomial& f) {
    double acc = 0.0;
    for (const auto& [g, c] : f.support()) acc += std::abs(c) * lip_exact_generator(g);
    return acc;
}

// ── coset-block seminorm comparison ───────────────────────────────────────────
// For f supported in G_n viewed inside a proxy level m > n, the commutator is
// exactly block diagonal over the cosets k + G_n; the norm over the full ball
// is the max of the per-coset block norms, and each nonzero-coset block norm
// is bounded by the k = 0 block norm.  This is the finite-level form of the
// equality Lip_n = Lip_m.

struct LipEqualityReport {
    double k0_norm = 0.0;
    double max_coset_norm = 0.0;  // over k != 0
    double full_norm = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::vector<double> coset_norms;  // aligned with the transversal order
};

namespace detail {

// Extract the sub-block of m on the given group-point indices.
inline Matrix subblock(const SpMat& m, const std::vector<std::size_t>& pts, std::size_t e_dim) {
    std::vector<std::ptrdiff_t> where(m.dim / e_dim, -1);
    for (std::size_t i = 0; i < pts.size(); ++i) where[pts[i]] = static_cast<std::ptrdiff_t>(i);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(pts.size() * e_dim),
                              static_cast<Eigen::Index>(pts.size() * e_dim));
    for (const auto& e : m.entries) {
        auto r = where[e.row / e_dim];
        auto c = where[e.col / e_dim];
        if (r < 0 || c < 0) continue;
        out(static_cast<Eigen::Index>(static_cast<std::size_t>(r) * e_dim + e.row % e_dim),
            static_cast<Eigen::Index>(static_cast<std::size_t>(c) * e_dim + e.col % e_dim)) +=
            e.value;
    }
    return out;
}

}  // namespace detail

inline LipEqualityReport lip_equality_check(const FourierPolynomial& f, int n, int m,
                                            double radius, double tol = 1e-9,
                                            std::size_t cap = kDefaultBallCap) {
    if (f.support_level() > n)
        throw std::domain_error("lip_equality_check: support of f lies outside G_n");
    Truncation t(f.ambient(), m, radius, cap);
    SpMat comm = commutator_matrix(f, t);
    const auto e_dim = static_cast<std::size_t>(t.fiber_dim());

    auto reps = coset_representatives(f.ambient().p, f.ambient().d, m, n, cap);
    // Assign each ball point to its coset: h in k + G_n iff level(h - k) <= n.
    std::vector<std::vector<std::size_t>> blocks(reps.size());
    std::vector<std::size_t> coset_of(t.points());
    for (std::size_t i = 0; i < t.points(); ++i) {
        const GroupElement& h = t.ball_table.element(i);
        bool placed = false;
        for (std::size_t k = 0; k < reps.size(); ++k) {
            if (level(h - reps[k]) <= n) {
                blocks[k].push_back(i);
                coset_of[i] = k;
                placed = true;
                break;
            }
        }
        if (!placed) throw std::logic_error("lip_equality_check: transversal does not cover");
    }
    // The commutator must respect the coset decomposition entrywise; with that
    // verified, the full norm is the max of the block norms (the blocks are
    // independent tasks, merged by max).
    for (const auto& e : comm.entries)
        if (coset_of[e.row / e_dim] != coset_of[e.col / e_dim])
            throw std::logic_error("lip_equality_check: commutator mixes cosets");

    std::vector<std::size_t> block_ids(reps.size());
    std::iota(block_ids.begin(), block_ids.end(), std::size_t{0});
    std::vector<double> norms = parallel_map(block_ids, [&](const std::size_t& k) {
        return spectral_norm_dense(detail::subblock(comm, blocks[k], e_dim));
    });

    LipEqualityReport rep;
    rep.tol = tol;
    rep.coset_norms = norms;
    rep.k0_norm = norms[0];
    for (std::size_t k = 1; k < norms.size(); ++k)
        rep.max_coset_norm = std::max(rep.max_coset_norm, norms[k]);
    rep.full_norm = std::max(rep.k0_norm, rep.max_coset_norm);
    rep.pass = rep.max_coset_norm <= rep.k0_norm + tol &&
               std::abs(rep.full_norm - rep.k0_norm) <= tol;
    return rep;
}

// Diagonal unitary implementing the dual action: (v^z xi)(g) = conj(z(g)) xi(g)
// for the character z(g) = exp(2 pi i <t, g>).  Commutes with D exactly.
inline SpMat dual_action_unitary(const Truncation& t, const Eigen::VectorXd& char_vector) {
    if (char_vector.size() != t.algebra.d)
        throw std::invalid_argument("dual_action_unitary: character vector has wrong dimension");
    const auto e_dim = static_cast<std::size_t>(t.fiber_dim());
    SpMat m;
    m.dim = t.hilbert_dim();
    for (std::size_t i = 0; i < t.points(); ++i) {
        const GroupElement& g = t.ball_table.element(i);
        double phase = 0.0;
        for (int j = 0; j < t.algebra.d; ++j) phase += char_vector[j] * g.x(j);
        cplx v = std::polar(1.0, -2.0 * M_PI * phase);
        for (std::size_t q = 0; q < e_dim; ++q)
            m.entries.push_back({i * e_dim + q, i * e_dim + q, v});
    }
    return m;
}

}  // namespace solenoid
