#pragma once

#include <Eigen/Dense>

#include "solenoid/common.hpp"

namespace solenoid {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// ── GammaSet ──────────────────────────────────────────────────────────────────
// d+1 anticommuting Hermitian unitaries on the Hermitian space E, realized by
// the Pauli-chain representation on m = floor((d+1)/2) qubit factors:
//
//   gamma_{2k-1} = Z^(k-1) (x) X (x) 1...,   gamma_{2k} = Z^(k-1) (x) Y (x) 1...
//
// and, when d+1 is odd, gamma_{d+1} = Z^(x)m.  All entries are exact 0, +-1,
// +-i, and dim E = 2^floor((d+1)/2) is the minimal representation dimension.

struct GammaSet {
    int d = 0;
    int dim = 0;                 // dim E
    std::vector<Matrix> gammas;  // d+1 matrices, each dim x dim

    const Matrix& gamma(int i) const { return gammas[static_cast<std::size_t>(i)]; }
};

namespace detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix pauli(char which) {
    Matrix m(2, 2);
    const cplx I(0.0, 1.0);
    switch (which) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -I, I, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m.setIdentity(); break;
    }
    return m;
}

// Chain Z^(pos) (x) P (x) 1^(m-pos-1) over m qubit factors.
inline Matrix pauli_chain(int m, int pos, char which) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = 0; q < m; ++q) {
        char factor = q < pos ? 'Z' : (q == pos ? which : '1');
        out = kron(out, pauli(factor));
    }
    return out;
}

}  // namespace detail

inline GammaSet build_gammas(int d, int max_d = 16) {
    if (d < 1) throw std::invalid_argument("build_gammas: d must be >= 1");
    if (d > max_d) throw resource_error("build_gammas: d exceeds configured matrix cap");

    int count = d + 1;
    int m = count / 2;  // qubit factors; one extra generator fits when count is odd

    GammaSet set;
    set.d = d;
    set.dim = 1 << m;
    set.gammas.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < m; ++k) {
        set.gammas.push_back(detail::pauli_chain(m, k, 'X'));
        set.gammas.push_back(detail::pauli_chain(m, k, 'Y'));
    }
    if (count % 2 == 1) set.gammas.push_back(detail::pauli_chain(m, m, 'Z'));
    return set;
}

struct CliffordReport {
    double max_anticommutation_dev = 0.0;  // max |{g_i, g_j} - 2 delta_ij|
    double max_hermiticity_dev = 0.0;      // max |g - g*|
    double max_unitarity_dev = 0.0;        // max |g^2 - 1|
    bool pass = false;
    double tol = 0.0;
};

inline CliffordReport verify_clifford(const GammaSet& set, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("verify_clifford: tol must be > 0");
    CliffordReport rep;
    rep.tol = tol;
    const auto n = set.gammas.size();
    Matrix id = Matrix::Identity(set.dim, set.dim);
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix& gi = set.gammas[i];
        rep.max_hermiticity_dev =
            std::max(rep.max_hermiticity_dev, (gi - gi.adjoint().eval()).cwiseAbs().maxCoeff());
        rep.max_unitarity_dev =
            std::max(rep.max_unitarity_dev, (gi * gi - id).cwiseAbs().maxCoeff());
        for (std::size_t j = 0; j < n; ++j) {
            Matrix anti = gi * set.gammas[j] + set.gammas[j] * gi;
            if (i == j) anti -= 2.0 * id;
            rep.max_anticommutation_dev =
                std::max(rep.max_anticommutation_dev, anti.cwiseAbs().maxCoeff());
        }
    }
    rep.pass = rep.max_anticommutation_dev < tol && rep.max_hermiticity_dev < tol &&
               rep.max_unitarity_dev < tol;
    return rep;
}

}  // namespace solenoid
