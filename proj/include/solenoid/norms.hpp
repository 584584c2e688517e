#pragma once

#include <Eigen/Dense>

#include "solenoid/twisted.hpp"

namespace solenoid {

inline constexpr std::size_t kDenseNormThreshold = 1600;

// Operator norm of a dense matrix.  Hermitian and skew-Hermitian inputs go
// through a direct Hermitian eigensolve; everything else through M*M.
inline double spectral_norm_dense(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    const double sym_tol = 1e-13 * scale;
    if ((m - m.adjoint().eval()).cwiseAbs().maxCoeff() < sym_tol) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw solver_error("dense eigensolve failed", 0.0);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    if ((m + m.adjoint().eval()).cwiseAbs().maxCoeff() < sym_tol) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(cplx(0.0, 1.0) * m, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw solver_error("dense eigensolve failed", 0.0);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw solver_error("dense eigensolve failed", 0.0);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

// Power iteration on M*M for truncations above the dense threshold.  Stops on
// a certified relative residual ||M*M v - s^2 v|| < tol * s^2.
inline double spectral_norm_power(const SpMat& m, double tol = 1e-10,
                                  std::size_t max_iter = 20000) {
    if (m.dim == 0 || m.entries.empty()) return 0.0;
    Rng rng(0x5eedULL);
    Vector v(static_cast<Eigen::Index>(m.dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(rng.normal(), rng.normal());
    v.normalize();

    double lambda = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        Vector w = m.apply_adjoint(m.apply(v));
        lambda = std::real(v.dot(w));
        double residual = (w - lambda * v).norm();
        if (residual <= tol * std::max(lambda, 1e-300)) return std::sqrt(std::max(0.0, lambda));
        v = w / w.norm();
    }
    throw solver_error("power iteration did not reach the requested residual",
                       std::sqrt(std::max(0.0, lambda)));
}

inline double spectral_norm(const SpMat& m) {
    if (m.dim <= kDenseNormThreshold) return spectral_norm_dense(m.dense());
    return spectral_norm_power(m);
}

}  // namespace solenoid
