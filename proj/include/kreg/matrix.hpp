#pragma once

// Dense complex linear algebra substrate: operator norms, PSD square roots,
// orthonormal range bases and unitarity defects, all tolerance-parameterized.

#include <algorithm>
#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "kreg/errors.hpp"

namespace kreg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct ToleranceProfile {
    double rank_tol = 1e-10;
    double unitary_tol = 1e-8;
    double contraction_tol = 1e-8;
    double commute_tol = 1e-10;

    bool valid() const {
        auto ok = [](double t) { return t > 0.0 && t < 1.0; };
        return ok(rank_tol) && ok(unitary_tol) && ok(contraction_tol) && ok(commute_tol);
    }
};

inline void require_finite(const ComplexMatrix& m) {
    if (!m.allFinite()) throw InvalidMatrix("matrix has non-finite entries");
}

// Largest singular value; 0 for empty matrices.
inline double operator_norm(const ComplexMatrix& m) {
    require_finite(m);
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

struct UnitarityDefect {
    double left;   // ‖M*M − I‖
    double right;  // ‖MM* − I‖
};

inline UnitarityDefect unitarity_defect(const ComplexMatrix& m) {
    require_finite(m);
    ComplexMatrix gram_left = m.adjoint() * m;
    gram_left -= ComplexMatrix::Identity(m.cols(), m.cols());
    ComplexMatrix gram_right = m * m.adjoint();
    gram_right -= ComplexMatrix::Identity(m.rows(), m.rows());
    return {operator_norm(gram_left), operator_norm(gram_right)};
}

// Rotates each column so its largest-magnitude entry is real positive.
// A rephased orthonormal basis is still orthonormal and spans the same space;
// this pins down the bases that eigensolvers only determine up to phase.
inline void phase_normalize_columns(ComplexMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j) {
        Index imax = 0;
        m.col(j).cwiseAbs().maxCoeff(&imax);
        const Complex pivot = m(imax, j);
        const double mag = std::abs(pivot);
        if (mag > 0.0) m.col(j) *= std::conj(pivot) / mag;
    }
}

// Significance cutoff for singular/eigenvalues: relative to the largest one,
// with a unit absolute floor so that numerically-zero matrices (defects of
// isometries) get rank 0 instead of full rank.
inline double rank_cutoff(double sigma_max, double rank_tol) {
    return rank_tol * std::max(sigma_max, 1.0);
}

// Hermitian PSD square root via eigendecomposition.  Eigenvalues in
// [−clip, clip] are flushed to 0 where clip = rank_tol·max(‖H‖,1) + extra_clip;
// anything below −clip throws NotPSD.  Flushing the positive side too keeps
// S·S within clip of H while preventing noise-floor eigenvalues from
// surfacing as √noise ≈ 1e−8 entries in S.  extra_clip widens the window for
// callers that know how indefinite their input may legitimately be
// (defect operators of contractions with norm slightly above 1).
inline ComplexMatrix psd_sqrt(const ComplexMatrix& h, const ToleranceProfile& tol = {},
                              double extra_clip = 0.0) {
    require_finite(h);
    if (h.rows() != h.cols()) throw NotHermitian("matrix is not square");
    if (h.rows() == 0) return h;
    const double hnorm = operator_norm(h);
    const double herm_defect = operator_norm(ComplexMatrix(h - h.adjoint()));
    if (herm_defect > tol.unitary_tol * std::max(hnorm, 1.0))
        throw NotHermitian("matrix is not Hermitian (defect " + std::to_string(herm_defect) + ")");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(0.5 * (h + h.adjoint())));
    if (es.info() != Eigen::Success) throw NumericalBreakdown("Hermitian eigendecomposition failed");

    const double clip = tol.rank_tol * std::max(hnorm, 1.0) + extra_clip;
    RealVector lambda = es.eigenvalues();
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < -clip)
            throw NotPSD("eigenvalue " + std::to_string(lambda(i)) + " below -" + std::to_string(clip));
        if (lambda(i) <= clip) lambda(i) = 0.0;
    }
    ComplexMatrix s = es.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
                      es.eigenvectors().adjoint();
    return ComplexMatrix(0.5 * (s + s.adjoint()));
}

struct RangeBasis {
    ComplexMatrix basis;  // rows(M) × rank, orthonormal columns
    Index rank;
};

// Orthonormal basis of the numerical range: left singular vectors with
// σ > rank_tol·max(σ_max, 1).  Rank 0 yields an empty basis with the
// ambient row count preserved.
inline RangeBasis orthonormal_range_basis(const ComplexMatrix& m, const ToleranceProfile& tol = {}) {
    require_finite(m);
    if (m.rows() == 0 || m.cols() == 0) return {ComplexMatrix(m.rows(), 0), 0};
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    const RealVector& sigma = svd.singularValues();
    const double cutoff = rank_cutoff(sigma(0), tol.rank_tol);
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    ComplexMatrix basis = svd.matrixU().leftCols(rank);
    phase_normalize_columns(basis);
    return {std::move(basis), rank};
}

}  // namespace kreg
