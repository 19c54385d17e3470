#pragma once

// Contraction validation and defect operators D_T = (I − T*T)^{1/2} with
// their defect spaces (closure of range D_T).

#include <cmath>
#include <utility>
#include <vector>

#include "kreg/matrix.hpp"

namespace kreg {

enum class Side { domain, codomain };

struct Contraction {
    ComplexMatrix matrix;  // m × n
    double norm = 0.0;     // cached operator norm

    Index rows() const { return matrix.rows(); }
    Index cols() const { return matrix.cols(); }
};

// Validates ‖T‖ ≤ 1 + contraction_tol.  `index` is a 1-based factor position
// used in diagnostics (0 = standalone operator).
inline Contraction make_contraction(ComplexMatrix m, const ToleranceProfile& tol = {},
                                    int index = 0) {
    require_finite(m);
    if (m.rows() == 0 || m.cols() == 0) throw InvalidMatrix("contraction must be nonempty");
    const double norm = operator_norm(m);
    if (norm > 1.0 + tol.contraction_tol) throw NotContraction(index, norm);
    return {std::move(m), norm};
}

// Orthonormal basis of a defect space together with the preimage map used to
// tabulate canonical isometries columnwise: basis column v_j is an eigenvector
// of the defect operator D with D v_j = mu_j v_j, and preimages column
// h_j = v_j / mu_j satisfies D h_j = v_j.
struct DefectSpace {
    Index ambient_dim = 0;
    ComplexMatrix basis;      // ambient_dim × dim, orthonormal columns
    Index dim = 0;
    RealVector mu;            // singular values of D on the basis, descending
    ComplexMatrix preimages;  // ambient_dim × dim
};

namespace detail {

// I − T*T (domain) or I − TT* (codomain), before the square root.
inline ComplexMatrix defect_gram(const Contraction& t, Side side) {
    const ComplexMatrix& m = t.matrix;
    if (side == Side::domain)
        return ComplexMatrix(ComplexMatrix::Identity(m.cols(), m.cols()) - m.adjoint() * m);
    return ComplexMatrix(ComplexMatrix::Identity(m.rows(), m.rows()) - m * m.adjoint());
}

// Slack for defect grams of contractions whose norm may exceed 1 within
// contraction_tol: the most negative exact eigenvalue is 1 − ‖T‖².
inline double defect_clip_slack(const Contraction& t) {
    return std::max(0.0, t.norm * t.norm - 1.0);
}

}  // namespace detail

inline ComplexMatrix defect_operator(const Contraction& t, Side side,
                                     const ToleranceProfile& tol = {}) {
    return psd_sqrt(detail::defect_gram(t, side), tol, detail::defect_clip_slack(t));
}

// Basis taken from the eigendecomposition of I − T*T directly (one rounding
// layer instead of two); eigenvalue lambda of the gram gives mu = sqrt(lambda)
// for D_T.  Significant directions: lambda > rank_tol·max(lambda_max, 1).
inline DefectSpace defect_space(const Contraction& t, Side side,
                                const ToleranceProfile& tol = {}) {
    const ComplexMatrix gram = detail::defect_gram(t, side);
    const Index n = gram.rows();
    const double slack = detail::defect_clip_slack(t);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(0.5 * (gram + gram.adjoint())));
    if (es.info() != Eigen::Success) throw NumericalBreakdown("Hermitian eigendecomposition failed");
    const RealVector& lambda = es.eigenvalues();  // ascending
    const double lambda_max = n > 0 ? std::max(lambda(n - 1), 0.0) : 0.0;
    const double clip = tol.rank_tol * std::max(operator_norm(gram), 1.0) + slack;
    const double cutoff = rank_cutoff(lambda_max, tol.rank_tol);

    DefectSpace space;
    space.ambient_dim = n;
    Index dim = 0;
    for (Index i = 0; i < n; ++i) {
        if (lambda(i) < -clip)
            throw NotPSD("defect gram eigenvalue " + std::to_string(lambda(i)) + " below -" +
                         std::to_string(clip));
        if (lambda(i) > cutoff) ++dim;
    }
    space.dim = dim;
    space.basis.resize(n, dim);
    space.mu.resize(dim);
    // Descending eigenvalue order, but stable under exact ties so that
    // coordinate bases of degenerate defects keep their natural order.
    std::vector<Index> order;
    for (Index i = n - dim; i < n; ++i) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return lambda(a) > lambda(b); });
    for (Index j = 0; j < dim; ++j) {
        space.basis.col(j) = es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
        space.mu(j) = std::sqrt(lambda(order[static_cast<std::size_t>(j)]));
    }
    phase_normalize_columns(space.basis);
    space.preimages = space.basis * space.mu.cwiseInverse().asDiagonal();
    return space;
}

}  // namespace kreg
