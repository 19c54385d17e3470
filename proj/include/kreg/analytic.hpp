#pragma once

// Matrix-polynomial analytic functions on the closed unit disk,
// characteristic-function evaluation in defect bases, boundary defect
// operators, and grid-sampled pointwise regularity of analytic chains.

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "kreg/factorization.hpp"

namespace kreg {

// Θ(z) = Σ_{j=0}^{d} z^j C_j, coefficients lowest degree first, all m×n.
struct MatrixPolynomial {
    std::vector<ComplexMatrix> coeffs;

    Index rows() const { return coeffs.front().rows(); }
    Index cols() const { return coeffs.front().cols(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct BoundaryGrid {
    int n_samples;

    std::vector<double> points() const {
        std::vector<double> t(n_samples);
        for (int j = 0; j < n_samples; ++j)
            t[j] = 2.0 * std::numbers::pi * j / n_samples;
        return t;
    }
};

inline BoundaryGrid make_grid(int n_samples) {
    if (n_samples < 1) throw InvalidArgument("boundary grid needs at least 1 sample");
    return {n_samples};
}

inline ComplexMatrix eval(const MatrixPolynomial& p, Complex z) {
    if (std::abs(z) > 1.0 + 1e-12)
        throw OutsideClosedDisk("|z| = " + std::to_string(std::abs(z)) + " exceeds 1");
    ComplexMatrix result = p.coeffs.back();
    for (int j = p.degree() - 1; j >= 0; --j)
        result = z * result + p.coeffs[static_cast<std::size_t>(j)];
    return result;
}

// Contractivity is validated on a boundary grid only (maximum-principle
// proxy); the default density matches the sampled-regularity default.
inline MatrixPolynomial make_polynomial(std::vector<ComplexMatrix> coeffs,
                                        const ToleranceProfile& tol = {},
                                        int boundary_samples = 256) {
    if (coeffs.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
    for (const ComplexMatrix& c : coeffs) {
        require_finite(c);
        if (c.rows() != coeffs.front().rows() || c.cols() != coeffs.front().cols())
            throw DimensionMismatch("polynomial coefficients must share dimensions");
        if (c.rows() == 0 || c.cols() == 0)
            throw InvalidMatrix("polynomial coefficients must be nonempty");
    }
    MatrixPolynomial p{std::move(coeffs)};
    for (double t : make_grid(boundary_samples).points()) {
        const double norm = operator_norm(eval(p, std::polar(1.0, t)));
        if (norm > 1.0 + tol.contraction_tol) throw NotContraction(0, norm, t);
    }
    return p;
}

// (a·b)(z) = a(z)·b(z) by coefficient convolution.
inline MatrixPolynomial poly_mul(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("polynomial product dimension mismatch");
    std::vector<ComplexMatrix> coeffs(a.coeffs.size() + b.coeffs.size() - 1,
                                      ComplexMatrix::Zero(a.rows(), b.cols()));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return {std::move(coeffs)};
}

struct AnalyticChain {
    std::vector<MatrixPolynomial> factors;  // Θ_1 … Θ_k
    MatrixPolynomial product;               // Θ_k ⋯ Θ_1
    ToleranceProfile tol;
};

inline AnalyticChain make_analytic_chain(std::vector<MatrixPolynomial> factors,
                                         const ToleranceProfile& tol = {},
                                         const MatrixPolynomial* expected_product = nullptr) {
    if (factors.size() < 2) throw DimensionMismatch("analytic chain requires at least 2 factors");
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i].cols() != factors[i - 1].rows())
            throw DimensionMismatch("analytic factor " + std::to_string(i + 1) +
                                    " has incompatible dimensions");
    MatrixPolynomial product = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) product = poly_mul(factors[i], product);
    if (expected_product != nullptr) {
        if (expected_product->rows() != product.rows() || expected_product->cols() != product.cols())
            throw DimensionMismatch("supplied product has incompatible dimensions");
        const std::size_t terms = std::max(product.coeffs.size(), expected_product->coeffs.size());
        for (std::size_t j = 0; j < terms; ++j) {
            const ComplexMatrix zero = ComplexMatrix::Zero(product.rows(), product.cols());
            const ComplexMatrix& lhs = j < product.coeffs.size() ? product.coeffs[j] : zero;
            const ComplexMatrix& rhs =
                j < expected_product->coeffs.size() ? expected_product->coeffs[j] : zero;
            if (operator_norm(ComplexMatrix(lhs - rhs)) > 1e-12)
                throw InvalidArgument("factor product differs from the supplied product at degree " +
                                      std::to_string(j));
        }
    }
    return {std::move(factors), std::move(product), tol};
}

// Matrix of Θ_T(z) = (−T + zD_{T*}(I − zT*)^{-1}D_T)|_{D_T} in the
// orthonormal defect bases, mapping the domain defect space into the
// codomain one.
inline ComplexMatrix char_fn(const Contraction& t, Complex z, const ToleranceProfile& tol = {}) {
    if (t.rows() != t.cols()) throw DimensionMismatch("characteristic function needs a square operator");
    if (std::abs(z) >= 1.0)
        throw OutsideClosedDisk("characteristic function requires |z| < 1, got |z| = " +
                                std::to_string(std::abs(z)));
    const ComplexMatrix& m = t.matrix;
    const Index n = m.rows();
    const ComplexMatrix resolvent_base = ComplexMatrix::Identity(n, n) - z * m.adjoint();
    Eigen::JacobiSVD<ComplexMatrix> svd(resolvent_base);
    const RealVector& sigma = svd.singularValues();
    if (sigma(n - 1) <= 0.0 || sigma(0) / sigma(n - 1) > 1.0 / tol.rank_tol)
        throw SingularResolvent("I − zT* has condition number beyond 1/rank_tol");

    const ComplexMatrix d_domain = defect_operator(t, Side::domain, tol);
    const ComplexMatrix d_codomain = defect_operator(t, Side::codomain, tol);
    const ComplexMatrix theta =
        -m + z * d_codomain * resolvent_base.partialPivLu().solve(d_domain);
    const DefectSpace dom = defect_space(t, Side::domain, tol);
    const DefectSpace codom = defect_space(t, Side::codomain, tol);
    return ComplexMatrix(codom.basis.adjoint() * theta * dom.basis);
}

// Δ_Θ(t) = (I − Θ*(e^{it})Θ(e^{it}))^{1/2} (domain) or the * variant.
inline ComplexMatrix boundary_defect(const MatrixPolynomial& p, double t, Side side,
                                     const ToleranceProfile& tol = {}) {
    const ComplexMatrix value = eval(p, std::polar(1.0, t));
    const Contraction frozen = detail::as_contraction(value);
    return psd_sqrt(detail::defect_gram(frozen, side), tol, detail::defect_clip_slack(frozen));
}

// Finite-dimensional regularity of the frozen matrix chain Θ_i(e^{it}).
inline RegularityReport pointwise_regularity(const AnalyticChain& ac, double t,
                                             const ToleranceProfile& tol = {}) {
    std::vector<ComplexMatrix> frozen;
    for (std::size_t i = 0; i < ac.factors.size(); ++i) {
        ComplexMatrix value = eval(ac.factors[i], std::polar(1.0, t));
        const double norm = operator_norm(value);
        if (norm > 1.0 + tol.contraction_tol)
            throw NotContraction(static_cast<int>(i + 1), norm, t);
        frozen.push_back(std::move(value));
    }
    return check_k_regular(build_chain(frozen, tol));
}

struct SampledVerdict {
    bool verdict = false;
    std::vector<double> failures;
};

// Uniform-grid proxy for the almost-everywhere pointwise criterion; results
// are sampled evidence, not a proof, and reports label them SAMPLED.
inline SampledVerdict sampled_regularity(const AnalyticChain& ac, const BoundaryGrid& grid,
                                         const ToleranceProfile& tol = {}) {
    SampledVerdict out;
    for (double t : grid.points())
        if (!pointwise_regularity(ac, t, tol).regular()) out.failures.push_back(t);
    out.verdict = out.failures.empty();
    return out;
}

// ‖Θ(0)e‖ < ‖e‖ for all nonzero e, i.e. the largest singular value of the
// constant coefficient stays strictly below 1.
inline bool purely_contractive_check(const MatrixPolynomial& p, const ToleranceProfile& tol = {}) {
    return operator_norm(p.coeffs.front()) < 1.0 - tol.rank_tol;
}

}  // namespace kreg
