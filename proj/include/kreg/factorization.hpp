#pragma once

// Factorization chains A = A_k⋯A_1, the canonical isometry Z_k from the
// product defect space onto the direct sum of factor defect spaces, and the
// full battery of k-regularity criteria with cross-checking.

#include <string>
#include <utility>
#include <vector>

#include "kreg/defect.hpp"

namespace kreg {

struct FactorizationChain {
    std::vector<Contraction> factors;  // A_1 … A_k, A_i maps H_i -> H_{i+1}
    int k = 0;
    Contraction product;               // A_k ⋯ A_1
    DefectSpace product_defect;        // domain defect space of the product
    std::vector<DefectSpace> factor_defects;  // domain defect space of each A_i
    ToleranceProfile tol;
};

// Cut points 1 ≤ j_1 < … < j_r = k (1-based, inclusive block ends); block
// J_i = {j_{i-1}+1, …, j_i}.
struct Partition {
    std::vector<int> cut_points;
};

struct RegularityReport {
    ComplexMatrix z_matrix;
    double isometry_defect = 0.0;  // ‖Z*Z − I‖, ≤ unitary_tol by construction
    double unitarity_defect_left = 0.0;
    double unitarity_defect_right = 0.0;
    Index dim_product = 0;
    Index dim_sum = 0;
    std::vector<Index> factor_dims;
    bool verdict_unitary = false;
    bool verdict_dimension = false;
    bool verdict_cascade = false;
    bool verdict_intersection = false;
    bool consistent = false;

    bool regular() const { return verdict_unitary; }
};

namespace detail {

// Internal products of validated contractions skip re-validation; the defect
// machinery absorbs norms marginally above 1 through its clip slack.
inline Contraction as_contraction(ComplexMatrix m) {
    const double norm = operator_norm(m);
    return {std::move(m), norm};
}

// Matrix of the canonical isometry in orthonormal defect bases.  Column j is
// the stacked coordinate vector of ⊕_{i=k}^{1} D_{A_i} A_{i-1}⋯A_1 h_j for the
// preimage h_j of the j-th domain basis vector; the factor-k block is on top.
// Uses D_i B_i = B_i diag(mu_i), so blocks are diag(mu_i)·B_i*·w.
inline ComplexMatrix tabulate_isometry(const DefectSpace& domain,
                                       const std::vector<Contraction>& factors,
                                       const std::vector<DefectSpace>& codomains) {
    Index total = 0;
    for (const DefectSpace& s : codomains) total += s.dim;
    ComplexMatrix z(total, domain.dim);
    for (Index j = 0; j < domain.dim; ++j) {
        ComplexVector w = domain.preimages.col(j);
        Index row = total;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const DefectSpace& s = codomains[i];
            row -= s.dim;
            z.block(row, j, s.dim, 1) = s.mu.asDiagonal() * (s.basis.adjoint() * w);
            w = factors[i].matrix * w;
        }
    }
    return z;
}

// Direct 2-regularity check for the pair A = a2·a1 (dimension equality plus
// two-sided unitarity of Z_2).  Kept free of RegularityReport so the cascade
// sweep cannot recurse through check_k_regular.
inline bool two_regular_core(const Contraction& a1, const Contraction& a2,
                             const ToleranceProfile& tol) {
    const Contraction product = as_contraction(a2.matrix * a1.matrix);
    const DefectSpace dp = defect_space(product, Side::domain, tol);
    const DefectSpace d1 = defect_space(a1, Side::domain, tol);
    const DefectSpace d2 = defect_space(a2, Side::domain, tol);
    if (dp.dim != d1.dim + d2.dim) return false;
    const ComplexMatrix z = tabulate_isometry(dp, {a1, a2}, {d1, d2});
    const UnitarityDefect d = unitarity_defect(z);
    return d.left <= tol.unitary_tol && d.right <= tol.unitary_tol;
}

// Dimension of the numerical intersection of two orthonormally-based
// subspaces: principal-angle cosines (singular values of U*V) above
// 1 − rank_tol count as shared directions.
inline Index intersection_dim(const ComplexMatrix& u, const ComplexMatrix& v,
                              const ToleranceProfile& tol) {
    if (u.cols() == 0 || v.cols() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(u.adjoint() * v));
    const RealVector& sigma = svd.singularValues();
    Index dim = 0;
    while (dim < sigma.size() && sigma(dim) > 1.0 - tol.rank_tol) ++dim;
    return dim;
}

}  // namespace detail

inline FactorizationChain build_chain(const std::vector<ComplexMatrix>& factors,
                                      const ToleranceProfile& tol = {}) {
    if (factors.size() < 2) throw DimensionMismatch("chain requires at least 2 factors");
    FactorizationChain chain;
    chain.tol = tol;
    chain.k = static_cast<int>(factors.size());
    for (int i = 0; i < chain.k; ++i) {
        if (i > 0 && factors[i].cols() != factors[i - 1].rows())
            throw DimensionMismatch("factor " + std::to_string(i + 1) + " expects " +
                                    std::to_string(factors[i - 1].rows()) + " columns, has " +
                                    std::to_string(factors[i].cols()));
        chain.factors.push_back(make_contraction(factors[i], tol, i + 1));
    }
    ComplexMatrix prod = chain.factors[0].matrix;
    for (int i = 1; i < chain.k; ++i) prod = chain.factors[i].matrix * prod;
    chain.product = make_contraction(std::move(prod), tol, 0);
    chain.product_defect = defect_space(chain.product, Side::domain, tol);
    for (const Contraction& f : chain.factors)
        chain.factor_defects.push_back(defect_space(f, Side::domain, tol));
    return chain;
}

inline ComplexMatrix z_matrix(const FactorizationChain& chain) {
    ComplexMatrix z =
        detail::tabulate_isometry(chain.product_defect, chain.factors, chain.factor_defects);
    const double defect = unitarity_defect(z).left;
    if (defect > chain.tol.unitary_tol)
        throw NumericalBreakdown("canonical isometry has defect " + std::to_string(defect) +
                                 "; preimages are ill-conditioned");
    return z;
}

// Corollary criterion: all two-block regroupings (A_k⋯A_{j+1})·(A_j⋯A_1)
// are 2-regular.
inline bool cascade_criterion(const FactorizationChain& chain) {
    std::vector<ComplexMatrix> suffix(chain.k);  // suffix[j] = A_k⋯A_{j+1}, 0-based j
    suffix[chain.k - 1] = chain.factors[chain.k - 1].matrix;
    for (int i = chain.k - 2; i >= 1; --i)
        suffix[i] = suffix[i + 1] * chain.factors[i].matrix;
    ComplexMatrix prefix = chain.factors[0].matrix;
    for (int j = 1; j <= chain.k - 1; ++j) {
        if (!detail::two_regular_core(detail::as_contraction(prefix),
                                      detail::as_contraction(suffix[j]), chain.tol))
            return false;
        if (j < chain.k - 1) prefix = chain.factors[j].matrix * prefix;
    }
    return true;
}

// Range-intersection criterion: for each j the ranges of D_{A_{j+1}} and of
// D_{B*} with B = A_j⋯A_1 meet only in 0.
inline bool intersection_criterion(const FactorizationChain& chain) {
    ComplexMatrix prefix = chain.factors[0].matrix;
    for (int j = 1; j <= chain.k - 1; ++j) {
        const DefectSpace codef =
            defect_space(detail::as_contraction(prefix), Side::codomain, chain.tol);
        if (detail::intersection_dim(chain.factor_defects[j].basis, codef.basis, chain.tol) > 0)
            return false;
        if (j < chain.k - 1) prefix = chain.factors[j].matrix * prefix;
    }
    return true;
}

inline RegularityReport check_k_regular(const FactorizationChain& chain) {
    RegularityReport r;
    r.z_matrix = z_matrix(chain);
    const UnitarityDefect d = unitarity_defect(r.z_matrix);
    r.isometry_defect = d.left;
    r.unitarity_defect_left = d.left;
    r.unitarity_defect_right = d.right;
    r.dim_product = chain.product_defect.dim;
    for (const DefectSpace& s : chain.factor_defects) {
        r.factor_dims.push_back(s.dim);
        r.dim_sum += s.dim;
    }
    r.verdict_dimension = (r.dim_product == r.dim_sum);
    r.verdict_unitary = r.verdict_dimension && d.left <= chain.tol.unitary_tol &&
                        d.right <= chain.tol.unitary_tol;
    r.verdict_cascade = cascade_criterion(chain);
    r.verdict_intersection = intersection_criterion(chain);
    r.consistent = r.verdict_unitary == r.verdict_dimension &&
                   r.verdict_unitary == r.verdict_cascade &&
                   r.verdict_unitary == r.verdict_intersection;
    return r;
}

inline void validate_partition(const Partition& p, int k) {
    if (p.cut_points.size() < 2)
        throw InvalidPartition("partition needs at least 2 blocks (single-block regrouping is a "
                               "1-chain, which is rejected)");
    int prev = 0;
    for (int c : p.cut_points) {
        if (c <= prev || c > k)
            throw InvalidPartition("cut points must be strictly increasing within [1," +
                                   std::to_string(k) + "]");
        prev = c;
    }
    if (p.cut_points.back() != k) throw InvalidPartition("last cut point must equal k");
}

// r-chain whose i-th factor is the product over block J_i.
inline FactorizationChain aggregate(const FactorizationChain& chain, const Partition& p) {
    validate_partition(p, chain.k);
    std::vector<ComplexMatrix> blocks;
    int lo = 0;
    for (int hi : p.cut_points) {
        ComplexMatrix prod = chain.factors[lo].matrix;
        for (int l = lo + 1; l < hi; ++l) prod = chain.factors[l].matrix * prod;
        blocks.push_back(std::move(prod));
        lo = hi;
    }
    FactorizationChain agg = build_chain(blocks, chain.tol);
    const double drift = operator_norm(ComplexMatrix(agg.product.matrix - chain.product.matrix));
    if (drift > 1e-12)
        throw NumericalBreakdown("aggregate product drifted by " + std::to_string(drift));
    return agg;
}

// ‖Z_k − (⊕_{i=r}^{1} Z_{|J_i|})·Z_r‖ with every map tabulated against shared
// defect bases: the chain's own domain and factor spaces, one space per block
// product (singleton blocks reuse the chain's factor space, so their block map
// is the identity).
inline double verify_partition_identity(const FactorizationChain& chain, const Partition& p,
                                        const ToleranceProfile& tol = {}) {
    validate_partition(p, chain.k);
    const int r = static_cast<int>(p.cut_points.size());
    std::vector<Contraction> blocks;
    std::vector<DefectSpace> block_spaces;
    std::vector<std::pair<int, int>> ranges;  // 0-based [lo, hi) factor indices
    int lo = 0;
    for (int hi : p.cut_points) {
        ComplexMatrix prod = chain.factors[lo].matrix;
        for (int l = lo + 1; l < hi; ++l) prod = chain.factors[l].matrix * prod;
        Contraction b = detail::as_contraction(std::move(prod));
        block_spaces.push_back(hi - lo == 1 ? chain.factor_defects[lo]
                                            : defect_space(b, Side::domain, tol));
        blocks.push_back(std::move(b));
        ranges.emplace_back(lo, hi);
        lo = hi;
    }

    const ComplexMatrix zk =
        detail::tabulate_isometry(chain.product_defect, chain.factors, chain.factor_defects);
    const ComplexMatrix zr =
        detail::tabulate_isometry(chain.product_defect, blocks, block_spaces);

    ComplexMatrix blockdiag = ComplexMatrix::Zero(zk.rows(), zr.rows());
    Index row = 0, col = 0;
    for (int i = r - 1; i >= 0; --i) {
        std::vector<Contraction> sub(chain.factors.begin() + ranges[i].first,
                                     chain.factors.begin() + ranges[i].second);
        std::vector<DefectSpace> subspaces(chain.factor_defects.begin() + ranges[i].first,
                                           chain.factor_defects.begin() + ranges[i].second);
        const ComplexMatrix zb = detail::tabulate_isometry(block_spaces[i], sub, subspaces);
        blockdiag.block(row, col, zb.rows(), zb.cols()) = zb;
        row += zb.rows();
        col += zb.cols();
    }
    return operator_norm(ComplexMatrix(zk - blockdiag * zr));
}

// A* = A_1*⋯A_k* as the chain (A_k*, …, A_1*).
inline FactorizationChain adjoint_chain(const FactorizationChain& chain) {
    std::vector<ComplexMatrix> adj;
    for (int i = chain.k - 1; i >= 0; --i) adj.push_back(chain.factors[i].matrix.adjoint());
    return build_chain(adj, chain.tol);
}

// All partitions of a k-chain into at least two blocks.
inline std::vector<Partition> all_partitions(int k) {
    std::vector<Partition> out;
    for (unsigned mask = 0; mask + 1 < (1u << (k - 1)); ++mask) {
        Partition p;
        for (int c = 1; c < k; ++c)
            if (!(mask & (1u << (c - 1)))) p.cut_points.push_back(c);
        p.cut_points.push_back(k);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace kreg
