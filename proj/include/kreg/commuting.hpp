#pragma once

// Commuting k-tuples of contractions, per-permutation factorization chains,
// and symmetric k-regularity decisions with the finite-dimensional shortcut.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "kreg/factorization.hpp"

namespace kreg {

struct CommutingTuple {
    std::vector<Contraction> operators;  // T_1 … T_k, square on a common space
    int k = 0;
    Index n = 0;
    Contraction product;  // T_1 T_2 ⋯ T_k
    ToleranceProfile tol;
};

struct SymmetricReport {
    Index product_defect_dim = 0;
    std::vector<Index> per_factor_defect_dims;
    // Permutations as 1-based image lists, in evaluation order.
    std::vector<std::pair<std::vector<int>, RegularityReport>> per_permutation;
    bool verdict = false;
    bool shortcut_used = false;
};

namespace detail {

inline ComplexMatrix ordered_product(const CommutingTuple& t, const std::vector<int>& sigma) {
    ComplexMatrix prod = t.operators[static_cast<std::size_t>(sigma.front() - 1)].matrix;
    for (std::size_t r = 1; r < sigma.size(); ++r)
        prod *= t.operators[static_cast<std::size_t>(sigma[r] - 1)].matrix;
    return prod;
}

}  // namespace detail

inline CommutingTuple validate_tuple(const std::vector<ComplexMatrix>& ops,
                                     const ToleranceProfile& tol = {}) {
    if (ops.size() < 2) throw DimensionMismatch("tuple requires at least 2 operators");
    CommutingTuple t;
    t.tol = tol;
    t.k = static_cast<int>(ops.size());
    t.n = ops.front().rows();
    for (int i = 0; i < t.k; ++i) {
        if (ops[i].rows() != ops[i].cols() || ops[i].rows() != t.n)
            throw DimensionMismatch("operator " + std::to_string(i + 1) +
                                    " is not square on the common space");
        t.operators.push_back(make_contraction(ops[i], tol, i + 1));
    }
    for (int i = 0; i < t.k; ++i) {
        for (int j = i + 1; j < t.k; ++j) {
            const double comm = operator_norm(ComplexMatrix(
                t.operators[i].matrix * t.operators[j].matrix -
                t.operators[j].matrix * t.operators[i].matrix));
            if (comm > tol.commute_tol) throw NotCommuting(i + 1, j + 1, comm);
        }
    }
    std::vector<int> identity(t.k);
    std::iota(identity.begin(), identity.end(), 1);
    t.product = make_contraction(detail::ordered_product(t, identity), tol, 0);

    // Spot-check that the ordered product really is permutation-independent.
    std::mt19937 rng(0x5eed);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<int> sigma = identity;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        const double drift = operator_norm(
            ComplexMatrix(detail::ordered_product(t, sigma) - t.product.matrix));
        if (drift > 1e-10)
            throw NumericalBreakdown("ordered product varies across permutations by " +
                                     std::to_string(drift));
    }
    return t;
}

// Chain for T_σ = T_{σ(1)}⋯T_{σ(k)}: the rightmost factor is applied first,
// so the chain is (A_1, …, A_k) = (T_{σ(k)}, …, T_{σ(1)}).
inline FactorizationChain chain_for_permutation(const CommutingTuple& t,
                                                const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != t.k)
        throw InvalidPermutation("permutation has wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(t.k), false);
    for (int v : sigma) {
        if (v < 1 || v > t.k || seen[static_cast<std::size_t>(v - 1)])
            throw InvalidPermutation("not a permutation of 1.." + std::to_string(t.k));
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    std::vector<ComplexMatrix> factors;
    for (int r = t.k - 1; r >= 0; --r)
        factors.push_back(t.operators[static_cast<std::size_t>(sigma[static_cast<std::size_t>(r)] - 1)].matrix);
    return build_chain(factors, t.tol);
}

// Symmetric k-regularity: regular under every ordering.  With the shortcut,
// one permutation decides: defect spaces here are always finite-dimensional,
// so one regular ordering makes every ordering regular, and a failing
// ordering refutes symmetry by definition.  The failing case still enumerates
// the full table when k stays within the cap.  An explicit tolerance profile
// overrides the one the tuple was validated with.
inline SymmetricReport symmetric_k_regular(const CommutingTuple& t, bool use_shortcut,
                                           std::optional<ToleranceProfile> tol_override = {},
                                           int max_k = 8) {
    CommutingTuple working = t;
    working.tol = tol_override.value_or(t.tol);

    SymmetricReport report;
    report.product_defect_dim = defect_space(working.product, Side::domain, working.tol).dim;
    for (const Contraction& op : working.operators)
        report.per_factor_defect_dims.push_back(defect_space(op, Side::domain, working.tol).dim);

    std::vector<int> identity(static_cast<std::size_t>(working.k));
    std::iota(identity.begin(), identity.end(), 1);
    bool evaluated_identity = false;

    if (use_shortcut) {
        RegularityReport first = check_k_regular(chain_for_permutation(working, identity));
        const bool regular = first.regular();
        report.per_permutation.emplace_back(identity, std::move(first));
        report.verdict = regular;
        evaluated_identity = true;
        if (regular || working.k > max_k) {
            report.shortcut_used = true;
            return report;
        }
        // Fall through to record the remaining orderings.
    } else if (working.k > max_k) {
        throw PermutationExplosion("k = " + std::to_string(working.k) + " exceeds the cap " +
                                   std::to_string(max_k) + "; enable the shortcut or raise --max-k");
    }

    std::vector<int> sigma = identity;
    bool all_regular = report.verdict || !evaluated_identity;
    do {
        if (evaluated_identity && sigma == identity) continue;
        RegularityReport r = check_k_regular(chain_for_permutation(working, sigma));
        all_regular = all_regular && r.regular();
        report.per_permutation.emplace_back(sigma, std::move(r));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    report.verdict = all_regular;
    report.shortcut_used = false;
    return report;
}

}  // namespace kreg
