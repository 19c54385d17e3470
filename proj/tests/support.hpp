#pragma once

// Deterministic random generators shared by the test binaries.  All
// generators take the engine by reference so each test file controls its own
// seed and stays reproducible in isolation.

#include <random>
#include <vector>

#include <kreg/matrix.hpp>

namespace support {

using kreg::Complex;
using kreg::ComplexMatrix;
using kreg::ComplexVector;
using kreg::Index;

inline Complex gauss(std::mt19937& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    return Complex(d(rng), d(rng));
}

inline ComplexMatrix random_matrix(std::mt19937& rng, Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) m(r, c) = gauss(rng);
    return m;
}

inline ComplexVector random_vector(std::mt19937& rng, Index n) {
    ComplexVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = gauss(rng);
    return v;
}

inline ComplexVector random_unit_vector(std::mt19937& rng, Index n) {
    ComplexVector v = random_vector(rng, n);
    return v / v.norm();
}

// Norm drawn uniformly from [lo, hi]; strictly inside the ball for hi < 1.
inline ComplexMatrix random_contraction(std::mt19937& rng, Index rows, Index cols,
                                        double lo = 0.2, double hi = 0.98) {
    ComplexMatrix g = random_matrix(rng, rows, cols);
    std::uniform_real_distribution<double> target(lo, hi);
    return g * (target(rng) / kreg::operator_norm(g));
}

inline ComplexMatrix random_unitary(std::mt19937& rng, Index n) {
    const ComplexMatrix g = random_matrix(rng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    // Normalize the phase ambiguity so repeated runs agree exactly.
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

// rows >= cols columns of an orthonormal frame.
inline ComplexMatrix random_isometry(std::mt19937& rng, Index rows, Index cols) {
    const ComplexMatrix q = random_unitary(rng, rows);
    return q.leftCols(cols);
}

// Factor sizes n_0 … n_k drawn from [1, max_dim]; factor i maps C^{n_{i-1}}
// into C^{n_i}.
inline std::vector<ComplexMatrix> random_chain(std::mt19937& rng, int k, Index max_dim) {
    std::uniform_int_distribution<Index> dim(1, max_dim);
    std::vector<Index> n(static_cast<std::size_t>(k) + 1);
    for (auto& d : n) d = dim(rng);
    std::vector<ComplexMatrix> factors;
    for (int i = 1; i <= k; ++i)
        factors.push_back(random_contraction(rng, n[static_cast<std::size_t>(i)],
                                             n[static_cast<std::size_t>(i) - 1]));
    return factors;
}

// A_1 arbitrary, A_2 … A_k isometries (needs nondecreasing dimensions).
inline std::vector<ComplexMatrix> random_isometric_tail_chain(std::mt19937& rng, int k,
                                                              Index max_dim) {
    std::uniform_int_distribution<Index> dim(1, max_dim);
    std::vector<Index> n(static_cast<std::size_t>(k) + 1);
    n[0] = dim(rng);
    n[1] = dim(rng);
    for (std::size_t i = 2; i < n.size(); ++i) {
        n[i] = dim(rng);
        if (n[i] < n[i - 1]) n[i] = n[i - 1];
    }
    std::vector<ComplexMatrix> factors;
    factors.push_back(random_contraction(rng, n[1], n[0]));
    for (std::size_t i = 2; i < n.size(); ++i)
        factors.push_back(random_isometry(rng, n[i], n[i - 1]));
    return factors;
}

// A_k arbitrary, A_1 … A_{k-1} coisometries (adjoints of isometries, so the
// dimensions shrink until the last factor).
inline std::vector<ComplexMatrix> random_coisometric_head_chain(std::mt19937& rng, int k,
                                                                Index max_dim) {
    std::uniform_int_distribution<Index> dim(1, max_dim);
    std::vector<Index> n(static_cast<std::size_t>(k) + 1);
    n[0] = dim(rng);
    for (std::size_t i = 1; i + 1 < n.size(); ++i) {
        n[i] = dim(rng);
        if (n[i] > n[i - 1]) n[i] = n[i - 1];
    }
    n[static_cast<std::size_t>(k)] = dim(rng);
    std::vector<ComplexMatrix> factors;
    for (std::size_t i = 1; i + 1 < n.size(); ++i)
        factors.push_back(ComplexMatrix(random_isometry(rng, n[i - 1], n[i]).adjoint()));
    factors.push_back(random_contraction(rng, n[static_cast<std::size_t>(k)],
                                         n[static_cast<std::size_t>(k) - 1]));
    return factors;
}

// Commuting tuple built as polynomials of a single contraction, rescaled so
// every member is itself a contraction.
inline std::vector<ComplexMatrix> random_commuting_tuple(std::mt19937& rng, int k, Index n) {
    const ComplexMatrix seed = random_contraction(rng, n, n);
    std::vector<ComplexMatrix> ops;
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int i = 0; i < k; ++i) {
        ComplexMatrix p = ComplexMatrix::Identity(n, n) * Complex(coeff(rng), coeff(rng));
        ComplexMatrix power = ComplexMatrix::Identity(n, n);
        for (int d = 1; d <= 2; ++d) {
            power = ComplexMatrix(power * seed);
            p += Complex(coeff(rng), coeff(rng)) * power;
        }
        const double norm = kreg::operator_norm(p);
        std::uniform_real_distribution<double> target(0.3, 0.95);
        ops.push_back(ComplexMatrix(p * (target(rng) / norm)));
    }
    return ops;
}

}  // namespace support
