#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <kreg/corpus.hpp>
#include <kreg/factorization.hpp>

#include "support.hpp"

using namespace kreg;

namespace {

// Ambient-coordinate evaluation of the canonical isometry on D_A h: the
// stacked blocks D_{A_i}(A_{i-1} ... A_1 h), last factor on top.
ComplexVector apply_canonical(const FactorizationChain& chain, const ComplexVector& h) {
    std::vector<ComplexVector> blocks;
    ComplexVector cursor = h;
    for (int i = 0; i < chain.k; ++i) {
        const auto& factor = chain.factors[static_cast<std::size_t>(i)];
        blocks.push_back(defect_operator(factor, Side::domain, chain.tol) * cursor);
        cursor = factor.matrix * cursor;
    }
    Index total = 0;
    for (const auto& b : blocks) total += b.size();
    ComplexVector out(total);
    Index row = 0;
    for (int i = chain.k - 1; i >= 0; --i) {
        out.segment(row, blocks[static_cast<std::size_t>(i)].size()) =
            blocks[static_cast<std::size_t>(i)];
        row += blocks[static_cast<std::size_t>(i)].size();
    }
    return out;
}

ComplexMatrix scalar1(double v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

std::vector<ComplexMatrix> corpus_identity_chain(const CommutingTuple& t) {
    std::vector<ComplexMatrix> factors;
    for (int i = t.k - 1; i >= 0; --i)
        factors.push_back(t.operators[static_cast<std::size_t>(i)].matrix);
    return factors;
}

}  // namespace

TEST_CASE("chain construction on pinned inputs") {
    const FactorizationChain scalars = build_chain({scalar1(0.6), scalar1(0.8)});
    CHECK(scalars.k == 2);
    CHECK(std::real(scalars.product.matrix(0, 0)) == Catch::Approx(0.48).margin(1e-14));

    std::mt19937 rng(21);
    const FactorizationChain unitaries = build_chain({support::random_unitary(rng, 3),
                                                      support::random_unitary(rng, 3),
                                                      support::random_unitary(rng, 3)});
    for (const DefectSpace& ds : unitaries.factor_defects) CHECK(ds.dim == 0);
    CHECK(unitaries.product_defect.dim == 0);

    CHECK_THROWS_AS(build_chain({support::random_contraction(rng, 2, 3),
                                 support::random_contraction(rng, 3, 3)}),
                    DimensionMismatch);
    CHECK_THROWS_AS(build_chain({scalar1(0.5)}), DimensionMismatch);

    try {
        build_chain({scalar1(0.5), scalar1(2.0)});
        FAIL("expected NotContraction");
    } catch (const NotContraction& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("canonical isometry matrix on pinned chains") {
    ComplexMatrix nilpotent(2, 2);
    nilpotent << 0, 1, 0, 0;
    const FactorizationChain squared = build_chain({nilpotent, nilpotent});
    ComplexMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(operator_norm(ComplexMatrix(z_matrix(squared) - swap)) <= 1e-12);
    const UnitarityDefect ud = unitarity_defect(z_matrix(squared));
    CHECK(ud.left <= 1e-12);
    CHECK(ud.right <= 1e-12);

    const FactorizationChain zero_chain = build_chain({scalar1(0.0), scalar1(0.0)});
    const ComplexMatrix z = z_matrix(zero_chain);
    REQUIRE(z.rows() == 2);
    REQUIRE(z.cols() == 1);
    CHECK(std::abs(z(0, 0)) <= 1e-14);
    CHECK(std::abs(z(1, 0) - Complex(1.0)) <= 1e-14);
    CHECK(unitarity_defect(z).left <= 1e-12);   // isometric
    CHECK(unitarity_defect(z).right > 0.5);     // but not unitary

    std::mt19937 rng(22);
    const FactorizationChain unitaries =
        build_chain({support::random_unitary(rng, 2), support::random_unitary(rng, 2)});
    const ComplexMatrix zu = z_matrix(unitaries);
    CHECK(zu.rows() == 0);
    CHECK(zu.cols() == 0);
}

TEST_CASE("regularity verdicts on published counterexample chains") {
    const CorpusCase kv_case = kaijser_varopoulos();
    const auto& kv = std::get<CommutingTuple>(kv_case.data);
    const RegularityReport kv_report = check_k_regular(build_chain(corpus_identity_chain(kv)));
    CHECK_FALSE(kv_report.regular());
    CHECK(kv_report.dim_product == 5);
    CHECK(kv_report.dim_sum == 9);
    CHECK(kv_report.consistent);

    const CorpusCase cd_case = crabb_davie();
    const auto& cd = std::get<CommutingTuple>(cd_case.data);
    const RegularityReport cd_report = check_k_regular(build_chain(corpus_identity_chain(cd)));
    CHECK_FALSE(cd_report.regular());
    CHECK(cd_report.dim_product == 7);
    CHECK(cd_report.dim_sum == 9);
    CHECK(cd_report.consistent);
}

TEST_CASE("chains of isometric factors are regular") {
    std::mt19937 rng(23);
    const ComplexMatrix a1 = support::random_contraction(rng, 4, 2);
    const ComplexMatrix a2 = support::random_isometry(rng, 4, 4);
    const ComplexMatrix a3 = support::random_isometry(rng, 4, 4);
    const RegularityReport r = check_k_regular(build_chain({a1, a2, a3}));
    CHECK(r.regular());
    CHECK(r.consistent);
}

TEST_CASE("report stores the isometry defect within tolerance") {
    std::mt19937 rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const FactorizationChain chain = build_chain(support::random_chain(rng, 2 + trial % 3, 5));
        const RegularityReport r = check_k_regular(chain);
        CHECK(r.isometry_defect <= chain.tol.unitary_tol);
        CHECK(r.consistent);
    }
}

TEST_CASE("cascade criterion matches the direct verdict") {
    std::mt19937 rng(25);
    const FactorizationChain two = build_chain(support::random_chain(rng, 2, 4));
    CHECK(cascade_criterion(two) == check_k_regular(two).regular());

    // k copies of the k-dimensional truncated shift multiply to zero and
    // form a regular chain.
    for (int k = 2; k <= 4; ++k) {
        ComplexMatrix shift = ComplexMatrix::Zero(k, k);
        for (int i = 1; i < k; ++i) shift(i, i - 1) = 1.0;
        const std::vector<ComplexMatrix> factors(static_cast<std::size_t>(k), shift);
        const FactorizationChain chain = build_chain(factors);
        CHECK(operator_norm(chain.product.matrix) <= 1e-14);
        CHECK(cascade_criterion(chain));
        CHECK(check_k_regular(chain).regular());
    }

    const CorpusCase parrott_case = parrott();
    const auto& parrott_tuple = std::get<CommutingTuple>(parrott_case.data);
    const FactorizationChain pc = build_chain(corpus_identity_chain(parrott_tuple));
    CHECK_FALSE(cascade_criterion(pc));
}

TEST_CASE("intersection criterion on pinned chains") {
    std::mt19937 rng(26);
    const FactorizationChain unitaries =
        build_chain({support::random_unitary(rng, 3), support::random_unitary(rng, 3)});
    CHECK(intersection_criterion(unitaries));

    const FactorizationChain zero_chain = build_chain({scalar1(0.0), scalar1(0.0)});
    CHECK_FALSE(intersection_criterion(zero_chain));

    const CorpusCase kv_case = kaijser_varopoulos();
    const auto& kv = std::get<CommutingTuple>(kv_case.data);
    const FactorizationChain kvc = build_chain(corpus_identity_chain(kv));
    CHECK(intersection_criterion(kvc) == check_k_regular(kvc).regular());
}

TEST_CASE("all four criteria agree on random chains") {
    std::mt19937 rng(27);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<ComplexMatrix> factors;
        const int k = 2 + trial % 3;
        if (trial % 3 == 0)
            factors = support::random_isometric_tail_chain(rng, k, 5);
        else if (trial % 3 == 1)
            factors = support::random_coisometric_head_chain(rng, k, 5);
        else
            factors = support::random_chain(rng, k, 5);
        const RegularityReport r = check_k_regular(build_chain(factors));
        INFO("trial " << trial);
        CHECK(r.consistent);
    }
}

TEST_CASE("canonical isometry preserves norms of defect vectors") {
    std::mt19937 rng(28);
    for (int trial = 0; trial < 8; ++trial) {
        const FactorizationChain chain = build_chain(support::random_chain(rng, 2 + trial % 3, 5));
        const ComplexMatrix d_product =
            defect_operator(chain.product, Side::domain, chain.tol);
        for (int i = 0; i < 200; ++i) {
            const ComplexVector h = support::random_vector(rng, chain.product.cols());
            const ComplexVector dh = d_product * h;
            CHECK(apply_canonical(chain, h).norm() == Catch::Approx(dh.norm()).margin(1e-8));
        }
    }
}

TEST_CASE("tabulated matrix preserves coordinate norms") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const FactorizationChain chain = build_chain(support::random_chain(rng, 2 + trial % 3, 5));
        const ComplexMatrix z = z_matrix(chain);
        for (int i = 0; i < 20; ++i) {
            if (chain.product_defect.dim == 0) break;
            const ComplexVector c = support::random_vector(rng, chain.product_defect.dim);
            CHECK((z * c).norm() == Catch::Approx(c.norm()).margin(1e-8));
        }
    }
}

TEST_CASE("partition validation") {
    CHECK_THROWS_AS(validate_partition(Partition{{}}, 3), InvalidPartition);
    CHECK_THROWS_AS(validate_partition(Partition{{3}}, 3), InvalidPartition);      // single block
    CHECK_THROWS_AS(validate_partition(Partition{{2, 2, 3}}, 3), InvalidPartition);
    CHECK_THROWS_AS(validate_partition(Partition{{1, 2}}, 3), InvalidPartition);   // last != k
    CHECK_THROWS_AS(validate_partition(Partition{{0, 3}}, 3), InvalidPartition);
    CHECK_NOTHROW(validate_partition(Partition{{1, 3}}, 3));
    CHECK_NOTHROW(validate_partition(Partition{{1, 2, 3}}, 3));

    CHECK(all_partitions(2).size() == 1);
    CHECK(all_partitions(3).size() == 3);
    CHECK(all_partitions(4).size() == 7);
}

TEST_CASE("aggregation on pinned partitions") {
    std::mt19937 rng(30);
    const FactorizationChain chain = build_chain(support::random_chain(rng, 3, 4));

    const FactorizationChain singletons = aggregate(chain, Partition{{1, 2, 3}});
    CHECK(singletons.k == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(operator_norm(ComplexMatrix(singletons.factors[static_cast<std::size_t>(i)].matrix -
                                          chain.factors[static_cast<std::size_t>(i)].matrix)) ==
              0.0);

    CHECK_THROWS_AS(aggregate(chain, Partition{{3}}), InvalidPartition);

    const FactorizationChain grouped = aggregate(chain, Partition{{2, 3}});
    CHECK(grouped.k == 2);
    CHECK(operator_norm(ComplexMatrix(grouped.product.matrix - chain.product.matrix)) <= 1e-12);
}

TEST_CASE("partition coherence in both directions") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<ComplexMatrix> factors;
        if (trial % 2 == 0)
            factors = support::random_isometric_tail_chain(rng, 4, 3);
        else
            factors = support::random_chain(rng, 4, 3);
        const FactorizationChain chain = build_chain(factors);
        const bool regular = check_k_regular(chain).regular();
        for (const Partition& p : all_partitions(chain.k)) {
            bool aggregate_and_blocks = check_k_regular(aggregate(chain, p)).regular();
            int lo = 1;
            for (int cut : p.cut_points) {
                if (cut - lo + 1 >= 2) {
                    std::vector<ComplexMatrix> block;
                    for (int i = lo; i <= cut; ++i)
                        block.push_back(chain.factors[static_cast<std::size_t>(i - 1)].matrix);
                    aggregate_and_blocks =
                        aggregate_and_blocks && check_k_regular(build_chain(block)).regular();
                }
                lo = cut + 1;
            }
            INFO("trial " << trial);
            CHECK(regular == aggregate_and_blocks);
        }
    }
}

TEST_CASE("partition identity on pinned chains") {
    const CorpusCase cd_case = crabb_davie();
    const auto& cd = std::get<CommutingTuple>(cd_case.data);
    const FactorizationChain cdc = build_chain(corpus_identity_chain(cd));
    CHECK(verify_partition_identity(cdc, Partition{{1, 3}}) <= 1e-8);
    CHECK(verify_partition_identity(cdc, Partition{{1, 2, 3}}) <= 1e-12);

    std::mt19937 rng(32);
    const FactorizationChain random3 = build_chain(
        {support::random_contraction(rng, 4, 4), support::random_contraction(rng, 4, 4),
         support::random_contraction(rng, 4, 4)});
    for (const Partition& p : all_partitions(3))
        CHECK(verify_partition_identity(random3, p) <= 1e-8);
}

TEST_CASE("adjoint chains") {
    const FactorizationChain scalars = build_chain({scalar1(0.6), scalar1(0.8)});
    const FactorizationChain adj = adjoint_chain(scalars);
    CHECK(std::real(adj.factors[0].matrix(0, 0)) == Catch::Approx(0.8).margin(1e-14));
    CHECK(std::real(adj.factors[1].matrix(0, 0)) == Catch::Approx(0.6).margin(1e-14));

    std::mt19937 rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const FactorizationChain chain =
            build_chain(support::random_isometric_tail_chain(rng, 3, 4));
        if (!check_k_regular(chain).regular()) continue;
        CHECK(check_k_regular(adjoint_chain(chain)).regular());
    }

    const CorpusCase kv_case = kaijser_varopoulos();
    const auto& kv = std::get<CommutingTuple>(kv_case.data);
    const RegularityReport adj_kv =
        check_k_regular(adjoint_chain(build_chain(corpus_identity_chain(kv))));
    CHECK(adj_kv.consistent);
}

TEST_CASE("unitary products are regular exactly when all factors are unitary") {
    std::mt19937 rng(34);
    const FactorizationChain all_unitary =
        build_chain({support::random_unitary(rng, 3), support::random_unitary(rng, 3)});
    CHECK(operator_norm(ComplexMatrix(all_unitary.product.matrix.adjoint() *
                                          all_unitary.product.matrix -
                                      ComplexMatrix::Identity(3, 3))) <= 1e-12);
    CHECK(check_k_regular(all_unitary).regular());

    // Isometry followed by a coisometry: unitary product, non-unitary factors.
    ComplexMatrix into(2, 1), outof(1, 2);
    into << 1, 0;
    outof << 1, 0;
    const FactorizationChain pinched = build_chain({into, outof});
    CHECK(operator_norm(ComplexMatrix(pinched.product.matrix -
                                      ComplexMatrix::Identity(1, 1))) <= 1e-14);
    CHECK_FALSE(check_k_regular(pinched).regular());
}
