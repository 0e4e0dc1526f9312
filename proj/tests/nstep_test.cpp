// Copyright 2026 The sot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sot/nstep.hpp"

#include "gtest/gtest.h"

#include "support/oracles.hpp"
#include "support/random_fixtures.hpp"

using namespace sot;
using namespace sot::testing;

namespace {

const auto kQubit = AlgebraDescriptor::matrix(2);

AlgebraElement half_identity() {
    return AlgebraElement::from_matrix(0.5 * Matrix::Identity(2, 2));
}

}  // namespace

TEST(process_chain, validates_chaining) {
    Rng rng(1);
    auto rho = random_state(kQubit, rng);
    EXPECT_THROW(ProcessChain(rho, {}), Error);
    try {
        ProcessChain(rho, {random_cptp(2, 3, rng), random_cptp(2, 2, rng)});
        FAIL();
    } catch (const Error &ex) {
        EXPECT_EQ(ex.code(), ErrorCode::ChainMismatch);
    }
    try {
        ProcessChain(rho, {random_cptp(3, 3, rng)});
        FAIL();
    } catch (const Error &ex) {
        EXPECT_EQ(ex.code(), ErrorCode::ChainMismatch);
    }
    auto raw = AlgebraElement::from_matrix(Matrix::Identity(2, 2) * 3.0);
    EXPECT_NO_THROW(ProcessChain(raw, {channels::identity(kQubit)}));
    EXPECT_THROW(ProcessChain::checked(raw, {channels::identity(kQubit)}), Error);
}

TEST(process_chain, marginals_follow_the_maps) {
    Rng rng(2);
    auto chain = random_chain({kQubit, AlgebraDescriptor::matrix(3), kQubit}, rng);
    auto m = chain.marginals();
    ASSERT_EQ(m.size(), 3u);
    EXPECT_LE(max_abs_diff(m[2], chain.channel(2)(chain.channel(1)(chain.rho()))), 1e-14);
    EXPECT_LE(max_abs_diff(chain.marginal(1), m[1]), 0.0);
    EXPECT_THROW(chain.marginal(3), Error);
}

TEST(paren_tree, parse_print_and_combs) {
    auto t = ParenTree::parse("[[0,1],[2,3]]");
    EXPECT_EQ(t.to_string(), "[[0,1],[2,3]]");
    EXPECT_EQ(t.leaf_count(), 4u);
    EXPECT_EQ(ParenTree::left_comb(3).to_string(), "[[[0,1],2],3]");
    EXPECT_EQ(ParenTree::right_comb(3).to_string(), "[0,[1,[2,3]]]");
    EXPECT_EQ(ParenTree::parse(" [ 0 , [1,2]]"), ParenTree::right_comb(2));
    for (const char *bad : {"[1,0]", "[0,1,2]", "[[0,2],1]", "[1,2]", "{}", "[0,", "[0,-1]"}) {
        try {
            ParenTree::parse(bad);
            ADD_FAILURE() << bad;
        } catch (const Error &ex) {
            EXPECT_EQ(ex.code(), ErrorCode::ParseError) << bad;
        }
    }
}

TEST(catalan_enumerate, counts) {
    EXPECT_EQ(catalan_enumerate(0).size(), 1u);
    EXPECT_EQ(catalan_enumerate(1).size(), 1u);
    EXPECT_EQ(catalan_enumerate(2).size(), 2u);
    EXPECT_EQ(catalan_enumerate(3).size(), 5u);
    EXPECT_EQ(catalan_enumerate(4).size(), 14u);
    EXPECT_EQ(catalan_enumerate(8).size(), 1430u);
    EXPECT_THROW(catalan_enumerate(9), Error);
    auto trees = catalan_enumerate(3);
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (std::size_t j = i + 1; j < trees.size(); ++j) EXPECT_FALSE(trees[i] == trees[j]);
}

TEST(yinyang, pure_zero_through_identity) {
    auto chain = ProcessChain(AlgebraElement::matrix_unit(kQubit, 0, 0, 0), {channels::identity(kQubit)});
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 2) = expected(2, 1) = 0.5;
    EXPECT_EQ(max_entry(yinyang(chain).block(0) - expected), 0.0);
}

TEST(yinyang, depolarizing_twice_is_product) {
    Rng rng(3);
    auto rho = random_state(kQubit, rng);
    auto d = channels::depolarizing(2, 1.0);
    auto out = yinyang(ProcessChain(rho, {d, d}));
    auto expected = tensor_elements(tensor_elements(rho, half_identity()), half_identity());
    EXPECT_LE(max_abs_diff(out, expected), 1e-15);
}

TEST(yinyang, maximally_mixed_identity_twice) {
    auto id = channels::identity(kQubit);
    auto out = yinyang(ProcessChain(half_identity(), {id, id}));
    const Matrix expected = nested_jordan_oracle(
        {kron_all({0.5 * eye(2), eye(2), eye(2)}), kron_all({swap_oracle(2), eye(2)}),
         kron_all({eye(2), swap_oracle(2)})});
    EXPECT_LE(max_entry(out.block(0) - expected), 1e-15);
}

TEST(yinyang, matches_stepwise_oracle_on_random_chains) {
    Rng rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<int> dims = {2, 3, 2, 2};
        std::vector<std::vector<Matrix>> kraus;
        std::vector<SuperOperator> maps;
        std::vector<MatrixMap> oracles;
        for (std::size_t i = 1; i < dims.size(); ++i) {
            const Matrix g = random_matrix(2 * dims[i], dims[i - 1], rng);
            const Matrix v = Eigen::HouseholderQR<Matrix>(g).householderQ() * Matrix::Identity(2 * dims[i], dims[i - 1]);
            std::vector<Matrix> ks = {v.topRows(dims[i]), v.bottomRows(dims[i])};
            maps.push_back(channels::kraus(ks));
            oracles.push_back(kraus_oracle(ks));
        }
        auto rho = random_state(AlgebraDescriptor::matrix(2), rng);
        auto out = yinyang(ProcessChain(rho, maps));
        EXPECT_LE(max_entry(out.block(0) - yinyang_oracle(rho.block(0), oracles, dims)), 1e-12);
    }
}

TEST(yinyang, self_adjoint_unit_trace_and_marginals) {
    Rng rng(5);
    AlgebraDescriptor split({{"a", 1}, {"b", 2}});
    auto chain = random_chain({kQubit, split, AlgebraDescriptor::matrix(3)}, rng);
    auto tau = yinyang(chain);
    EXPECT_LE(hermiticity_deviation(tau), 1e-13);
    EXPECT_LE(std::abs(tau.trace() - Complex(1.0)), 1e-13);
    auto f = chain.factorization();
    auto m = chain.marginals();
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t keep[] = {i};
        EXPECT_LE(max_abs_diff(partial_trace(tau, f, keep), m[i]), 1e-12);
    }
}

TEST(yinyang, multilinear) {
    Rng rng(6);
    auto chain = random_chain(qubit_factors(2), rng);
    auto rho2 = random_state(kQubit, rng);
    auto e2 = random_cptp(2, 2, rng);
    std::normal_distribution<double> g;
    const Complex lam(g(rng), g(rng));
    const auto &e1 = chain.channel(1);
    const auto &f = chain.channel(2);
    auto mixed_rho = yinyang(ProcessChain(lam * chain.rho() + (Complex(1.0) - lam) * rho2, {e1, f}));
    auto split_rho =
        lam * yinyang(chain) + (Complex(1.0) - lam) * yinyang(ProcessChain(rho2, {e1, f}));
    EXPECT_LE(max_abs_diff(mixed_rho, split_rho), 1e-12);
    auto mixed_map = yinyang(ProcessChain(chain.rho(), {lam * e1 + (Complex(1.0) - lam) * e2, f}));
    auto split_map = lam * yinyang(chain) + (Complex(1.0) - lam) * yinyang(ProcessChain(chain.rho(), {e2, f}));
    EXPECT_LE(max_abs_diff(mixed_map, split_map), 1e-12);
}

TEST(bloom_paren, two_step_trees_match_their_closed_forms) {
    Rng rng(7);
    auto e = random_cptp(2, 3, rng);
    auto f = random_cptp(3, 2, rng);
    std::vector<SuperOperator> maps = {e, f};
    auto s = BloomKind::symmetric();
    TensorFactorization ab({e.domain(), e.codomain()});
    const std::size_t keep[] = {1};
    auto left_expected = compose(bloom_as_map(s, compose(f, partial_trace_map(ab, keep))), bloom_as_map(s, e));
    auto right_expected = bloom_as_map(s, compose(bloom_as_map(s, f), e));
    EXPECT_LE(max_abs_diff(bloom_paren(ParenTree::parse("[[0,1],2]"), maps), left_expected), 1e-15);
    EXPECT_LE(max_abs_diff(bloom_paren(ParenTree::parse("[0,[1,2]]"), maps), right_expected), 1e-15);
}

TEST(bloom_paren, all_three_step_trees_agree_for_associative_kinds) {
    Rng rng(8);
    for (auto kind : {BloomKind::symmetric(), BloomKind::right(), BloomKind::left()}) {
        for (int trial = 0; trial < 3; ++trial) {
            auto chain = random_chain(qubit_factors(3), rng);
            auto trees = catalan_enumerate(3);
            auto reference = bloom_paren(trees[0], chain.channels(), kind);
            for (const auto &t : trees) {
                EXPECT_LE(max_abs_diff(bloom_paren(t, chain.channels(), kind), reference), 1e-9)
                    << kind.name() << " " << t.to_string();
            }
            EXPECT_LE(max_abs_diff(reference(chain.rho()), state_over_time(chain, kind)), 1e-12);
        }
    }
}

TEST(bloom_paren, lambda_kind_is_computed_for_every_tree) {
    Rng rng(9);
    auto chain = random_chain(qubit_factors(2), rng);
    auto kind = BloomKind::lambda(0.3);
    double spread = 0.0;
    auto reference = state_over_time(chain, ParenTree::left_comb(2), kind);
    for (const auto &t : catalan_enumerate(2)) {
        auto out = state_over_time(chain, t, kind);
        EXPECT_LE(std::abs(out.trace() - Complex(1.0)), 1e-12);
        spread = std::max(spread, max_abs_diff(out, reference));
    }
    EXPECT_LE(max_abs_diff(reference, state_over_time(chain, kind)), 1e-12);
    // No equality across trees is claimed for intermediate weights.
    EXPECT_GE(spread, 0.0);
}

TEST(bloom_paren, satisfies_marginal_law_on_mixed_dimensions) {
    Rng rng(10);
    auto chain = random_chain({kQubit, AlgebraDescriptor::matrix(3), kQubit, AlgebraDescriptor::matrix(3)}, rng);
    auto f = chain.factorization();
    for (const auto &t : catalan_enumerate(3)) {
        auto map = bloom_paren(t, chain.channels());
        auto expected = channels::identity(chain.factors()[0]);
        for (std::size_t i = 0; i <= 3; ++i) {
            if (i > 0) expected = compose(chain.channel(i), expected);
            const std::size_t keep[] = {i};
            EXPECT_LE(max_abs_diff(compose(partial_trace_map(f, keep), map), expected), 1e-12) << t.to_string();
        }
    }
}

TEST(bloom_paren, rejects_wrong_leaf_count) {
    Rng rng(11);
    auto chain = random_chain(qubit_factors(2), rng);
    try {
        bloom_paren(ParenTree::left_comb(3), chain.channels());
        FAIL();
    } catch (const Error &ex) {
        EXPECT_EQ(ex.code(), ErrorCode::ShapeMismatch);
    }
}

TEST(yinyang_sum_formula, single_step_is_the_anticommutator) {
    Rng rng(12);
    auto chain = random_chain({AlgebraDescriptor::matrix(3), kQubit}, rng);
    auto lifted = tensor_elements(chain.rho(), AlgebraElement::identity(kQubit));
    const auto &j = chain.channel(1).jamiolkowski_matrix();
    auto expected = Complex(0.5) * (lifted * j + j * lifted);
    EXPECT_LE(max_abs_diff(yinyang_sum_formula(chain), expected), 1e-14);
    EXPECT_LE(max_abs_diff(yinyang_jordan_formula(chain), jordan_product(lifted, j)), 1e-14);
}

TEST(yinyang_sum_formula, identity_qubit_chain) {
    auto id = channels::identity(kQubit);
    auto chain = ProcessChain(AlgebraElement::matrix_unit(kQubit, 0, 0, 0), {id, id});
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    const Matrix expected = nested_jordan_oracle(
        {kron_all({rho, eye(2), eye(2)}), kron_all({swap_oracle(2), eye(2)}), kron_all({eye(2), swap_oracle(2)})});
    EXPECT_LE(max_entry(yinyang_sum_formula(chain).block(0) - expected), 1e-15);
    EXPECT_LE(max_entry(yinyang(chain).block(0) - expected), 1e-15);
}

TEST(yinyang_sum_formula, two_step_jordan_closed_form) {
    Rng rng(13);
    auto chain = random_chain({kQubit, AlgebraDescriptor::matrix(3), kQubit}, rng);
    auto a = chain.factors();
    auto lifted = tensor_elements(tensor_elements(chain.rho(), AlgebraElement::identity(a[1])), AlgebraElement::identity(a[2]));
    auto j1 = tensor_elements(chain.channel(1).jamiolkowski_matrix(), AlgebraElement::identity(a[2]));
    auto j2 = tensor_elements(AlgebraElement::identity(a[0]), chain.channel(2).jamiolkowski_matrix());
    auto expected = jordan_product(lifted, jordan_product(j1, j2));
    EXPECT_LE(max_abs_diff(yinyang_jordan_formula(chain), expected), 1e-13);
    EXPECT_LE(max_abs_diff(yinyang(chain), expected), 1e-12);
}

TEST(yinyang_sum_formula, formulas_agree_on_random_chains) {
    Rng rng(14);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto chain = random_chain(mixed_factors(n, rng), rng);
        auto y = yinyang(chain);
        EXPECT_LE(max_abs_diff(yinyang_sum_formula(chain), y), 1e-9) << n;
        EXPECT_LE(max_abs_diff(yinyang_jordan_formula(chain), y), 1e-9) << n;
    }
}

TEST(yinyang_sum_formula, multi_block_chain) {
    Rng rng(15);
    AlgebraDescriptor a({{"x", 2}, {"y", 1}});
    AlgebraDescriptor b({{"u", 1}, {"v", 1}, {"w", 2}});
    auto chain = random_chain({a, b, kQubit}, rng);
    auto y = yinyang(chain);
    EXPECT_LE(max_abs_diff(yinyang_sum_formula(chain), y), 1e-12);
    EXPECT_LE(max_abs_diff(yinyang_jordan_formula(chain), y), 1e-12);
}

TEST(yinyang_sum_formula, guard) {
    auto id = channels::identity(AlgebraDescriptor::matrix(1));
    auto chain = ProcessChain(AlgebraElement::identity(AlgebraDescriptor::matrix(1)), std::vector<SuperOperator>(21, id));
    try {
        yinyang_sum_formula(chain);
        FAIL();
    } catch (const Error &ex) {
        EXPECT_EQ(ex.code(), ErrorCode::ChainTooLong);
    }
}

TEST(multi_marginal, compositionality) {
    Rng rng(16);
    auto chain = random_chain({kQubit, AlgebraDescriptor::matrix(3), kQubit}, rng);
    const std::size_t keep[] = {0, 2};
    auto out = multi_marginal(yinyang(chain), chain.factorization(), keep);
    auto expected = yinyang(ProcessChain(chain.rho(), {compose(chain.channel(2), chain.channel(1))}));
    EXPECT_LE(max_abs_diff(out, expected), 1e-12);
}

TEST(multi_marginal, single_index_is_the_evolved_state) {
    Rng rng(17);
    auto chain = random_chain(qubit_factors(3), rng);
    auto tau = yinyang(chain);
    for (std::size_t i = 0; i <= 3; ++i) {
        const std::size_t keep[] = {i};
        EXPECT_LE(max_abs_diff(multi_marginal(tau, chain.factorization(), keep), chain.marginal(i)), 1e-12);
    }
}

TEST(multi_marginal, depolarizing_chain_contraction) {
    Rng rng(18);
    auto rho = random_state(kQubit, rng);
    auto d = channels::depolarizing(2, 1.0);
    auto chain = ProcessChain(rho, {d, d});
    const std::size_t keep[] = {0, 2};
    auto out = multi_marginal(yinyang(chain), chain.factorization(), keep);
    const Matrix expected = partial_trace_oracle(kron_all({rho.block(0), 0.5 * eye(2), 0.5 * eye(2)}), {2, 2, 2}, {0, 2});
    EXPECT_LE(max_entry(out.block(0) - expected), 1e-15);
    EXPECT_LE(max_entry(out.block(0) - kron_oracle(rho.block(0), 0.5 * eye(2))), 1e-15);
}

TEST(multi_marginal, matches_coarse_grained_process) {
    Rng rng(19);
    auto chain = random_chain(mixed_factors(4, rng), rng);
    auto tau = yinyang(chain);
    const std::vector<std::vector<std::size_t>> keeps = {{1, 3}, {0, 2, 4}, {1, 2, 4}, {3, 4}, {0, 1, 2, 3, 4}};
    for (const auto &keep : keeps) {
        auto cg = coarse_grained_chain(chain, keep);
        auto expected = yinyang(ProcessChain(cg.rho, cg.channels));
        EXPECT_LE(max_abs_diff(multi_marginal(tau, chain.factorization(), keep), expected), 1e-9);
    }
    const std::size_t bad[] = {2, 1};
    EXPECT_THROW(multi_marginal(tau, chain.factorization(), bad), Error);
}

TEST(reduction_identity_check, two_step_chain) {
    Rng rng(20);
    auto chain = random_chain({kQubit, AlgebraDescriptor::matrix(3), kQubit}, rng);
    auto report = reduction_identity_check(chain, 1);
    EXPECT_TRUE(report.ok) << report.deviation;
}

TEST(reduction_identity_check, identity_three_step_chain) {
    auto id = channels::identity(kQubit);
    Rng rng(21);
    auto chain = ProcessChain(random_state(kQubit, rng), {id, id, id});
    EXPECT_TRUE(reduction_identity_check(chain, 2).ok);
    EXPECT_TRUE(reduction_identity_check(chain, 1).ok);
}

TEST(reduction_identity_check, random_chains_and_bounds) {
    Rng rng(22);
    auto chain = random_chain(qubit_factors(3), rng);
    EXPECT_LE(reduction_identity_check(chain, 1).deviation, 1e-9);
    EXPECT_LE(reduction_identity_check(chain, 2).deviation, 1e-9);
    for (std::size_t bad : {0u, 3u}) {
        try {
            reduction_identity_check(chain, bad);
            ADD_FAILURE();
        } catch (const Error &ex) {
            EXPECT_EQ(ex.code(), ErrorCode::IndexOutOfRange);
        }
    }
}
