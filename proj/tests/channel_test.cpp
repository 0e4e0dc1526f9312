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

#include "sot/channel.hpp"

#include <thread>

#include "gtest/gtest.h"

#include "sot/classical.hpp"
#include "support/oracles.hpp"
#include "support/random_fixtures.hpp"

using namespace sot;
using namespace sot::testing;

namespace {

const auto kQubit = AlgebraDescriptor::matrix(2);

AlgebraElement qubit(const Matrix &m) {
    return AlgebraElement::from_matrix(m);
}

Complex hs(const AlgebraElement &a, const AlgebraElement &b) {
    return trace(dagger(a) * b);
}

}  // namespace

TEST(apply, identity_depolarizing_and_bit_flip) {
    Rng rng(1);
    auto rho = random_state(kQubit, rng);
    EXPECT_EQ(max_abs_diff(channels::identity(kQubit)(rho), rho), 0.0);
    auto zero = AlgebraElement::matrix_unit(kQubit, 0, 0, 0);
    EXPECT_LE(max_abs_diff(channels::depolarizing(2, 1.0)(zero), qubit(0.5 * Matrix::Identity(2, 2))), 1e-15);
    auto flip = q_embed(StochasticMap::bit_flip(0.25));
    auto c2 = AlgebraDescriptor::classical(2);
    auto out = flip(AlgebraElement::delta(c2, 0));
    EXPECT_EQ(out.block(0)(0, 0), Complex(0.75));
    EXPECT_EQ(out.block(1)(0, 0), Complex(0.25));
}

TEST(apply, is_linear_and_checks_domain) {
    Rng rng(2);
    AlgebraDescriptor a({{"x", 2}, {"y", 1}});
    AlgebraDescriptor b({{"u", 3}});
    auto e = random_cptp(a, b, rng);
    auto p = random_element(a, rng);
    auto q = random_element(a, rng);
    const Complex alpha(0.3, -1.2), beta(2.0, 0.5);
    EXPECT_LE(max_abs_diff(e(alpha * p + beta * q), alpha * e(p) + beta * e(q)), 1e-12);
    EXPECT_THROW(e(random_element(b, rng)), Error);
}

TEST(apply, multi_block_component_sums) {
    Rng rng(3);
    AlgebraDescriptor a({{"x", 2}, {"y", 1}});
    AlgebraDescriptor b({{"u", 1}, {"v", 2}});
    auto e = random_cptp(a, b, rng);
    auto rho = random_element(a, rng);
    auto out = e(rho);
    // Output block y is the sum over x of the component action on block x.
    for (std::size_t y = 0; y < 2; ++y) {
        Matrix acc = Matrix::Zero(b.dim(y), b.dim(y));
        for (std::size_t x = 0; x < 2; ++x) {
            const auto m = static_cast<Eigen::Index>(a.dim(x));
            const auto n = static_cast<Eigen::Index>(b.dim(y));
            Eigen::VectorXcd v(m * m);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < m; ++j) v(i * m + j) = rho.block(x)(i, j);
            Eigen::VectorXcd w = e.component(y, x) * v;
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) acc(i, j) += w(i * n + j);
        }
        EXPECT_LE(max_entry(out.block(y) - acc), 1e-13);
    }
}

TEST(compose, identity_and_application) {
    Rng rng(4);
    auto e = random_cptp(2, 3, rng);
    auto f = random_cptp(3, 2, rng);
    EXPECT_LE(max_abs_diff(compose(channels::identity(e.codomain()), e), e), 1e-15);
    auto rho = random_state(kQubit, rng);
    EXPECT_LE(max_abs_diff(compose(f, e)(rho), f(e(rho))), 1e-13);
    EXPECT_THROW(compose(e, e), Error);
    auto g = random_cptp(2, 2, rng);
    EXPECT_LE(max_abs_diff(compose(compose(g, f), e), compose(g, compose(f, e))), 1e-13);
}

TEST(hs_dual, trace_map_dual_is_unit_embedding) {
    auto t = channels::trace_map(kQubit);
    auto d = hs_dual(t);
    Matrix one(1, 1);
    one(0, 0) = Complex(2.5, -1.0);
    auto out = d(AlgebraElement(AlgebraDescriptor::matrix(1), {one}));
    EXPECT_LE(max_abs_diff(out, Complex(2.5, -1.0) * AlgebraElement::identity(kQubit)), 1e-15);
    // Duality on the matrix-unit basis.
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            auto a = AlgebraElement::matrix_unit(kQubit, 0, i, j);
            auto b = AlgebraElement(AlgebraDescriptor::matrix(1), {one});
            EXPECT_LE(std::abs(hs(t(a), b) - hs(a, d(b))), 1e-15);
        }
}

TEST(hs_dual, duality_on_random_multi_block_elements) {
    Rng rng(5);
    AlgebraDescriptor a({{"x", 2}, {"y", 3}});
    AlgebraDescriptor b({{"u", 1}, {"v", 2}});
    auto e = random_cptp(a, b, rng) + Complex(0.0, 0.7) * random_cptp(a, b, rng);
    auto d = hs_dual(e);
    for (int trial = 0; trial < 5; ++trial) {
        auto x = random_element(a, rng);
        auto y = random_element(b, rng);
        EXPECT_LE(std::abs(hs(e(x), y) - hs(x, d(y))), 1e-11);
    }
}

TEST(tensor, identity_with_depolarizing_on_half_swap) {
    auto e = tensor(channels::identity(kQubit), channels::depolarizing(2, 1.0));
    TensorFactorization f({kQubit, kQubit});
    auto out = e(AlgebraElement(f.composite(), {0.5 * swap_oracle(2)}));
    // Elementwise: (id (x) D)(E_ij (x) E_ji)/2 = E_ij (x) delta_ij I/2 / 2.
    Matrix expected = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
        expected += 0.5 * kron_oracle(unit(2, i, i), 0.5 * eye(2));
    EXPECT_LE(max_entry(out.block(0) - expected), 1e-15);
}

TEST(tensor, matches_kraus_oracle) {
    Rng rng(6);
    std::vector<Matrix> k1 = {random_matrix(2, 2, rng), random_matrix(2, 2, rng)};
    std::vector<Matrix> k2 = {random_matrix(3, 2, rng)};
    auto e = tensor(channels::kraus(k1), channels::kraus(k2));
    auto x = random_element(tensor_descriptors(kQubit, kQubit), rng);
    Matrix expected = Matrix::Zero(6, 6);
    for (const auto &a : k1)
        for (const auto &b : k2) {
            const Matrix k = kron_oracle(a, b);
            expected += k * x.block(0) * k.adjoint();
        }
    EXPECT_LE(max_entry(e(x).block(0) - expected), 1e-12);
}

TEST(jamiolkowski, identity_is_swap) {
    auto j = jamiolkowski(channels::identity(kQubit));
    EXPECT_EQ(max_entry(j.value.block(0) - swap_oracle(2)), 0.0);
}

TEST(jamiolkowski, full_depolarizing_is_half_identity) {
    auto j = jamiolkowski(channels::depolarizing(2, 1.0));
    EXPECT_LE(max_entry(j.value.block(0) - 0.5 * eye(4)), 1e-15);
}

TEST(jamiolkowski, classical_map_is_diagonal_in_delta_pairs) {
    Rng rng(7);
    auto f = random_stochastic(labels(3), labels(2), rng);
    auto e = q_embed(f);
    auto j = e.jamiolkowski_matrix();
    ASSERT_EQ(j.blocks().size(), 6u);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            EXPECT_NEAR(std::abs(j.block(x * 2 + y)(0, 0) - f.probs()(y, x)), 0.0, 1e-15);
}

TEST(jamiolkowski, matches_summation_oracle) {
    Rng rng(8);
    std::vector<Matrix> ks = {random_matrix(3, 2, rng), random_matrix(3, 2, rng)};
    auto e = channels::kraus(ks);
    EXPECT_LE(max_entry(e.jamiolkowski_matrix().block(0) - jamiolkowski_oracle(kraus_oracle(ks), 2)), 1e-13);
    EXPECT_LE(max_entry(choi_matrix(e).block(0) - choi_oracle(kraus_oracle(ks), 2)), 1e-13);
}

TEST(jamiolkowski, trace_preservation_biconditional) {
    Rng rng(81);
    auto e = random_cptp(2, 3, rng);
    TensorFactorization f({e.domain(), e.codomain()});
    EXPECT_LE(max_abs_diff(partial_trace(e.jamiolkowski_matrix(), f, {0}), AlgebraElement::identity(kQubit)), 1e-12);
    auto g = Complex(1.5) * e;
    EXPECT_FALSE(is_trace_preserving(g).ok);
    EXPECT_GT(max_abs_diff(partial_trace(g.jamiolkowski_matrix(), f, {0}), AlgebraElement::identity(kQubit)), 0.1);
}

TEST(jamiolkowski_inverse, known_states) {
    TensorFactorization f({kQubit, kQubit});
    auto id = jamiolkowski_inverse(AlgebraElement(f.composite(), {swap_oracle(2)}), f);
    EXPECT_LE(max_abs_diff(id, channels::identity(kQubit)), 1e-15);
    auto dep = jamiolkowski_inverse(AlgebraElement(f.composite(), {0.5 * eye(4)}), f);
    EXPECT_LE(max_abs_diff(dep, channels::depolarizing(2, 1.0)), 1e-15);
}

TEST(jamiolkowski_inverse, matches_partial_trace_formula) {
    Rng rng(9);
    AlgebraDescriptor a({{"x", 2}, {"y", 1}});
    AlgebraDescriptor b({{"u", 2}, {"v", 1}});
    TensorFactorization f({a, b});
    auto t = random_element(f.composite(), rng);
    auto e = jamiolkowski_inverse(t, f);
    auto rho = random_element(a, rng);
    auto expected = partial_trace(tensor_elements(rho, AlgebraElement::identity(b)) * t, f, {1});
    EXPECT_LE(max_abs_diff(e(rho), expected), 1e-12);
}

TEST(jamiolkowski_inverse, round_trips_both_ways) {
    Rng rng(10);
    AlgebraDescriptor a({{"x", 2}, {"y", 1}});
    AlgebraDescriptor b({{"u", 3}});
    auto e = random_cptp(a, b, rng) + Complex(0.2, 0.4) * random_cptp(a, b, rng);
    EXPECT_LE(max_abs_diff(jamiolkowski_inverse(jamiolkowski(e)), e), 1e-9);
    auto t = random_element(tensor_descriptors(a, b), rng);
    EXPECT_LE(max_abs_diff(jamiolkowski_inverse(t, a, b).jamiolkowski_matrix(), t), 1e-9);
    EXPECT_THROW(jamiolkowski_inverse(t, b, a), Error);
}

TEST(choi_matrix, identity_depolarizing_and_transpose) {
    auto c_id = choi_matrix(channels::identity(kQubit));
    Matrix phi = Matrix::Zero(4, 4);
    phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 1.0;
    EXPECT_EQ(max_entry(c_id.block(0) - phi), 0.0);
    EXPECT_LE(max_entry(choi_matrix(channels::depolarizing(2, 1.0)).block(0) - 0.5 * eye(4)), 1e-15);
    auto c_t = choi_matrix(channels::transpose(2));
    EXPECT_EQ(max_entry(c_t.block(0) - swap_oracle(2)), 0.0);
    EXPECT_NEAR(min_eigenvalue(c_t), -1.0, 1e-12);
}

TEST(verify, identity_passes_everything) {
    auto e = channels::identity(kQubit);
    EXPECT_TRUE(is_trace_preserving(e).ok);
    EXPECT_TRUE(is_dagger_preserving(e).ok);
    EXPECT_TRUE(is_completely_positive(e).ok);
    EXPECT_TRUE(is_cptp(e).ok);
}

TEST(verify, transpose_is_tp_and_dagger_preserving_but_not_cp) {
    auto e = channels::transpose(2);
    EXPECT_TRUE(is_trace_preserving(e).ok);
    EXPECT_TRUE(is_dagger_preserving(e).ok);
    auto cp = is_completely_positive(e);
    EXPECT_FALSE(cp.ok);
    EXPECT_NEAR(cp.min_eigenvalue, -1.0, 1e-12);
    EXPECT_FALSE(is_cptp(e).ok);
}

TEST(verify, complex_scalar_breaks_dagger_preservation) {
    const Complex c(1.0, 1.0);
    auto e = SuperOperator::from_action(kQubit, kQubit, [&](const AlgebraElement &a) {
        return c * a.trace() * qubit(0.5 * Matrix::Identity(2, 2));
    });
    auto check = is_dagger_preserving(e);
    EXPECT_FALSE(check.ok);
    EXPECT_FALSE(check.direct);
    EXPECT_FALSE(check.via_jamiolkowski);
}

TEST(verify, dagger_checks_agree_on_random_maps) {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto c1 = random_cptp(2, 3, rng);
        auto c2 = random_cptp(2, 3, rng);
        auto hermitian = Complex(1.7) * c1 + Complex(-0.7) * c2;
        auto skew = c1 + Complex(0.0, 0.3) * (c1 + Complex(-1.0) * c2);
        auto h = is_dagger_preserving(hermitian);
        auto s = is_dagger_preserving(skew);
        EXPECT_EQ(h.direct, h.via_jamiolkowski);
        EXPECT_EQ(s.direct, s.via_jamiolkowski);
        EXPECT_TRUE(h.ok);
        EXPECT_FALSE(s.ok);
        EXPECT_TRUE(is_trace_preserving(skew).ok);
    }
}

TEST(verify, random_cptp_maps_pass) {
    Rng rng(13);
    AlgebraDescriptor a({{"x", 2}, {"y", 1}});
    AlgebraDescriptor b({{"u", 1}, {"v", 3}});
    for (int trial = 0; trial < 5; ++trial) {
        auto e = random_cptp(a, b, rng);
        auto check = is_cptp(e);
        EXPECT_TRUE(check.ok) << check.trace.deviation << " " << check.positivity.min_eigenvalue;
    }
}

TEST(partial_trace_map, agrees_with_partial_trace) {
    Rng rng(14);
    TensorFactorization f({kQubit, AlgebraDescriptor::matrix(3), kQubit});
    const std::size_t keep[] = {0, 2};
    auto m = partial_trace_map(f, keep);
    auto x = random_element(f.composite(), rng);
    EXPECT_LE(max_abs_diff(m(x), partial_trace(x, f, keep)), 1e-13);
}

TEST(channels, constructors_are_cptp) {
    Rng rng(15);
    EXPECT_TRUE(is_cptp(channels::depolarizing(3, 0.4)).ok);
    EXPECT_TRUE(is_cptp(channels::dephasing(2, 0.3)).ok);
    const Matrix u = Eigen::HouseholderQR<Matrix>(random_matrix(2, 2, rng)).householderQ();
    EXPECT_TRUE(is_cptp(channels::unitary(u)).ok);
    EXPECT_TRUE(is_cptp(channels::trace_map(AlgebraDescriptor({{"a", 2}, {"b", 1}}))).ok);
    EXPECT_THROW(channels::kraus({}), Error);
}

TEST(jamiolkowski_cache, concurrent_first_access_is_consistent) {
    Rng rng(16);
    auto e = random_cptp(3, 3, rng);
    auto copy = e;
    std::vector<const AlgebraElement *> seen(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] { seen[t] = &(t % 2 ? copy : e).jamiolkowski_matrix(); });
    }
    for (auto &t : threads) t.join();
    for (int t = 1; t < 4; ++t) EXPECT_EQ(seen[t], seen[0]);
}
