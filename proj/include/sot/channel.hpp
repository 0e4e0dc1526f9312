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

#ifndef SOT_CHANNEL_HPP
#define SOT_CHANNEL_HPP

#include <functional>
#include <memory>
#include <string>

#include "sot/algebra.hpp"

namespace sot {

namespace detail {
struct JamiolkowskiCache;
}

/// A linear map between multi-matrix algebras.
///
/// Stored as one action matrix per (codomain block y, domain block x) pair,
/// acting on row-major vectorized inputs: column i*m+j of component (y, x)
/// holds vec(E_yx(E_ij)) where vec(A)[p*n+q] = A(p, q). Composition is then
/// plain matrix multiplication of components.
///
/// Instances are immutable. The channel state is computed lazily on first
/// request and shared between copies.
class SuperOperator {
   public:
    /// `components` is indexed by y * domain.block_count() + x.
    SuperOperator(AlgebraDescriptor domain, AlgebraDescriptor codomain, std::vector<Matrix> components);

    /// Build a map by evaluating a linear function on every matrix unit of
    /// the domain.
    static SuperOperator from_action(
        const AlgebraDescriptor &domain,
        const AlgebraDescriptor &codomain,
        const std::function<AlgebraElement(const AlgebraElement &)> &action);

    const AlgebraDescriptor &domain() const {
        return domain_;
    }
    const AlgebraDescriptor &codomain() const {
        return codomain_;
    }
    const Matrix &component(std::size_t y, std::size_t x) const {
        return components_[y * domain_.block_count() + x];
    }
    const std::vector<Matrix> &components() const {
        return components_;
    }

    AlgebraElement apply(const AlgebraElement &x) const;
    AlgebraElement operator()(const AlgebraElement &x) const {
        return apply(x);
    }

    /// (id (x) E)(mu*(1)), cached.
    const AlgebraElement &jamiolkowski_matrix() const;

   private:
    AlgebraDescriptor domain_;
    AlgebraDescriptor codomain_;
    std::vector<Matrix> components_;
    std::shared_ptr<detail::JamiolkowskiCache> cache_;
};

SuperOperator operator+(const SuperOperator &a, const SuperOperator &b);
SuperOperator operator*(Complex scalar, const SuperOperator &a);
/// Largest entrywise difference between action matrices.
double max_abs_diff(const SuperOperator &a, const SuperOperator &b);

/// f after e. Throws AlgebraMismatch unless codomain(e) == domain(f).
SuperOperator compose(const SuperOperator &f, const SuperOperator &e);
SuperOperator tensor(const SuperOperator &e, const SuperOperator &f);
/// Adjoint with respect to the Hilbert-Schmidt pairing tr(A^dagger B).
SuperOperator hs_dual(const SuperOperator &e);

struct ChannelState {
    AlgebraElement value;
    AlgebraDescriptor domain;
    AlgebraDescriptor codomain;
};

ChannelState jamiolkowski(const SuperOperator &e);
/// Inverse Jamiolkowski map, J^{-1}(t)(rho) = tr_A((rho (x) 1) t).
SuperOperator jamiolkowski_inverse(
    const AlgebraElement &t, const AlgebraDescriptor &domain, const AlgebraDescriptor &codomain);
SuperOperator jamiolkowski_inverse(const AlgebraElement &t, const TensorFactorization &pair);
SuperOperator jamiolkowski_inverse(const ChannelState &state);

/// sum_ij E_ij (x) E(E_ij), one block per component pair.
AlgebraElement choi_matrix(const SuperOperator &e);

struct TraceCheck {
    bool ok = false;
    /// Largest entry of hs_dual(e)(1) - 1.
    double deviation = 0.0;
};

struct DaggerCheck {
    bool ok = false;
    /// E(A)^dagger == E(A^dagger) on every matrix unit.
    bool direct = false;
    /// J[E] self-adjoint.
    bool via_jamiolkowski = false;
    double direct_deviation = 0.0;
    double jamiolkowski_deviation = 0.0;
    /// Matrix unit with the largest direct deviation, as (block, row, col).
    std::size_t witness_block = 0, witness_row = 0, witness_col = 0;
};

struct PositivityCheck {
    bool ok = false;
    double min_eigenvalue = 0.0;
    /// Component pair (y, x) holding the smallest Choi eigenvalue.
    std::size_t witness_y = 0, witness_x = 0;
};

struct CptpCheck {
    bool ok = false;
    TraceCheck trace;
    PositivityCheck positivity;
};

TraceCheck is_trace_preserving(const SuperOperator &e, double tol = kDefaultTol);
DaggerCheck is_dagger_preserving(const SuperOperator &e, double tol = kDefaultTol);
PositivityCheck is_completely_positive(const SuperOperator &e, double tol = kDefaultTol);
CptpCheck is_cptp(const SuperOperator &e, double tol = kDefaultTol);

/// Partial trace A_0 (x) ... (x) A_n -> (x)_{i in keep} A_i as a map.
SuperOperator partial_trace_map(const TensorFactorization &factorization, std::span<const std::size_t> keep);

namespace channels {

SuperOperator identity(const AlgebraDescriptor &algebra);
/// rho -> (1 - p) rho + p tr(rho) 1/d on a single matrix block.
SuperOperator depolarizing(std::size_t dim, double p);
/// rho -> (1 - p) rho + p diag(rho).
SuperOperator dephasing(std::size_t dim, double p);
/// rho -> U rho U^dagger.
SuperOperator unitary(const Matrix &u);
/// rho -> sum_k K_k rho K_k^dagger between single matrix blocks.
SuperOperator kraus(const std::vector<Matrix> &ops);
/// rho -> rho^T (trace- and dagger-preserving, not completely positive).
SuperOperator transpose(std::size_t dim);
/// A -> tr(A), onto the one-dimensional algebra.
SuperOperator trace_map(const AlgebraDescriptor &algebra);

}  // namespace channels

}  // namespace sot

#endif
