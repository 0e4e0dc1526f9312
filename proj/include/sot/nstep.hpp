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

#ifndef SOT_NSTEP_HPP
#define SOT_NSTEP_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sot/bloom.hpp"

namespace sot {

/// An initial element on A_0 followed by maps A_0 -> A_1 -> ... -> A_n.
///
/// The constructor only checks that the maps chain; `rho` may be any element
/// and the maps need not be CPTP.
class ProcessChain {
   public:
    ProcessChain(AlgebraElement rho, std::vector<SuperOperator> channels);

    /// Like the constructor, but also requires `rho` to be a state.
    static ProcessChain checked(AlgebraElement rho, std::vector<SuperOperator> channels, double tol = kDefaultTol);

    const AlgebraElement &rho() const {
        return rho_;
    }
    const std::vector<SuperOperator> &channels() const {
        return channels_;
    }
    const SuperOperator &channel(std::size_t i) const {
        return channels_[i - 1];
    }
    /// Number of maps n.
    std::size_t length() const {
        return channels_.size();
    }
    /// A_0, ..., A_n.
    std::vector<AlgebraDescriptor> factors() const;
    TensorFactorization factorization() const;
    /// rho_i = E_i o ... o E_1 (rho); rho_0 = rho.
    AlgebraElement marginal(std::size_t i) const;
    std::vector<AlgebraElement> marginals() const;

   private:
    AlgebraElement rho_;
    std::vector<SuperOperator> channels_;
};

/// Binary tree whose leaves are the consecutive factor indices lo..hi.
class ParenTree {
   public:
    static ParenTree leaf(std::size_t index);
    /// Throws InvalidArgument unless right.lo() == left.hi() + 1.
    static ParenTree join(const ParenTree &left, const ParenTree &right);
    /// Nested JSON arrays such as "[[0,1],[2,3]]"; leaves must read 0..n in order.
    static ParenTree parse(const std::string &text);
    /// ((0 1) 2) ... n.
    static ParenTree left_comb(std::size_t n);
    /// 0 (1 (2 ... n)).
    static ParenTree right_comb(std::size_t n);

    bool is_leaf() const;
    std::size_t lo() const;
    std::size_t hi() const;
    std::size_t leaf_count() const {
        return hi() - lo() + 1;
    }
    /// Only valid for internal nodes.
    ParenTree left() const;
    ParenTree right() const;
    std::string to_string() const;

    bool operator==(const ParenTree &other) const {
        return to_string() == other.to_string();
    }

   private:
    struct Node;
    explicit ParenTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {
    }
    std::shared_ptr<const Node> node_;
};

/// All binary trees over leaves 0..n; there are Catalan(n) of them.
/// Throws TooLarge for n > 8.
std::vector<ParenTree> catalan_enumerate(std::size_t n);

/// The bloom A_0 -> A_0 (x) ... (x) A_n of the chain E_1..E_n along `tree`.
///
/// For a root with children spanning l..s and s+1..r the value is
/// bloom(bloom_right(E_{s+2}..E_r) o E_{s+1} o tr) o bloom_left(E_{l+1}..E_s),
/// where a leaf contributes the identity and tr keeps the last factor of the
/// left span. Leaf-left and leaf-right roots are the special cases of this rule.
SuperOperator bloom_paren(
    const ParenTree &tree, std::span<const SuperOperator> channels, const BloomKind &kind = BloomKind::symmetric());

/// bloom_paren(tree, chain.channels(), kind) applied to chain.rho().
AlgebraElement state_over_time(
    const ProcessChain &chain, const ParenTree &tree, const BloomKind &kind = BloomKind::symmetric());
/// (bloom(E_n o tr) o ... o bloom(E_2 o tr) o bloom(E_1))(rho).
AlgebraElement state_over_time(const ProcessChain &chain, const BloomKind &kind = BloomKind::symmetric());

/// The symmetric state over time of the chain.
AlgebraElement yinyang(const ProcessChain &chain);

/// Sum over subsets S of [n] of J_{s_m}...J_{s_1} (rho (x) 1) J_{c_1}...J_{c_k} / 2^n,
/// with J_j = 1 (x) J[E_j] (x) 1 acting on factors j-1, j. Throws ChainTooLong for n > 20.
AlgebraElement yinyang_sum_formula(const ProcessChain &chain);

/// Jor(rho (x) 1, J_1, ..., J_n), right-nested.
AlgebraElement yinyang_jordan_formula(const ProcessChain &chain);

/// J[E_j] padded with identities to act on factors j-1, j of the chain's composite.
AlgebraElement padded_jamiolkowski(const ProcessChain &chain, std::size_t j);

/// Partial trace onto `keep`.
AlgebraElement multi_marginal(
    const AlgebraElement &tau, const TensorFactorization &factorization, std::span<const std::size_t> keep);

/// The process seen at times i_1 < ... < i_m: (rho_{i_1}, E_{i_2} o ... o E_{i_1 + 1}, ...).
/// A single kept index yields an empty channel list, so the result is returned
/// as its parts rather than a ProcessChain.
struct CoarseGrainedProcess {
    AlgebraElement rho;
    std::vector<SuperOperator> channels;
};
CoarseGrainedProcess coarse_grained_chain(const ProcessChain &chain, std::span<const std::size_t> keep);

struct ReductionReport {
    bool ok = false;
    double deviation = 0.0;
};

/// Compares the state over time of the chain with that of
/// (rho, E_1, ..., E_{i-1}, yinyang(E_{i+1}) o E_i, E_{i+2} o tr, E_{i+3}, ..., E_n).
/// Throws IndexOutOfRange unless 1 <= i <= n - 1.
ReductionReport reduction_identity_check(const ProcessChain &chain, std::size_t i, double tol = kDefaultTol);

}  // namespace sot

#endif
