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

#include <algorithm>

#include "json.hpp"

namespace sot {

namespace {

void check_chaining(const AlgebraDescriptor &start, std::span<const SuperOperator> channels) {
    if (channels.empty()) {
        throw Error(ErrorCode::EmptyList, "a process needs at least one map");
    }
    if (!(start == channels[0].domain())) {
        throw Error(
            ErrorCode::ChainMismatch,
            "initial element lives on " + start.to_string() + " but the first map expects " +
                channels[0].domain().to_string());
    }
    for (std::size_t i = 1; i < channels.size(); ++i) {
        if (!(channels[i - 1].codomain() == channels[i].domain())) {
            throw Error(
                ErrorCode::ChainMismatch,
                "map " + std::to_string(i) + " lands on " + channels[i - 1].codomain().to_string() + " but map " +
                    std::to_string(i + 1) + " expects " + channels[i].domain().to_string());
        }
    }
}

std::vector<AlgebraDescriptor> chain_factors(std::span<const SuperOperator> channels) {
    std::vector<AlgebraDescriptor> out{channels[0].domain()};
    for (const auto &c : channels) {
        out.push_back(c.codomain());
    }
    return out;
}

AlgebraDescriptor composite_of(std::span<const AlgebraDescriptor> factors) {
    return TensorFactorization(std::vector<AlgebraDescriptor>(factors.begin(), factors.end())).composite();
}

/// Map from the composite of `factors` onto its last factor.
SuperOperator trace_to_last(std::span<const AlgebraDescriptor> factors) {
    const TensorFactorization f(std::vector<AlgebraDescriptor>(factors.begin(), factors.end()));
    const std::size_t keep[] = {factors.size() - 1};
    return partial_trace_map(f, keep);
}

void check_keep(std::span<const std::size_t> keep, std::size_t factor_count) {
    if (keep.empty()) {
        throw Error(ErrorCode::IndexOutOfRange, "keep set is empty");
    }
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] >= factor_count || (k > 0 && keep[k] <= keep[k - 1])) {
            throw Error(ErrorCode::IndexOutOfRange, "keep set must be sorted, unique and within 0..n");
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// ProcessChain

ProcessChain::ProcessChain(AlgebraElement rho, std::vector<SuperOperator> channels)
    : rho_(std::move(rho)), channels_(std::move(channels)) {
    check_chaining(rho_.algebra(), channels_);
}

ProcessChain ProcessChain::checked(AlgebraElement rho, std::vector<SuperOperator> channels, double tol) {
    if (!is_state(rho, tol)) {
        throw Error(ErrorCode::InvalidArgument, "initial element is not a state");
    }
    return ProcessChain(std::move(rho), std::move(channels));
}

std::vector<AlgebraDescriptor> ProcessChain::factors() const {
    return chain_factors(channels_);
}

TensorFactorization ProcessChain::factorization() const {
    return TensorFactorization(factors());
}

AlgebraElement ProcessChain::marginal(std::size_t i) const {
    if (i > channels_.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "marginal index beyond chain length");
    }
    AlgebraElement out = rho_;
    for (std::size_t k = 0; k < i; ++k) {
        out = channels_[k].apply(out);
    }
    return out;
}

std::vector<AlgebraElement> ProcessChain::marginals() const {
    std::vector<AlgebraElement> out{rho_};
    for (const auto &c : channels_) {
        out.push_back(c.apply(out.back()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// ParenTree

struct ParenTree::Node {
    std::size_t lo;
    std::size_t hi;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
};

ParenTree ParenTree::leaf(std::size_t index) {
    return ParenTree(std::make_shared<const Node>(Node{index, index, nullptr, nullptr}));
}

ParenTree ParenTree::join(const ParenTree &left, const ParenTree &right) {
    if (right.lo() != left.hi() + 1) {
        throw Error(ErrorCode::InvalidArgument, "tree leaves must be consecutive and in order");
    }
    return ParenTree(std::make_shared<const Node>(Node{left.lo(), right.hi(), left.node_, right.node_}));
}

namespace {

ParenTree parse_tree(const nlohmann::json &j) {
    if (j.is_number_unsigned()) {
        return ParenTree::leaf(j.get<std::size_t>());
    }
    if (j.is_array() && j.size() == 2) {
        return ParenTree::join(parse_tree(j[0]), parse_tree(j[1]));
    }
    throw Error(ErrorCode::ParseError, "tree nodes must be leaf indices or pairs, got " + j.dump());
}

}  // namespace

ParenTree ParenTree::parse(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &ex) {
        throw Error(ErrorCode::ParseError, std::string("bad tree: ") + ex.what());
    }
    ParenTree tree = [&] {
        try {
            return parse_tree(j);
        } catch (const Error &ex) {
            if (ex.code() == ErrorCode::InvalidArgument) {
                throw Error(ErrorCode::ParseError, "tree leaves must read 0, 1, ..., n from left to right");
            }
            throw;
        }
    }();
    if (tree.lo() != 0) {
        throw Error(ErrorCode::ParseError, "tree leaves must start at 0");
    }
    return tree;
}

ParenTree ParenTree::left_comb(std::size_t n) {
    ParenTree t = leaf(0);
    for (std::size_t i = 1; i <= n; ++i) {
        t = join(t, leaf(i));
    }
    return t;
}

ParenTree ParenTree::right_comb(std::size_t n) {
    ParenTree t = leaf(n);
    for (std::size_t i = n; i-- > 0;) {
        t = join(leaf(i), t);
    }
    return t;
}

bool ParenTree::is_leaf() const {
    return node_->left == nullptr;
}

std::size_t ParenTree::lo() const {
    return node_->lo;
}

std::size_t ParenTree::hi() const {
    return node_->hi;
}

ParenTree ParenTree::left() const {
    return ParenTree(node_->left);
}

ParenTree ParenTree::right() const {
    return ParenTree(node_->right);
}

std::string ParenTree::to_string() const {
    if (is_leaf()) {
        return std::to_string(lo());
    }
    return "[" + left().to_string() + "," + right().to_string() + "]";
}

namespace {

std::vector<ParenTree> trees_between(std::size_t lo, std::size_t hi) {
    if (lo == hi) {
        return {ParenTree::leaf(lo)};
    }
    std::vector<ParenTree> out;
    for (std::size_t s = lo; s < hi; ++s) {
        const auto lefts = trees_between(lo, s);
        const auto rights = trees_between(s + 1, hi);
        for (const auto &l : lefts) {
            for (const auto &r : rights) {
                out.push_back(ParenTree::join(l, r));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<ParenTree> catalan_enumerate(std::size_t n) {
    if (n > 8) {
        throw Error(ErrorCode::TooLarge, "tree enumeration is limited to n <= 8");
    }
    return trees_between(0, n);
}

// ---------------------------------------------------------------------------
// Blooms of chains

namespace {

SuperOperator bloom_subtree(
    const ParenTree &tree,
    std::span<const SuperOperator> channels,
    std::span<const AlgebraDescriptor> factors,
    const BloomKind &kind) {
    if (tree.is_leaf()) {
        return channels::identity(factors[tree.lo()]);
    }
    const ParenTree left = tree.left();
    const ParenTree right = tree.right();
    const std::size_t l = tree.lo();
    const std::size_t s = left.hi();

    SuperOperator inner = channels[s];
    if (!right.is_leaf()) {
        inner = compose(bloom_subtree(right, channels, factors, kind), inner);
    }
    if (!left.is_leaf()) {
        inner = compose(inner, trace_to_last(factors.subspan(l, s - l + 1)));
    }
    SuperOperator out = bloom_as_map(kind, inner);
    if (!left.is_leaf()) {
        out = compose(out, bloom_subtree(left, channels, factors, kind));
    }
    return out;
}

}  // namespace

SuperOperator bloom_paren(const ParenTree &tree, std::span<const SuperOperator> channels, const BloomKind &kind) {
    if (channels.empty()) {
        throw Error(ErrorCode::EmptyList, "a process needs at least one map");
    }
    check_chaining(channels[0].domain(), channels);
    if (tree.lo() != 0 || tree.leaf_count() != channels.size() + 1) {
        throw Error(
            ErrorCode::ShapeMismatch,
            "tree " + tree.to_string() + " does not have leaves 0.." + std::to_string(channels.size()));
    }
    const auto factors = chain_factors(channels);
    return bloom_subtree(tree, channels, factors, kind);
}

AlgebraElement state_over_time(const ProcessChain &chain, const ParenTree &tree, const BloomKind &kind) {
    return bloom_paren(tree, chain.channels(), kind).apply(chain.rho());
}

AlgebraElement state_over_time(const ProcessChain &chain, const BloomKind &kind) {
    const auto factors = chain.factors();
    AlgebraElement tau = bloom_apply(kind, chain.channel(1), chain.rho());
    for (std::size_t i = 2; i <= chain.length(); ++i) {
        const auto step = compose(chain.channel(i), trace_to_last(std::span(factors).first(i)));
        tau = bloom_apply(kind, step, tau);
    }
    return tau;
}

AlgebraElement yinyang(const ProcessChain &chain) {
    return state_over_time(chain, BloomKind::symmetric());
}

AlgebraElement padded_jamiolkowski(const ProcessChain &chain, std::size_t j) {
    const std::size_t n = chain.length();
    if (j < 1 || j > n) {
        throw Error(ErrorCode::IndexOutOfRange, "map index must lie in 1..n");
    }
    const auto factors = chain.factors();
    AlgebraElement out = chain.channel(j).jamiolkowski_matrix();
    if (j >= 2) {
        out = tensor_elements(AlgebraElement::identity(composite_of(std::span(factors).first(j - 1))), out);
    }
    if (j < n) {
        out = tensor_elements(out, AlgebraElement::identity(composite_of(std::span(factors).subspan(j + 1))));
    }
    return out;
}

namespace {

AlgebraElement lifted_rho(const ProcessChain &chain) {
    const auto factors = chain.factors();
    return tensor_elements(chain.rho(), AlgebraElement::identity(composite_of(std::span(factors).subspan(1))));
}

}  // namespace

AlgebraElement yinyang_sum_formula(const ProcessChain &chain) {
    const std::size_t n = chain.length();
    if (n > 20) {
        throw Error(ErrorCode::ChainTooLong, "subset sum is limited to n <= 20");
    }
    std::vector<AlgebraElement> js;
    for (std::size_t j = 1; j <= n; ++j) {
        js.push_back(padded_jamiolkowski(chain, j));
    }
    const AlgebraElement lifted = lifted_rho(chain);
    AlgebraElement sum = AlgebraElement::zero(lifted.algebra());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        AlgebraElement term = lifted;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask >> j & 1) {
                term = js[j] * term;
            } else {
                term = term * js[j];
            }
        }
        sum += term;
    }
    sum *= Complex(1.0 / static_cast<double>(std::uint64_t{1} << n));
    return sum;
}

AlgebraElement yinyang_jordan_formula(const ProcessChain &chain) {
    std::vector<AlgebraElement> items{lifted_rho(chain)};
    for (std::size_t j = 1; j <= chain.length(); ++j) {
        items.push_back(padded_jamiolkowski(chain, j));
    }
    return extended_jordan(items);
}

AlgebraElement multi_marginal(
    const AlgebraElement &tau, const TensorFactorization &factorization, std::span<const std::size_t> keep) {
    check_keep(keep, factorization.size());
    return partial_trace(tau, factorization, keep);
}

CoarseGrainedProcess coarse_grained_chain(const ProcessChain &chain, std::span<const std::size_t> keep) {
    check_keep(keep, chain.length() + 1);
    CoarseGrainedProcess out{chain.marginal(keep[0]), {}};
    for (std::size_t k = 1; k < keep.size(); ++k) {
        SuperOperator segment = chain.channel(keep[k - 1] + 1);
        for (std::size_t i = keep[k - 1] + 2; i <= keep[k]; ++i) {
            segment = compose(chain.channel(i), segment);
        }
        out.channels.push_back(std::move(segment));
    }
    return out;
}

ReductionReport reduction_identity_check(const ProcessChain &chain, std::size_t i, double tol) {
    const std::size_t n = chain.length();
    if (i < 1 || i + 1 > n) {
        throw Error(ErrorCode::IndexOutOfRange, "reduction index must satisfy 1 <= i <= n - 1");
    }
    const auto factors = chain.factors();
    std::vector<SuperOperator> reduced;
    for (std::size_t k = 1; k < i; ++k) {
        reduced.push_back(chain.channel(k));
    }
    reduced.push_back(compose(bloom_as_map(BloomKind::symmetric(), chain.channel(i + 1)), chain.channel(i)));
    if (i + 2 <= n) {
        reduced.push_back(compose(chain.channel(i + 2), trace_to_last(std::span(factors).subspan(i, 2))));
    }
    for (std::size_t k = i + 3; k <= n; ++k) {
        reduced.push_back(chain.channel(k));
    }
    const auto lhs = yinyang(chain);
    const auto rhs = yinyang(ProcessChain(chain.rho(), std::move(reduced)));
    ReductionReport report;
    report.deviation = max_abs_diff(lhs, rhs);
    report.ok = report.deviation <= tol;
    return report;
}

}  // namespace sot
