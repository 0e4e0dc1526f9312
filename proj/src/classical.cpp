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

#include "sot/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sot {

namespace {

void require_classical(const AlgebraDescriptor &a, const char *what) {
    if (!a.is_classical()) {
        throw Error(ErrorCode::NotClassical, std::string(what) + " " + a.to_string() + " has a block of size > 1");
    }
}

}  // namespace

StochasticMap::StochasticMap(
    std::vector<std::string> source, std::vector<std::string> target, Eigen::MatrixXd probs, double tol)
    : source_(std::move(source)), target_(std::move(target)), probs_(std::move(probs)) {
    if (source_.empty() || target_.empty()) {
        throw Error(ErrorCode::EmptyList, "stochastic map needs nonempty label sets");
    }
    if (probs_.rows() != static_cast<Eigen::Index>(target_.size()) ||
        probs_.cols() != static_cast<Eigen::Index>(source_.size())) {
        throw Error(ErrorCode::ShapeMismatch, "probability matrix must be |target| x |source|");
    }
    for (Eigen::Index x = 0; x < probs_.cols(); ++x) {
        for (Eigen::Index y = 0; y < probs_.rows(); ++y) {
            const double v = probs_(y, x);
            if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) {
                throw Error(ErrorCode::InvalidArgument, "conditional probabilities must lie in [0, 1]");
            }
        }
        if (std::abs(probs_.col(x).sum() - 1.0) > tol) {
            throw Error(ErrorCode::InvalidArgument, "column for source " + source_[x] + " does not sum to 1");
        }
    }
}

StochasticMap StochasticMap::identity(std::vector<std::string> labels) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    return StochasticMap(labels, labels, Eigen::MatrixXd::Identity(n, n));
}

StochasticMap StochasticMap::bit_flip(double p) {
    Eigen::MatrixXd m(2, 2);
    m << 1.0 - p, p, p, 1.0 - p;
    return StochasticMap({"0", "1"}, {"0", "1"}, m);
}

ProbDist::ProbDist(std::vector<std::string> labels, Eigen::VectorXd weights, bool quasi, double tol)
    : labels_(std::move(labels)), weights_(std::move(weights)), quasi_(quasi) {
    if (labels_.empty()) {
        throw Error(ErrorCode::EmptyList, "distribution needs a nonempty label set");
    }
    if (weights_.size() != static_cast<Eigen::Index>(labels_.size())) {
        throw Error(ErrorCode::ShapeMismatch, "one weight per label");
    }
    if (!weights_.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "non-finite weight");
    }
    if (!quasi_ && weights_.minCoeff() < -tol) {
        throw Error(ErrorCode::InvalidArgument, "negative weight in a probability distribution");
    }
    if (std::abs(weights_.sum() - 1.0) > tol) {
        throw Error(ErrorCode::InvalidArgument, "weights do not sum to 1");
    }
}

SuperOperator q_embed(const StochasticMap &f) {
    const auto domain = AlgebraDescriptor::classical(f.source());
    const auto codomain = AlgebraDescriptor::classical(f.target());
    std::vector<Matrix> comps;
    for (std::size_t y = 0; y < f.target().size(); ++y) {
        for (std::size_t x = 0; x < f.source().size(); ++x) {
            comps.push_back(Matrix::Constant(1, 1, f.probs()(y, x)));
        }
    }
    return SuperOperator(domain, codomain, std::move(comps));
}

AlgebraElement as_element(const ProbDist &p) {
    std::vector<Matrix> blocks;
    for (Eigen::Index i = 0; i < p.weights().size(); ++i) {
        blocks.push_back(Matrix::Constant(1, 1, p.weights()(i)));
    }
    return AlgebraElement(AlgebraDescriptor::classical(p.labels()), std::move(blocks));
}

ProbDist as_dist(const AlgebraElement &x, bool quasi, double tol) {
    require_classical(x.algebra(), "algebra");
    std::vector<std::string> labels;
    Eigen::VectorXd w(static_cast<Eigen::Index>(x.blocks().size()));
    for (std::size_t i = 0; i < x.blocks().size(); ++i) {
        labels.push_back(x.algebra().blocks()[i].label);
        if (std::abs(x.block(i)(0, 0).imag()) > tol) {
            throw Error(ErrorCode::InvalidArgument, "classical element has a complex weight");
        }
        w(static_cast<Eigen::Index>(i)) = x.block(i)(0, 0).real();
    }
    return ProbDist(std::move(labels), std::move(w), quasi, tol);
}

SuperOperator classical_bloom(const SuperOperator &e) {
    require_classical(e.domain(), "domain");
    require_classical(e.codomain(), "codomain");
    const auto nx = e.domain().block_count();
    const auto ny = e.codomain().block_count();
    const auto target = tensor_descriptors(e.domain(), e.codomain());
    std::vector<Matrix> comps;
    for (std::size_t xt = 0; xt < nx; ++xt) {
        for (std::size_t y = 0; y < ny; ++y) {
            for (std::size_t x = 0; x < nx; ++x) {
                comps.push_back(Matrix::Constant(1, 1, x == xt ? e.component(y, x)(0, 0) : Complex(0.0)));
            }
        }
    }
    return SuperOperator(e.domain(), target, std::move(comps));
}

JointDist classical_state_over_time(const ProbDist &p, const StochasticMap &f) {
    if (p.labels() != f.source()) {
        throw Error(ErrorCode::ChainMismatch, "distribution labels differ from the map's source labels");
    }
    const auto element = classical_bloom(q_embed(f)).apply(as_element(p));
    JointDist out{f.source(), f.target(), Eigen::MatrixXd(f.source().size(), f.target().size())};
    const auto ny = f.target().size();
    for (std::size_t x = 0; x < f.source().size(); ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            out.weights(x, y) = element.block(x * ny + y)(0, 0).real();
        }
    }
    return out;
}

ClassicalProcess classical_extract(const JointDist &joint, double threshold) {
    if (joint.weights.rows() != static_cast<Eigen::Index>(joint.source.size()) ||
        joint.weights.cols() != static_cast<Eigen::Index>(joint.target.size())) {
        throw Error(ErrorCode::ShapeMismatch, "joint weights must be |source| x |target|");
    }
    const Eigen::VectorXd marginal = joint.weights.rowwise().sum();
    Eigen::MatrixXd probs(joint.target.size(), joint.source.size());
    for (Eigen::Index x = 0; x < marginal.size(); ++x) {
        if (!(marginal(x) > threshold)) {
            std::ostringstream msg;
            msg << "source " << joint.source[x] << " has marginal weight " << marginal(x);
            throw Error(ErrorCode::SingularMarginal, msg.str());
        }
        probs.col(x) = joint.weights.row(x).transpose() / marginal(x);
    }
    return ClassicalProcess{ProbDist(joint.source, marginal), StochasticMap(joint.source, joint.target, probs)};
}

ClassicalReductionReport check_classical_reduction(const AlgebraElement &rho, const SuperOperator &e, double tol) {
    const auto lifted = tensor_elements(rho, AlgebraElement::identity(e.codomain()));
    ClassicalReductionReport report;
    report.commutator_norm = max_abs(commutator(lifted, e.jamiolkowski_matrix()));
    report.commutes = report.commutator_norm <= tol;
    const auto r = bloom_apply(BloomKind::right(), e, rho);
    const auto l = bloom_apply(BloomKind::left(), e, rho);
    const auto s = bloom_apply(BloomKind::symmetric(), e, rho);
    report.bloom_spread = std::max({max_abs_diff(r, l), max_abs_diff(r, s), max_abs_diff(l, s)});
    report.blooms_agree = report.bloom_spread <= tol;
    return report;
}

}  // namespace sot
