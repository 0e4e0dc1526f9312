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

#ifndef SOT_CLASSICAL_HPP
#define SOT_CLASSICAL_HPP

#include <string>
#include <vector>

#include "sot/bloom.hpp"

namespace sot {

/// Marginal weights at or below this are treated as zero.
inline constexpr double kMarginalThreshold = 1e-12;

/// Column-stochastic matrix probs(y, x) = P(y | x).
class StochasticMap {
   public:
    StochasticMap(std::vector<std::string> source, std::vector<std::string> target, Eigen::MatrixXd probs,
                  double tol = kDefaultTol);

    static StochasticMap identity(std::vector<std::string> labels);
    /// Flip between two outcomes "0", "1" with probability p.
    static StochasticMap bit_flip(double p);

    const std::vector<std::string> &source() const {
        return source_;
    }
    const std::vector<std::string> &target() const {
        return target_;
    }
    const Eigen::MatrixXd &probs() const {
        return probs_;
    }

   private:
    std::vector<std::string> source_;
    std::vector<std::string> target_;
    Eigen::MatrixXd probs_;
};

class ProbDist {
   public:
    /// With `quasi` set, entries may be negative; they must still sum to 1.
    ProbDist(std::vector<std::string> labels, Eigen::VectorXd weights, bool quasi = false, double tol = kDefaultTol);

    const std::vector<std::string> &labels() const {
        return labels_;
    }
    const Eigen::VectorXd &weights() const {
        return weights_;
    }
    bool quasi() const {
        return quasi_;
    }

   private:
    std::vector<std::string> labels_;
    Eigen::VectorXd weights_;
    bool quasi_;
};

/// Joint distribution weights(x, y) over source x target.
struct JointDist {
    std::vector<std::string> source;
    std::vector<std::string> target;
    Eigen::MatrixXd weights;
};

/// delta_x -> sum_y f(y, x) delta_y.
SuperOperator q_embed(const StochasticMap &f);
/// The classical element sum_x p_x delta_x.
AlgebraElement as_element(const ProbDist &p);
/// Diagonal of a classical element; throws NotClassical.
ProbDist as_dist(const AlgebraElement &x, bool quasi = false, double tol = kDefaultTol);

/// delta_x -> sum_y E_yx delta_x (x) delta_y. Throws NotClassical.
SuperOperator classical_bloom(const SuperOperator &e);

/// P(x, y) = p(x) f(y | x).
JointDist classical_state_over_time(const ProbDist &p, const StochasticMap &f);

struct ClassicalProcess {
    ProbDist initial;
    StochasticMap map;
};

/// (p, f) with p the source marginal and f(y | x) = P(x, y) / p(x).
/// Throws SingularMarginal if some p(x) <= `threshold`.
ClassicalProcess classical_extract(const JointDist &joint, double threshold = kMarginalThreshold);

struct ClassicalReductionReport {
    /// [rho (x) 1, J[E]] vanishes within tolerance.
    bool commutes = false;
    double commutator_norm = 0.0;
    /// Largest entrywise gap between the right, left and symmetric blooms.
    double bloom_spread = 0.0;
    bool blooms_agree = false;
};

ClassicalReductionReport check_classical_reduction(
    const AlgebraElement &rho, const SuperOperator &e, double tol = kDefaultTol);

}  // namespace sot

#endif
