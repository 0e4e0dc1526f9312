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

#ifndef SOT_EXTRACT_HPP
#define SOT_EXTRACT_HPP

#include <optional>
#include <vector>

#include "sot/nstep.hpp"

namespace sot {

/// Smallest eigenvalue a marginal may have and still count as invertible.
inline constexpr double kInvertibilityThreshold = 1e-9;

struct MarginalReport {
    std::size_t factor = 0;
    bool is_state = false;
    double min_eigenvalue = 0.0;
    double trace_deviation = 0.0;
};

struct PdoReport {
    bool ok = false;
    bool self_adjoint = false;
    double hermiticity_deviation = 0.0;
    double trace_deviation = 0.0;
    /// One entry per factor, in factor order.
    std::vector<MarginalReport> marginals;
};

/// Self-adjoint, unit trace, and every single-factor marginal a state.
PdoReport is_pdo(const AlgebraElement &t, const TensorFactorization &f, double tol = kDefaultTol);

struct SylvesterSolution {
    AlgebraElement x;
    /// Spectral norm of A X + X A - 2 t, maximized over blocks.
    double residual = 0.0;
    /// Smallest eigenvalue of tr_0(t).
    double spectrum_margin = 0.0;
};

/// Solves (A (x) 1) X + X (A (x) 1) = 2 t with A = tr_0(t), the marginal on
/// factor 0 of `f`. The equation is solved blockwise in the eigenbasis of the
/// hermitian part of A (x) 1. Throws SingularMarginal when the smallest
/// eigenvalue of A is at most `threshold`.
SylvesterSolution solve_sylvester(
    const AlgebraElement &t, const TensorFactorization &f, double threshold = kInvertibilityThreshold);

struct PairReport {
    bool ok = false;
    PdoReport pdo;
    bool invertible = false;
    double spectrum_margin = 0.0;
    /// Set only when the marginal is invertible.
    std::optional<CptpCheck> cptp;
    double choi_min_eigenvalue = 0.0;
    double residual = 0.0;
};

/// PDO with invertible tr_B(t) whose J^{-1}(X_t) is CPTP. `f` must have two factors.
PairReport in_T_star_pair(const AlgebraElement &t, const TensorFactorization &f, double tol = kDefaultTol);

struct ChainReport {
    /// Both conditions hold.
    bool ok = false;
    /// Every adjacent marginal tr_{i-1,i}(t) passes in_T_star_pair.
    bool pairs_ok = false;
    std::vector<PairReport> pairs;
    /// The global X_t equals Jor(X_{t_1} (x) 1, ..., 1 (x) X_{t_n}).
    bool jordan_ok = false;
    /// Largest entry of the difference; infinity when it could not be evaluated.
    double jordan_deviation = 0.0;
    /// The two conditions gave different verdicts.
    bool disagreement = false;
};

inline constexpr double kJordanFactorizationTol = 1e-8;

/// Evaluates both membership conditions independently. `f` must have at least two factors.
ChainReport in_T_star_chain(
    const AlgebraElement &t, const TensorFactorization &f, double tol = kDefaultTol,
    double jordan_tol = kJordanFactorizationTol);

struct ExtractionDiagnostics {
    std::vector<bool> cptp;
    std::vector<double> choi_min_eig;
    std::vector<double> residuals;
    ChainReport membership;
};

struct Extraction {
    ProcessChain chain;
    ExtractionDiagnostics diagnostics;
};

/// (tr_0(t), J^{-1}(X_{t_1}), ..., J^{-1}(X_{t_n})) with t_i = tr_{i-1,i}(t).
/// Throws NotInTStar when `t` fails either membership condition unless `force`
/// is set, and SingularMarginal when some marginal cannot be inverted.
Extraction extract_process(
    const AlgebraElement &t, const TensorFactorization &f, bool force = false, double tol = kDefaultTol);

}  // namespace sot

#endif
