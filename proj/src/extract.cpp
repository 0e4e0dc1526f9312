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

#include "sot/extract.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace sot {

namespace {

void check_lives_on(const AlgebraElement &t, const TensorFactorization &f) {
    if (!(t.algebra() == f.composite())) {
        throw Error(
            ErrorCode::AlgebraMismatch,
            "element lives on " + t.algebra().to_string() + ", factorization composes to " +
                f.composite().to_string());
    }
}

AlgebraDescriptor composite_range(const TensorFactorization &f, std::size_t from, std::size_t to) {
    return TensorFactorization(std::vector<AlgebraDescriptor>(f.factors().begin() + from, f.factors().begin() + to))
        .composite();
}

TensorFactorization adjacent_pair(const TensorFactorization &f, std::size_t i) {
    return TensorFactorization({f.factor(i - 1), f.factor(i)});
}

AlgebraElement adjacent_marginal(const AlgebraElement &t, const TensorFactorization &f, std::size_t i) {
    const std::size_t keep[] = {i - 1, i};
    return partial_trace(t, f, keep);
}

AlgebraElement pad(const AlgebraElement &x, const TensorFactorization &f, std::size_t first, std::size_t last) {
    AlgebraElement out = x;
    if (first > 0) {
        out = tensor_elements(AlgebraElement::identity(composite_range(f, 0, first)), out);
    }
    if (last + 1 < f.size()) {
        out = tensor_elements(out, AlgebraElement::identity(composite_range(f, last + 1, f.size())));
    }
    return out;
}

}  // namespace

PdoReport is_pdo(const AlgebraElement &t, const TensorFactorization &f, double tol) {
    check_lives_on(t, f);
    PdoReport report;
    report.hermiticity_deviation = hermiticity_deviation(t);
    report.self_adjoint = report.hermiticity_deviation <= tol;
    report.trace_deviation = std::abs(t.trace() - Complex(1.0));
    bool marginals_ok = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t keep[] = {i};
        const auto m = partial_trace(t, f, keep);
        MarginalReport mr;
        mr.factor = i;
        mr.is_state = is_state(m, tol);
        mr.min_eigenvalue = min_eigenvalue(m);
        mr.trace_deviation = std::abs(m.trace() - Complex(1.0));
        marginals_ok = marginals_ok && mr.is_state;
        report.marginals.push_back(mr);
    }
    report.ok = report.self_adjoint && report.trace_deviation <= tol && marginals_ok;
    return report;
}

SylvesterSolution solve_sylvester(const AlgebraElement &t, const TensorFactorization &f, double threshold) {
    if (f.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "Sylvester solve needs at least two factors");
    }
    check_lives_on(t, f);
    const std::size_t keep[] = {0};
    const auto marginal = partial_trace(t, f, keep);
    const double margin = min_eigenvalue(marginal);
    if (!(margin > threshold)) {
        std::ostringstream msg;
        msg << "marginal on factor 0 has eigenvalue " << margin << " <= " << threshold;
        throw Error(ErrorCode::SingularMarginal, msg.str());
    }
    const auto a = tensor_elements(marginal, AlgebraElement::identity(composite_range(f, 1, f.size())));

    std::vector<Matrix> xs;
    double residual = 0.0;
    for (std::size_t b = 0; b < a.blocks().size(); ++b) {
        const Matrix &ab = a.block(b);
        const Matrix h = 0.5 * (ab + ab.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
        const Matrix &v = solver.eigenvectors();
        const Eigen::VectorXd &lam = solver.eigenvalues();
        Matrix rotated = v.adjoint() * t.block(b) * v;
        for (Eigen::Index p = 0; p < rotated.rows(); ++p) {
            for (Eigen::Index q = 0; q < rotated.cols(); ++q) {
                rotated(p, q) *= 2.0 / (lam(p) + lam(q));
            }
        }
        Matrix x = v * rotated * v.adjoint();
        const Matrix r = ab * x + x * ab - 2.0 * t.block(b);
        Eigen::JacobiSVD<Matrix> svd(r);
        if (svd.singularValues().size() > 0) {
            residual = std::max(residual, svd.singularValues()(0));
        }
        xs.push_back(std::move(x));
    }
    return SylvesterSolution{AlgebraElement(t.algebra(), std::move(xs)), residual, margin};
}

PairReport in_T_star_pair(const AlgebraElement &t, const TensorFactorization &f, double tol) {
    if (f.size() != 2) {
        throw Error(ErrorCode::InvalidArgument, "pair membership needs a two-factor split");
    }
    PairReport report;
    report.pdo = is_pdo(t, f, tol);
    const std::size_t keep[] = {0};
    report.spectrum_margin = min_eigenvalue(partial_trace(t, f, keep));
    report.invertible = report.spectrum_margin > kInvertibilityThreshold;
    report.choi_min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    report.residual = std::numeric_limits<double>::quiet_NaN();
    if (report.invertible) {
        const auto sol = solve_sylvester(t, f);
        const auto e = jamiolkowski_inverse(sol.x, f);
        report.cptp = is_cptp(e, tol);
        report.choi_min_eigenvalue = report.cptp->positivity.min_eigenvalue;
        report.residual = sol.residual;
    }
    report.ok = report.pdo.ok && report.invertible && report.cptp.has_value() && report.cptp->ok;
    return report;
}

ChainReport in_T_star_chain(const AlgebraElement &t, const TensorFactorization &f, double tol, double jordan_tol) {
    if (f.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "chain membership needs at least two factors");
    }
    check_lives_on(t, f);
    const std::size_t n = f.size() - 1;
    ChainReport report;
    report.pairs_ok = true;
    bool solvable = true;
    for (std::size_t i = 1; i <= n; ++i) {
        report.pairs.push_back(in_T_star_pair(adjacent_marginal(t, f, i), adjacent_pair(f, i), tol));
        report.pairs_ok = report.pairs_ok && report.pairs.back().ok;
        solvable = solvable && report.pairs.back().invertible;
    }
    if (solvable) {
        const auto global = solve_sylvester(t, f);
        std::vector<AlgebraElement> factors;
        for (std::size_t i = 1; i <= n; ++i) {
            const auto local = solve_sylvester(adjacent_marginal(t, f, i), adjacent_pair(f, i));
            factors.push_back(pad(local.x, f, i - 1, i));
        }
        report.jordan_deviation = max_abs_diff(global.x, extended_jordan(factors));
        report.jordan_ok = report.jordan_deviation <= jordan_tol;
    } else {
        report.jordan_deviation = std::numeric_limits<double>::infinity();
        report.jordan_ok = false;
    }
    report.ok = report.pairs_ok && report.jordan_ok;
    report.disagreement = report.pairs_ok != report.jordan_ok;
    return report;
}

Extraction extract_process(const AlgebraElement &t, const TensorFactorization &f, bool force, double tol) {
    auto membership = in_T_star_chain(t, f, tol);
    for (std::size_t i = 0; i < membership.pairs.size(); ++i) {
        if (!membership.pairs[i].invertible) {
            std::ostringstream msg;
            msg << "marginal on factor " << i << " has eigenvalue " << membership.pairs[i].spectrum_margin;
            throw Error(ErrorCode::SingularMarginal, msg.str());
        }
    }
    if (!membership.ok && !force) {
        std::ostringstream msg;
        msg << "element is outside the extractable class (adjacent pairs "
            << (membership.pairs_ok ? "pass" : "fail") << ", Jordan factorization deviation "
            << membership.jordan_deviation << ")";
        throw Error(ErrorCode::NotInTStar, msg.str());
    }
    ExtractionDiagnostics diag;
    std::vector<SuperOperator> maps;
    for (std::size_t i = 1; i < f.size(); ++i) {
        const auto pair = adjacent_pair(f, i);
        const auto sol = solve_sylvester(adjacent_marginal(t, f, i), pair);
        maps.push_back(jamiolkowski_inverse(sol.x, pair));
        const auto check = is_cptp(maps.back(), tol);
        diag.cptp.push_back(check.ok);
        diag.choi_min_eig.push_back(check.positivity.min_eigenvalue);
        diag.residuals.push_back(sol.residual);
    }
    diag.membership = std::move(membership);
    const std::size_t keep[] = {0};
    return Extraction{ProcessChain(partial_trace(t, f, keep), std::move(maps)), std::move(diag)};
}

}  // namespace sot
