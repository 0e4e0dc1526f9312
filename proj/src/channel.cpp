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

#include <algorithm>
#include <limits>
#include <mutex>

namespace sot {

namespace detail {

struct JamiolkowskiCache {
    std::once_flag once;
    std::unique_ptr<const AlgebraElement> value;
};

}  // namespace detail

namespace {

using Index = Eigen::Index;

Eigen::VectorXcd vec(const Matrix &a) {
    const Index n = a.rows();
    Eigen::VectorXcd v(n * n);
    for (Index p = 0; p < n; ++p) {
        for (Index q = 0; q < n; ++q) {
            v(p * n + q) = a(p, q);
        }
    }
    return v;
}

Matrix unvec(const Eigen::VectorXcd &v, Index n) {
    Matrix a(n, n);
    for (Index p = 0; p < n; ++p) {
        for (Index q = 0; q < n; ++q) {
            a(p, q) = v(p * n + q);
        }
    }
    return a;
}

Index idim(const AlgebraDescriptor &a, std::size_t block) {
    return static_cast<Index>(a.dim(block));
}

}  // namespace

// ---------------------------------------------------------------------------
// SuperOperator

SuperOperator::SuperOperator(AlgebraDescriptor domain, AlgebraDescriptor codomain, std::vector<Matrix> components)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      components_(std::move(components)),
      cache_(std::make_shared<detail::JamiolkowskiCache>()) {
    const auto nx = domain_.block_count();
    const auto ny = codomain_.block_count();
    if (components_.size() != nx * ny) {
        throw Error(ErrorCode::ShapeMismatch, "superoperator needs one component per block pair");
    }
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t x = 0; x < nx; ++x) {
            const Matrix &c = components_[y * nx + x];
            const Index rows = idim(codomain_, y) * idim(codomain_, y);
            const Index cols = idim(domain_, x) * idim(domain_, x);
            if (c.rows() != rows || c.cols() != cols) {
                throw Error(ErrorCode::ShapeMismatch, "superoperator component has wrong shape");
            }
            if (!c.allFinite()) {
                throw Error(ErrorCode::InvalidArgument, "non-finite superoperator entry");
            }
        }
    }
}

SuperOperator SuperOperator::from_action(
    const AlgebraDescriptor &domain,
    const AlgebraDescriptor &codomain,
    const std::function<AlgebraElement(const AlgebraElement &)> &action) {
    const auto nx = domain.block_count();
    const auto ny = codomain.block_count();
    std::vector<Matrix> comps;
    comps.reserve(nx * ny);
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t x = 0; x < nx; ++x) {
            comps.push_back(Matrix::Zero(idim(codomain, y) * idim(codomain, y), idim(domain, x) * idim(domain, x)));
        }
    }
    for (std::size_t x = 0; x < nx; ++x) {
        const Index m = idim(domain, x);
        for (Index i = 0; i < m; ++i) {
            for (Index j = 0; j < m; ++j) {
                const auto out = action(AlgebraElement::matrix_unit(domain, x, i, j));
                if (!(out.algebra() == codomain)) {
                    throw Error(ErrorCode::AlgebraMismatch, "action landed outside the declared codomain");
                }
                for (std::size_t y = 0; y < ny; ++y) {
                    comps[y * nx + x].col(i * m + j) = vec(out.block(y));
                }
            }
        }
    }
    return SuperOperator(domain, codomain, std::move(comps));
}

AlgebraElement SuperOperator::apply(const AlgebraElement &x) const {
    if (!(x.algebra() == domain_)) {
        throw Error(
            ErrorCode::AlgebraMismatch,
            "input lives on " + x.algebra().to_string() + ", map expects " + domain_.to_string());
    }
    const auto nx = domain_.block_count();
    std::vector<Matrix> out;
    out.reserve(codomain_.block_count());
    for (std::size_t y = 0; y < codomain_.block_count(); ++y) {
        const Index n = idim(codomain_, y);
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n * n);
        for (std::size_t b = 0; b < nx; ++b) {
            acc += components_[y * nx + b] * vec(x.block(b));
        }
        out.push_back(unvec(acc, n));
    }
    return AlgebraElement(codomain_, std::move(out));
}

const AlgebraElement &SuperOperator::jamiolkowski_matrix() const {
    std::call_once(cache_->once, [this] {
        const auto nx = domain_.block_count();
        const auto ny = codomain_.block_count();
        std::vector<Matrix> blocks;
        blocks.reserve(nx * ny);
        for (std::size_t x = 0; x < nx; ++x) {
            const Index m = idim(domain_, x);
            for (std::size_t y = 0; y < ny; ++y) {
                const Index n = idim(codomain_, y);
                const Matrix &c = components_[y * nx + x];
                // sum_ij E_ij (x) E_yx(E_ji)
                Matrix j_block(m * n, m * n);
                for (Index i = 0; i < m; ++i) {
                    for (Index j = 0; j < m; ++j) {
                        for (Index p = 0; p < n; ++p) {
                            for (Index q = 0; q < n; ++q) {
                                j_block(i * n + p, j * n + q) = c(p * n + q, j * m + i);
                            }
                        }
                    }
                }
                blocks.push_back(std::move(j_block));
            }
        }
        cache_->value = std::make_unique<const AlgebraElement>(
            tensor_descriptors(domain_, codomain_), std::move(blocks));
    });
    return *cache_->value;
}

SuperOperator operator+(const SuperOperator &a, const SuperOperator &b) {
    if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) {
        throw Error(ErrorCode::AlgebraMismatch, "sum of maps with different signatures");
    }
    std::vector<Matrix> comps = a.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        comps[i] += b.components()[i];
    }
    return SuperOperator(a.domain(), a.codomain(), std::move(comps));
}

SuperOperator operator*(Complex scalar, const SuperOperator &a) {
    std::vector<Matrix> comps = a.components();
    for (auto &c : comps) {
        c *= scalar;
    }
    return SuperOperator(a.domain(), a.codomain(), std::move(comps));
}

double max_abs_diff(const SuperOperator &a, const SuperOperator &b) {
    if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) {
        throw Error(ErrorCode::AlgebraMismatch, "comparison of maps with different signatures");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.components().size(); ++i) {
        if (a.components()[i].size() > 0) {
            worst = std::max(worst, (a.components()[i] - b.components()[i]).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

SuperOperator compose(const SuperOperator &f, const SuperOperator &e) {
    if (!(e.codomain() == f.domain())) {
        throw Error(
            ErrorCode::AlgebraMismatch,
            "cannot compose: " + e.codomain().to_string() + " feeds " + f.domain().to_string());
    }
    const auto nx = e.domain().block_count();
    const auto ny = e.codomain().block_count();
    const auto nz = f.codomain().block_count();
    std::vector<Matrix> comps;
    comps.reserve(nz * nx);
    for (std::size_t z = 0; z < nz; ++z) {
        for (std::size_t x = 0; x < nx; ++x) {
            Matrix acc = f.component(z, 0) * e.component(0, x);
            for (std::size_t y = 1; y < ny; ++y) {
                acc += f.component(z, y) * e.component(y, x);
            }
            comps.push_back(std::move(acc));
        }
    }
    return SuperOperator(e.domain(), f.codomain(), std::move(comps));
}

SuperOperator tensor(const SuperOperator &e, const SuperOperator &f) {
    const auto domain = tensor_descriptors(e.domain(), f.domain());
    const auto codomain = tensor_descriptors(e.codomain(), f.codomain());
    const auto nx1 = e.domain().block_count(), nx2 = f.domain().block_count();
    const auto ny1 = e.codomain().block_count(), ny2 = f.codomain().block_count();
    const auto nx = nx1 * nx2;
    std::vector<Matrix> comps(ny1 * ny2 * nx);
    for (std::size_t y1 = 0; y1 < ny1; ++y1) {
        for (std::size_t y2 = 0; y2 < ny2; ++y2) {
            for (std::size_t x1 = 0; x1 < nx1; ++x1) {
                for (std::size_t x2 = 0; x2 < nx2; ++x2) {
                    const Matrix &c1 = e.component(y1, x1);
                    const Matrix &c2 = f.component(y2, x2);
                    const Index m1 = idim(e.domain(), x1), m2 = idim(f.domain(), x2);
                    const Index n1 = idim(e.codomain(), y1), n2 = idim(f.codomain(), y2);
                    const Index m = m1 * m2, n = n1 * n2;
                    Matrix c(n * n, m * m);
                    for (Index a1 = 0; a1 < m1; ++a1)
                        for (Index b1 = 0; b1 < m1; ++b1)
                            for (Index a2 = 0; a2 < m2; ++a2)
                                for (Index b2 = 0; b2 < m2; ++b2) {
                                    const Index col = (a1 * m2 + a2) * m + (b1 * m2 + b2);
                                    for (Index p1 = 0; p1 < n1; ++p1)
                                        for (Index q1 = 0; q1 < n1; ++q1) {
                                            const Complex v1 = c1(p1 * n1 + q1, a1 * m1 + b1);
                                            for (Index p2 = 0; p2 < n2; ++p2)
                                                for (Index q2 = 0; q2 < n2; ++q2) {
                                                    const Index row = (p1 * n2 + p2) * n + (q1 * n2 + q2);
                                                    c(row, col) = v1 * c2(p2 * n2 + q2, a2 * m2 + b2);
                                                }
                                        }
                                }
                    comps[(y1 * ny2 + y2) * nx + (x1 * nx2 + x2)] = std::move(c);
                }
            }
        }
    }
    return SuperOperator(domain, codomain, std::move(comps));
}

SuperOperator hs_dual(const SuperOperator &e) {
    const auto nx = e.domain().block_count();
    const auto ny = e.codomain().block_count();
    std::vector<Matrix> comps;
    comps.reserve(nx * ny);
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            comps.push_back(e.component(y, x).adjoint());
        }
    }
    return SuperOperator(e.codomain(), e.domain(), std::move(comps));
}

// ---------------------------------------------------------------------------
// Channel states

ChannelState jamiolkowski(const SuperOperator &e) {
    return ChannelState{e.jamiolkowski_matrix(), e.domain(), e.codomain()};
}

SuperOperator jamiolkowski_inverse(
    const AlgebraElement &t, const AlgebraDescriptor &domain, const AlgebraDescriptor &codomain) {
    if (!(t.algebra() == tensor_descriptors(domain, codomain))) {
        throw Error(ErrorCode::AlgebraMismatch, "channel state does not live on domain (x) codomain");
    }
    const auto nx = domain.block_count();
    const auto ny = codomain.block_count();
    std::vector<Matrix> comps(nx * ny);
    for (std::size_t x = 0; x < nx; ++x) {
        const Index m = idim(domain, x);
        for (std::size_t y = 0; y < ny; ++y) {
            const Index n = idim(codomain, y);
            const Matrix &tb = t.block(x * ny + y);
            Matrix c(n * n, m * m);
            for (Index i = 0; i < m; ++i) {
                for (Index j = 0; j < m; ++j) {
                    for (Index p = 0; p < n; ++p) {
                        for (Index q = 0; q < n; ++q) {
                            c(p * n + q, j * m + i) = tb(i * n + p, j * n + q);
                        }
                    }
                }
            }
            comps[y * nx + x] = std::move(c);
        }
    }
    return SuperOperator(domain, codomain, std::move(comps));
}

SuperOperator jamiolkowski_inverse(const AlgebraElement &t, const TensorFactorization &pair) {
    if (pair.size() != 2) {
        throw Error(ErrorCode::AlgebraMismatch, "inverse Jamiolkowski map needs a two-factor split");
    }
    return jamiolkowski_inverse(t, pair.factor(0), pair.factor(1));
}

SuperOperator jamiolkowski_inverse(const ChannelState &state) {
    return jamiolkowski_inverse(state.value, state.domain, state.codomain);
}

AlgebraElement choi_matrix(const SuperOperator &e) {
    const auto nx = e.domain().block_count();
    const auto ny = e.codomain().block_count();
    std::vector<Matrix> blocks;
    blocks.reserve(nx * ny);
    for (std::size_t x = 0; x < nx; ++x) {
        const Index m = idim(e.domain(), x);
        for (std::size_t y = 0; y < ny; ++y) {
            const Index n = idim(e.codomain(), y);
            const Matrix &c = e.component(y, x);
            Matrix b(m * n, m * n);
            for (Index i = 0; i < m; ++i) {
                for (Index j = 0; j < m; ++j) {
                    for (Index p = 0; p < n; ++p) {
                        for (Index q = 0; q < n; ++q) {
                            b(i * n + p, j * n + q) = c(p * n + q, i * m + j);
                        }
                    }
                }
            }
            blocks.push_back(std::move(b));
        }
    }
    return AlgebraElement(tensor_descriptors(e.domain(), e.codomain()), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Verification

TraceCheck is_trace_preserving(const SuperOperator &e, double tol) {
    const auto pulled = hs_dual(e).apply(AlgebraElement::identity(e.codomain()));
    TraceCheck out;
    out.deviation = max_abs_diff(pulled, AlgebraElement::identity(e.domain()));
    out.ok = out.deviation <= tol;
    return out;
}

DaggerCheck is_dagger_preserving(const SuperOperator &e, double tol) {
    DaggerCheck out;
    for (std::size_t x = 0; x < e.domain().block_count(); ++x) {
        const auto m = e.domain().dim(x);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const auto lhs = e.apply(AlgebraElement::matrix_unit(e.domain(), x, i, j)).dagger();
                const auto rhs = e.apply(AlgebraElement::matrix_unit(e.domain(), x, j, i));
                const double dev = max_abs_diff(lhs, rhs);
                if (dev > out.direct_deviation) {
                    out.direct_deviation = dev;
                    out.witness_block = x;
                    out.witness_row = i;
                    out.witness_col = j;
                }
            }
        }
    }
    out.jamiolkowski_deviation = hermiticity_deviation(e.jamiolkowski_matrix());
    out.direct = out.direct_deviation <= tol;
    out.via_jamiolkowski = out.jamiolkowski_deviation <= tol;
    out.ok = out.direct && out.via_jamiolkowski;
    return out;
}

PositivityCheck is_completely_positive(const SuperOperator &e, double tol) {
    const auto choi = choi_matrix(e);
    const auto ny = e.codomain().block_count();
    PositivityCheck out;
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    bool hermitian = true;
    for (std::size_t b = 0; b < choi.blocks().size(); ++b) {
        const Matrix &c = choi.block(b);
        if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol) {
            hermitian = false;
        }
        const Matrix h = 0.5 * (c + c.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
        const double lo = solver.eigenvalues().minCoeff();
        if (lo < out.min_eigenvalue) {
            out.min_eigenvalue = lo;
            out.witness_x = b / ny;
            out.witness_y = b % ny;
        }
    }
    out.ok = hermitian && out.min_eigenvalue >= -tol;
    return out;
}

CptpCheck is_cptp(const SuperOperator &e, double tol) {
    CptpCheck out;
    out.trace = is_trace_preserving(e, tol);
    out.positivity = is_completely_positive(e, tol);
    out.ok = out.trace.ok && out.positivity.ok;
    return out;
}

SuperOperator partial_trace_map(const TensorFactorization &factorization, std::span<const std::size_t> keep) {
    const auto target = factorization.restrict_to(keep).composite();
    return SuperOperator::from_action(
        factorization.composite(), target, [&](const AlgebraElement &a) {
            return partial_trace(a, factorization, keep);
        });
}

// ---------------------------------------------------------------------------
// Named channels

namespace channels {

SuperOperator identity(const AlgebraDescriptor &algebra) {
    const auto n = algebra.block_count();
    std::vector<Matrix> comps;
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const Index rows = idim(algebra, y) * idim(algebra, y);
            const Index cols = idim(algebra, x) * idim(algebra, x);
            comps.push_back(x == y ? Matrix(Matrix::Identity(rows, cols)) : Matrix(Matrix::Zero(rows, cols)));
        }
    }
    return SuperOperator(algebra, algebra, std::move(comps));
}

SuperOperator depolarizing(std::size_t dim, double p) {
    const auto alg = AlgebraDescriptor::matrix(dim);
    const Matrix mixed = Matrix::Identity(dim, dim) / static_cast<double>(dim);
    return SuperOperator::from_action(alg, alg, [&](const AlgebraElement &a) {
        return AlgebraElement(alg, {(1.0 - p) * a.block(0) + p * a.block(0).trace() * mixed});
    });
}

SuperOperator dephasing(std::size_t dim, double p) {
    const auto alg = AlgebraDescriptor::matrix(dim);
    return SuperOperator::from_action(alg, alg, [&](const AlgebraElement &a) {
        Matrix diag = Matrix::Zero(dim, dim);
        diag.diagonal() = a.block(0).diagonal();
        return AlgebraElement(alg, {(1.0 - p) * a.block(0) + p * diag});
    });
}

SuperOperator unitary(const Matrix &u) {
    return kraus({u});
}

SuperOperator kraus(const std::vector<Matrix> &ops) {
    if (ops.empty()) {
        throw Error(ErrorCode::EmptyList, "Kraus map needs at least one operator");
    }
    const auto in = AlgebraDescriptor::matrix(static_cast<std::size_t>(ops.front().cols()));
    const auto out = AlgebraDescriptor::matrix(static_cast<std::size_t>(ops.front().rows()));
    for (const auto &k : ops) {
        if (k.rows() != ops.front().rows() || k.cols() != ops.front().cols()) {
            throw Error(ErrorCode::ShapeMismatch, "Kraus operators differ in shape");
        }
    }
    return SuperOperator::from_action(in, out, [&](const AlgebraElement &a) {
        Matrix acc = Matrix::Zero(out.dim(0), out.dim(0));
        for (const auto &k : ops) {
            acc += k * a.block(0) * k.adjoint();
        }
        return AlgebraElement(out, {acc});
    });
}

SuperOperator transpose(std::size_t dim) {
    const auto alg = AlgebraDescriptor::matrix(dim);
    return SuperOperator::from_action(alg, alg, [&](const AlgebraElement &a) {
        return AlgebraElement(alg, {a.block(0).transpose()});
    });
}

SuperOperator trace_map(const AlgebraDescriptor &algebra) {
    const auto scalars = AlgebraDescriptor::matrix(1);
    return SuperOperator::from_action(algebra, scalars, [&](const AlgebraElement &a) {
        Matrix t(1, 1);
        t(0, 0) = a.trace();
        return AlgebraElement(scalars, {t});
    });
}

}  // namespace channels

}  // namespace sot
