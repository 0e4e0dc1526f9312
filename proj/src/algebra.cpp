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

#include "sot/algebra.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace sot {

namespace {

void require_same_algebra(const AlgebraElement &a, const AlgebraElement &b, const char *what) {
    if (!(a.algebra() == b.algebra())) {
        throw Error(
            ErrorCode::AlgebraMismatch,
            std::string(what) + ": " + a.algebra().to_string() + " vs " + b.algebra().to_string());
    }
}

// Flat offsets sum_i digit_i * stride_i enumerated over the factors in
// `subset`, first listed factor slowest.
std::vector<Eigen::Index> enumerate_offsets(
    const std::vector<std::size_t> &dims,
    const std::vector<std::size_t> &strides,
    const std::vector<std::size_t> &subset) {
    std::size_t count = 1;
    for (auto i : subset) {
        count *= dims[i];
    }
    std::vector<Eigen::Index> out(count, 0);
    std::vector<std::size_t> digits(subset.size(), 0);
    for (std::size_t n = 0; n < count; ++n) {
        Eigen::Index off = 0;
        for (std::size_t s = 0; s < subset.size(); ++s) {
            off += static_cast<Eigen::Index>(digits[s] * strides[subset[s]]);
        }
        out[n] = off;
        for (std::size_t s = subset.size(); s-- > 0;) {
            if (++digits[s] < dims[subset[s]]) {
                break;
            }
            digits[s] = 0;
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraDescriptor

AlgebraDescriptor::AlgebraDescriptor(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "algebra needs at least one block");
    }
    std::set<std::string> seen;
    for (const auto &b : blocks_) {
        if (b.dim == 0) {
            throw Error(ErrorCode::InvalidArgument, "block '" + b.label + "' has dimension 0");
        }
        if (!seen.insert(b.label).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate block label '" + b.label + "'");
        }
    }
}

AlgebraDescriptor AlgebraDescriptor::matrix(std::size_t dim, std::string label) {
    return AlgebraDescriptor({Block{std::move(label), dim}});
}

AlgebraDescriptor AlgebraDescriptor::classical(std::size_t count) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back(std::to_string(i));
    }
    return classical(std::move(labels));
}

AlgebraDescriptor AlgebraDescriptor::classical(std::vector<std::string> labels) {
    std::vector<Block> blocks;
    for (auto &l : labels) {
        blocks.push_back(Block{std::move(l), 1});
    }
    return AlgebraDescriptor(std::move(blocks));
}

std::size_t AlgebraDescriptor::total_dim() const {
    std::size_t total = 0;
    for (const auto &b : blocks_) {
        total += b.dim;
    }
    return total;
}

std::size_t AlgebraDescriptor::vector_dim() const {
    std::size_t total = 0;
    for (const auto &b : blocks_) {
        total += b.dim * b.dim;
    }
    return total;
}

bool AlgebraDescriptor::is_classical() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block &b) { return b.dim == 1; });
}

std::string AlgebraDescriptor::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) {
            out << " + ";
        }
        out << "M" << blocks_[i].dim << "[" << blocks_[i].label << "]";
    }
    return out.str();
}

AlgebraDescriptor tensor_descriptors(const AlgebraDescriptor &a, const AlgebraDescriptor &b) {
    std::vector<Block> blocks;
    blocks.reserve(a.block_count() * b.block_count());
    for (const auto &x : a.blocks()) {
        for (const auto &y : b.blocks()) {
            blocks.push_back(Block{x.label + "," + y.label, x.dim * y.dim});
        }
    }
    return AlgebraDescriptor(std::move(blocks));
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(AlgebraDescriptor algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (blocks_.size() != algebra_.block_count()) {
        throw Error(ErrorCode::ShapeMismatch, "block count does not match algebra " + algebra_.to_string());
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto d = static_cast<Eigen::Index>(algebra_.dim(i));
        if (blocks_[i].rows() != d || blocks_[i].cols() != d) {
            throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(i) + " has wrong shape");
        }
        if (!blocks_[i].allFinite()) {
            throw Error(ErrorCode::InvalidArgument, "non-finite entry in block " + std::to_string(i));
        }
    }
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor &algebra) {
    std::vector<Matrix> blocks;
    for (const auto &b : algebra.blocks()) {
        blocks.push_back(Matrix::Zero(b.dim, b.dim));
    }
    return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const AlgebraDescriptor &algebra) {
    std::vector<Matrix> blocks;
    for (const auto &b : algebra.blocks()) {
        blocks.push_back(Matrix::Identity(b.dim, b.dim));
    }
    return AlgebraElement(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::matrix_unit(
    const AlgebraDescriptor &algebra, std::size_t block, std::size_t row, std::size_t col) {
    if (block >= algebra.block_count() || row >= algebra.dim(block) || col >= algebra.dim(block)) {
        throw Error(ErrorCode::IndexOutOfRange, "matrix unit outside algebra");
    }
    auto e = zero(algebra);
    e.blocks_[block](row, col) = 1.0;
    return e;
}

AlgebraElement AlgebraElement::delta(const AlgebraDescriptor &algebra, std::size_t block) {
    if (block >= algebra.block_count()) {
        throw Error(ErrorCode::IndexOutOfRange, "block index outside algebra");
    }
    auto e = zero(algebra);
    e.blocks_[block].setIdentity();
    return e;
}

AlgebraElement AlgebraElement::from_matrix(const Matrix &m, std::string label) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "matrix must be square");
    }
    return AlgebraElement(AlgebraDescriptor::matrix(static_cast<std::size_t>(m.rows()), std::move(label)), {m});
}

AlgebraElement AlgebraElement::dagger() const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto &b : blocks_) {
        out.push_back(b.adjoint());
    }
    return AlgebraElement(algebra_, std::move(out));
}

Complex AlgebraElement::trace() const {
    Complex t = 0.0;
    for (const auto &b : blocks_) {
        t += b.trace();
    }
    return t;
}

AlgebraElement &AlgebraElement::operator+=(const AlgebraElement &other) {
    require_same_algebra(*this, other, "addition");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        blocks_[i] += other.blocks_[i];
    }
    return *this;
}

AlgebraElement &AlgebraElement::operator-=(const AlgebraElement &other) {
    require_same_algebra(*this, other, "subtraction");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        blocks_[i] -= other.blocks_[i];
    }
    return *this;
}

AlgebraElement &AlgebraElement::operator*=(Complex scalar) {
    for (auto &b : blocks_) {
        b *= scalar;
    }
    return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement &b) {
    a += b;
    return a;
}

AlgebraElement operator-(AlgebraElement a, const AlgebraElement &b) {
    a -= b;
    return a;
}

AlgebraElement operator*(Complex scalar, AlgebraElement a) {
    a *= scalar;
    return a;
}

AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b) {
    require_same_algebra(a, b, "product");
    std::vector<Matrix> out;
    out.reserve(a.blocks().size());
    for (std::size_t i = 0; i < a.blocks().size(); ++i) {
        out.push_back(a.block(i) * b.block(i));
    }
    return AlgebraElement(a.algebra(), std::move(out));
}

double max_abs_diff(const AlgebraElement &a, const AlgebraElement &b) {
    require_same_algebra(a, b, "comparison");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.blocks().size(); ++i) {
        if (a.block(i).size() > 0) {
            worst = std::max(worst, (a.block(i) - b.block(i)).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double max_abs(const AlgebraElement &a) {
    double worst = 0.0;
    for (const auto &b : a.blocks()) {
        worst = std::max(worst, b.cwiseAbs().maxCoeff());
    }
    return worst;
}

// ---------------------------------------------------------------------------
// TensorFactorization

namespace {

AlgebraDescriptor fold_composite(const std::vector<AlgebraDescriptor> &factors) {
    if (factors.empty()) {
        throw Error(ErrorCode::InvalidArgument, "factorization needs at least one factor");
    }
    AlgebraDescriptor acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        acc = tensor_descriptors(acc, factors[i]);
    }
    return acc;
}

}  // namespace

TensorFactorization::TensorFactorization(std::vector<AlgebraDescriptor> factors)
    : factors_(std::move(factors)), composite_(fold_composite(factors_)) {
}

std::vector<std::size_t> TensorFactorization::block_tuple(std::size_t composite_block) const {
    std::vector<std::size_t> tuple(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        const auto n = factors_[i].block_count();
        tuple[i] = composite_block % n;
        composite_block /= n;
    }
    return tuple;
}

TensorFactorization TensorFactorization::restrict_to(std::span<const std::size_t> keep) const {
    std::vector<AlgebraDescriptor> sub;
    for (auto k : keep) {
        sub.push_back(factors_.at(k));
    }
    return TensorFactorization(std::move(sub));
}

// ---------------------------------------------------------------------------
// Operations

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

AlgebraElement tensor_elements(const AlgebraElement &a, const AlgebraElement &b) {
    std::vector<Matrix> blocks;
    blocks.reserve(a.blocks().size() * b.blocks().size());
    for (const auto &x : a.blocks()) {
        for (const auto &y : b.blocks()) {
            blocks.push_back(kron(x, y));
        }
    }
    return AlgebraElement(tensor_descriptors(a.algebra(), b.algebra()), std::move(blocks));
}

AlgebraElement tensor_elements(std::span<const AlgebraElement> items) {
    if (items.empty()) {
        throw Error(ErrorCode::EmptyList, "tensor product of no elements");
    }
    AlgebraElement acc = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) {
        acc = tensor_elements(acc, items[i]);
    }
    return acc;
}

AlgebraElement partial_trace(
    const AlgebraElement &x,
    const TensorFactorization &factorization,
    std::span<const std::size_t> keep) {
    const std::size_t n = factorization.size();
    if (keep.empty()) {
        throw Error(ErrorCode::IndexOutOfRange, "partial trace keep-set is empty");
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= n || (i > 0 && keep[i] <= keep[i - 1])) {
            throw Error(
                ErrorCode::IndexOutOfRange,
                "keep-set must be sorted, unique and below " + std::to_string(n));
        }
    }
    if (!(x.algebra() == factorization.composite())) {
        throw Error(ErrorCode::AlgebraMismatch, "element does not live on the factorization composite");
    }

    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::vector<std::size_t> traced;
    for (std::size_t i = 0, k = 0; i < n; ++i) {
        if (k < kept.size() && kept[k] == i) {
            ++k;
        } else {
            traced.push_back(i);
        }
    }

    const auto target = factorization.restrict_to(kept);
    auto out = AlgebraElement::zero(target.composite());
    std::vector<Matrix> out_blocks = out.blocks();

    for (std::size_t c = 0; c < x.algebra().block_count(); ++c) {
        const auto tuple = factorization.block_tuple(c);
        std::size_t target_block = 0;
        for (auto k : kept) {
            target_block = target_block * factorization.factor(k).block_count() + tuple[k];
        }
        std::vector<std::size_t> dims(n), strides(n);
        for (std::size_t i = 0; i < n; ++i) {
            dims[i] = factorization.factor(i).dim(tuple[i]);
        }
        std::size_t stride = 1;
        for (std::size_t i = n; i-- > 0;) {
            strides[i] = stride;
            stride *= dims[i];
        }
        const auto kept_off = enumerate_offsets(dims, strides, kept);
        const auto traced_off = enumerate_offsets(dims, strides, traced);
        const Matrix &src = x.block(c);
        Matrix &dst = out_blocks[target_block];
        for (std::size_t r = 0; r < kept_off.size(); ++r) {
            for (std::size_t s = 0; s < kept_off.size(); ++s) {
                Complex acc = 0.0;
                for (auto t : traced_off) {
                    acc += src(kept_off[r] + t, kept_off[s] + t);
                }
                dst(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) += acc;
            }
        }
    }
    return AlgebraElement(target.composite(), std::move(out_blocks));
}

AlgebraElement partial_trace(
    const AlgebraElement &x,
    const TensorFactorization &factorization,
    std::initializer_list<std::size_t> keep) {
    return partial_trace(x, factorization, std::span<const std::size_t>(keep.begin(), keep.size()));
}

AlgebraElement jordan_product(const AlgebraElement &a, const AlgebraElement &b) {
    require_same_algebra(a, b, "Jordan product");
    std::vector<Matrix> out;
    out.reserve(a.blocks().size());
    for (std::size_t i = 0; i < a.blocks().size(); ++i) {
        out.push_back(0.5 * (a.block(i) * b.block(i) + b.block(i) * a.block(i)));
    }
    return AlgebraElement(a.algebra(), std::move(out));
}

AlgebraElement extended_jordan(std::span<const AlgebraElement> items) {
    if (items.empty()) {
        throw Error(ErrorCode::EmptyList, "extended Jordan product of no elements");
    }
    AlgebraElement acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) {
        acc = jordan_product(items[i], acc);
    }
    return acc;
}

AlgebraElement commutator(const AlgebraElement &a, const AlgebraElement &b) {
    return a * b - b * a;
}

AlgebraElement multiplication_dual_unit(const AlgebraDescriptor &algebra) {
    const auto composite = tensor_descriptors(algebra, algebra);
    auto out = AlgebraElement::zero(composite);
    std::vector<Matrix> blocks = out.blocks();
    const auto nb = algebra.block_count();
    for (std::size_t x = 0; x < nb; ++x) {
        const auto m = static_cast<Eigen::Index>(algebra.dim(x));
        Matrix &dst = blocks[x * nb + x];
        // sum_ij E_ij (x) E_ji has a 1 at row (i, j), column (j, i).
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                dst(i * m + j, j * m + i) = 1.0;
            }
        }
    }
    return AlgebraElement(composite, std::move(blocks));
}

Complex trace(const AlgebraElement &x) {
    return x.trace();
}

AlgebraElement dagger(const AlgebraElement &x) {
    return x.dagger();
}

double hermiticity_deviation(const AlgebraElement &x) {
    double worst = 0.0;
    for (const auto &b : x.blocks()) {
        worst = std::max(worst, (b - b.adjoint()).cwiseAbs().maxCoeff());
    }
    return worst;
}

bool is_selfadjoint(const AlgebraElement &x, double tol) {
    return hermiticity_deviation(x) <= tol;
}

std::vector<double> eigenvalues(const AlgebraElement &x) {
    std::vector<double> out;
    for (const auto &b : x.blocks()) {
        const Matrix h = 0.5 * (b + b.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            out.push_back(solver.eigenvalues()(i));
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double min_eigenvalue(const AlgebraElement &x) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto &b : x.blocks()) {
        const Matrix h = 0.5 * (b + b.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
        lo = std::min(lo, solver.eigenvalues().minCoeff());
    }
    return lo;
}

bool is_positive(const AlgebraElement &x, double tol) {
    return is_selfadjoint(x, tol) && min_eigenvalue(x) >= -tol;
}

bool is_state(const AlgebraElement &x, double tol) {
    return is_positive(x, tol) && std::abs(x.trace() - Complex(1.0)) <= tol;
}

}  // namespace sot
