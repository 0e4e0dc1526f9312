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

#ifndef SOT_ALGEBRA_HPP
#define SOT_ALGEBRA_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sot/error.hpp"

namespace sot {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-9;

struct Block {
    std::string label;
    std::size_t dim = 1;

    bool operator==(const Block &) const = default;
};

/// A multi-matrix algebra: the direct sum of full matrix algebras, one per
/// block. An algebra whose blocks are all 1x1 is the commutative algebra of
/// functions on the block labels.
class AlgebraDescriptor {
   public:
    explicit AlgebraDescriptor(std::vector<Block> blocks);

    /// Single block of size `dim`.
    static AlgebraDescriptor matrix(std::size_t dim, std::string label = "M");
    /// `count` one-dimensional blocks labelled "0", "1", ...
    static AlgebraDescriptor classical(std::size_t count);
    static AlgebraDescriptor classical(std::vector<std::string> labels);

    const std::vector<Block> &blocks() const {
        return blocks_;
    }
    std::size_t block_count() const {
        return blocks_.size();
    }
    std::size_t dim(std::size_t block) const {
        return blocks_[block].dim;
    }
    /// Sum of block dimensions, i.e. the size of the block-diagonal embedding.
    std::size_t total_dim() const;
    /// Sum of squared block dimensions, i.e. the dimension as a vector space.
    std::size_t vector_dim() const;
    bool is_classical() const;
    std::string to_string() const;

    bool operator==(const AlgebraDescriptor &) const = default;

   private:
    std::vector<Block> blocks_;
};

/// Composite descriptor with Kronecker block ordering: the left factor's
/// block index varies slowest and labels are comma-joined, so tensoring is
/// associative at the level of descriptors.
AlgebraDescriptor tensor_descriptors(const AlgebraDescriptor &a, const AlgebraDescriptor &b);

class AlgebraElement {
   public:
    AlgebraElement(AlgebraDescriptor algebra, std::vector<Matrix> blocks);

    static AlgebraElement zero(const AlgebraDescriptor &algebra);
    static AlgebraElement identity(const AlgebraDescriptor &algebra);
    static AlgebraElement matrix_unit(
        const AlgebraDescriptor &algebra, std::size_t block, std::size_t row, std::size_t col);
    /// The unit of block `block`; for a classical algebra this is the Dirac delta.
    static AlgebraElement delta(const AlgebraDescriptor &algebra, std::size_t block);
    /// Element of the single-block algebra of matching size.
    static AlgebraElement from_matrix(const Matrix &m, std::string label = "M");

    const AlgebraDescriptor &algebra() const {
        return algebra_;
    }
    const std::vector<Matrix> &blocks() const {
        return blocks_;
    }
    const Matrix &block(std::size_t index) const {
        return blocks_[index];
    }

    AlgebraElement dagger() const;
    Complex trace() const;

    AlgebraElement &operator+=(const AlgebraElement &other);
    AlgebraElement &operator-=(const AlgebraElement &other);
    AlgebraElement &operator*=(Complex scalar);

   private:
    AlgebraDescriptor algebra_;
    std::vector<Matrix> blocks_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement &b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement &b);
AlgebraElement operator*(Complex scalar, AlgebraElement a);
/// Algebra multiplication (blockwise matrix product).
AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b);

/// Largest entrywise modulus of `a - b`. Throws AlgebraMismatch.
double max_abs_diff(const AlgebraElement &a, const AlgebraElement &b);
/// Largest entrywise modulus.
double max_abs(const AlgebraElement &a);

/// An ordered list of factor algebras and their composite.
class TensorFactorization {
   public:
    explicit TensorFactorization(std::vector<AlgebraDescriptor> factors);

    const std::vector<AlgebraDescriptor> &factors() const {
        return factors_;
    }
    const AlgebraDescriptor &factor(std::size_t i) const {
        return factors_[i];
    }
    const AlgebraDescriptor &composite() const {
        return composite_;
    }
    std::size_t size() const {
        return factors_.size();
    }

    /// Per-factor block indices of a composite block.
    std::vector<std::size_t> block_tuple(std::size_t composite_block) const;
    /// Factorization restricted to the (sorted, unique) factor subset `keep`.
    TensorFactorization restrict_to(std::span<const std::size_t> keep) const;

    bool operator==(const TensorFactorization &other) const {
        return factors_ == other.factors_;
    }

   private:
    std::vector<AlgebraDescriptor> factors_;
    AlgebraDescriptor composite_;
};

AlgebraElement tensor_elements(const AlgebraElement &a, const AlgebraElement &b);
AlgebraElement tensor_elements(std::span<const AlgebraElement> items);

/// Partial trace onto the factors listed in `keep` (sorted, unique, nonempty).
/// Throws IndexOutOfRange for bad indices and AlgebraMismatch when `x` does
/// not live on the composite of `factorization`.
AlgebraElement partial_trace(
    const AlgebraElement &x,
    const TensorFactorization &factorization,
    std::span<const std::size_t> keep);
AlgebraElement partial_trace(
    const AlgebraElement &x,
    const TensorFactorization &factorization,
    std::initializer_list<std::size_t> keep);

/// Normalized Jordan product (ab + ba) / 2.
AlgebraElement jordan_product(const AlgebraElement &a, const AlgebraElement &b);
/// Right-nested fold Jor(a0, Jor(a1, ... Jor(a_{n-1}, a_n))).
AlgebraElement extended_jordan(std::span<const AlgebraElement> items);
AlgebraElement commutator(const AlgebraElement &a, const AlgebraElement &b);

/// Hilbert-Schmidt dual of multiplication evaluated at the unit: in each
/// matrix block the sum of E_ij (x) E_ji, zero off the diagonal blocks.
AlgebraElement multiplication_dual_unit(const AlgebraDescriptor &algebra);

Complex trace(const AlgebraElement &x);
AlgebraElement dagger(const AlgebraElement &x);
/// Largest entrywise modulus of x - x^dagger.
double hermiticity_deviation(const AlgebraElement &x);
bool is_selfadjoint(const AlgebraElement &x, double tol = kDefaultTol);
/// Smallest eigenvalue of the hermitian part over all blocks.
double min_eigenvalue(const AlgebraElement &x);
/// Eigenvalues of the hermitian part over all blocks, sorted descending.
std::vector<double> eigenvalues(const AlgebraElement &x);
/// False for non-self-adjoint input.
bool is_positive(const AlgebraElement &x, double tol = kDefaultTol);
bool is_state(const AlgebraElement &x, double tol = kDefaultTol);

/// Kronecker product of plain matrices (left operand slowest).
Matrix kron(const Matrix &a, const Matrix &b);

}  // namespace sot

#endif
