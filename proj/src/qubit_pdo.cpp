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

#include "sot/qubit_pdo.hpp"

#include <bit>

namespace sot {

namespace {

const Complex kI(0.0, 1.0);

Matrix single_pauli(std::uint8_t a) {
    Matrix m = Matrix::Zero(2, 2);
    switch (a) {
        case 0:
            m(0, 0) = m(1, 1) = 1.0;
            break;
        case 1:
            m(0, 1) = m(1, 0) = 1.0;
            break;
        case 2:
            m(0, 1) = -kI;
            m(1, 0) = kI;
            break;
        case 3:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw Error(ErrorCode::InvalidArgument, "Pauli index must be 0..3");
    }
    return m;
}

std::size_t log2_exact(std::size_t d) {
    if (d < 2 || !std::has_single_bit(d)) {
        return 0;
    }
    return static_cast<std::size_t>(std::countr_zero(d));
}

}  // namespace

PauliString PauliString::from_index(std::size_t slots, std::size_t index) {
    PauliString s;
    s.indices.resize(slots);
    for (std::size_t i = slots; i-- > 0;) {
        s.indices[i] = static_cast<std::uint8_t>(index & 3);
        index >>= 2;
    }
    return s;
}

std::size_t PauliString::to_index() const {
    std::size_t out = 0;
    for (auto a : indices) {
        out = out << 2 | a;
    }
    return out;
}

Matrix pauli_operator(const PauliString &s) {
    Matrix out = Matrix::Identity(1, 1);
    for (auto a : s.indices) {
        out = kron(out, single_pauli(a));
    }
    return out;
}

std::size_t qubits_per_slice(const ProcessChain &chain) {
    std::size_t k = 0;
    for (const auto &factor : chain.factors()) {
        const std::size_t here = factor.block_count() == 1 ? log2_exact(factor.dim(0)) : 0;
        if (here == 0 || (k != 0 && here != k)) {
            throw Error(
                ErrorCode::NotQubitAlgebra,
                "factor " + factor.to_string() + " is not a single 2^k block with a common k");
        }
        k = here;
    }
    return k;
}

AlgebraElement pdo_recursive(const ProcessChain &chain) {
    qubits_per_slice(chain);
    const auto factors = chain.factors();
    AlgebraElement r = jordan_product(
        tensor_elements(chain.rho(), AlgebraElement::identity(factors[1])), chain.channel(1).jamiolkowski_matrix());
    for (std::size_t m = 2; m <= chain.length(); ++m) {
        const AlgebraDescriptor before =
            TensorFactorization(std::vector<AlgebraDescriptor>(factors.begin(), factors.begin() + (m - 1)))
                .composite();
        r = jordan_product(
            tensor_elements(r, AlgebraElement::identity(factors[m])),
            tensor_elements(AlgebraElement::identity(before), chain.channel(m).jamiolkowski_matrix()));
    }
    return r;
}

PauliCoefficients pauli_coefficients(const AlgebraElement &t, std::size_t k, std::size_t n) {
    const std::size_t slots = k * (n + 1);
    if (k == 0 || slots >= 8 * sizeof(std::size_t) / 2) {
        throw Error(ErrorCode::ShapeMismatch, "unsupported qubit count");
    }
    const std::size_t dim = std::size_t{1} << slots;
    if (t.blocks().size() != 1 || static_cast<std::size_t>(t.block(0).rows()) != dim) {
        throw Error(
            ErrorCode::ShapeMismatch,
            "expected a single " + std::to_string(dim) + "x" + std::to_string(dim) + " block");
    }
    const Matrix &m = t.block(0);
    PauliCoefficients out{k, n, std::vector<Complex>(std::size_t{1} << (2 * slots))};
    const Complex phases[4] = {1.0, kI, -1.0, -kI};
    for (std::size_t idx = 0; idx < out.coeffs.size(); ++idx) {
        // sigma[r, c] with c = r ^ x is i^{#Y} (-1)^{popcount(c & z)}, z covering Y and Z slots.
        std::size_t xmask = 0, zmask = 0, ny = 0;
        for (std::size_t slot = 0; slot < slots; ++slot) {
            const std::size_t a = (idx >> (2 * (slots - 1 - slot))) & 3;
            const std::size_t bit = std::size_t{1} << (slots - 1 - slot);
            if (a == 1 || a == 2) {
                xmask |= bit;
            }
            if (a == 2 || a == 3) {
                zmask |= bit;
            }
            ny += a == 2;
        }
        // tr(t sigma) = sum_r t[r ^ x, r] sigma[r, r ^ x]
        Complex acc = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
            const Complex v = m(static_cast<Eigen::Index>(r ^ xmask), static_cast<Eigen::Index>(r));
            acc += (std::popcount((r ^ xmask) & zmask) & 1) ? -v : v;
        }
        out.coeffs[idx] = phases[ny & 3] * acc;
    }
    return out;
}

AlgebraElement pdo_from_coefficients(const PauliCoefficients &c, const std::optional<AlgebraDescriptor> &algebra) {
    const std::size_t slots = c.slots();
    if (c.coeffs.size() != (std::size_t{1} << (2 * slots))) {
        throw Error(ErrorCode::ShapeMismatch, "coefficient count does not match k and n");
    }
    const std::size_t dim = std::size_t{1} << slots;
    Matrix out = Matrix::Zero(dim, dim);
    for (std::size_t idx = 0; idx < c.coeffs.size(); ++idx) {
        if (c.coeffs[idx] != Complex(0.0)) {
            out += c.coeffs[idx] * pauli_operator(PauliString::from_index(slots, idx));
        }
    }
    out /= static_cast<double>(dim);
    if (algebra) {
        return AlgebraElement(*algebra, {out});
    }
    return AlgebraElement::from_matrix(out);
}

NegativityWitness negativity_witness(const AlgebraElement &t, double tol) {
    const double dev = hermiticity_deviation(t);
    if (dev > tol) {
        throw Error(ErrorCode::NotSelfAdjoint, "hermiticity deviation " + std::to_string(dev));
    }
    NegativityWitness out;
    const auto eig = eigenvalues(t);
    out.min_eigenvalue = eig.empty() ? 0.0 : eig.back();
    for (double v : eig) {
        if (v < 0) {
            out.negativity -= v;
        }
    }
    return out;
}

}  // namespace sot
