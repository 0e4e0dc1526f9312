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

#ifndef SOT_QUBIT_PDO_HPP
#define SOT_QUBIT_PDO_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "sot/nstep.hpp"

namespace sot {

/// One Pauli index per qubit slot: 0 = I, 1 = X, 2 = Y, 3 = Z. Slot 0 is the
/// leftmost (slowest) Kronecker factor; slots run time-major, qubit-minor.
struct PauliString {
    std::vector<std::uint8_t> indices;

    /// The string whose base-4 digits (slot 0 most significant) spell `index`.
    static PauliString from_index(std::size_t slots, std::size_t index);
    std::size_t to_index() const;
};

/// Kronecker product of the Pauli matrices named by `s`.
Matrix pauli_operator(const PauliString &s);

/// Number of qubits per time slice when every factor of the chain is a single
/// 2^k x 2^k block with the same k >= 1; throws NotQubitAlgebra otherwise.
std::size_t qubits_per_slice(const ProcessChain &chain);

/// R_1 = Jor(rho (x) 1, J[E_1]), R_m = Jor(R_{m-1} (x) 1, 1 (x) J[E_m]).
AlgebraElement pdo_recursive(const ProcessChain &chain);

struct PauliCoefficients {
    std::size_t k = 0;
    std::size_t n = 0;
    /// tr(t sigma) for every Pauli string, indexed by PauliString::to_index.
    std::vector<Complex> coeffs;

    std::size_t slots() const {
        return k * (n + 1);
    }
};

/// Throws ShapeMismatch unless `t` is a single block of size 2^{k(n+1)}.
PauliCoefficients pauli_coefficients(const AlgebraElement &t, std::size_t k, std::size_t n);

/// 2^{-k(n+1)} sum_sigma coeff(sigma) sigma, on `algebra` when given and on a
/// single block otherwise.
AlgebraElement pdo_from_coefficients(
    const PauliCoefficients &c, const std::optional<AlgebraDescriptor> &algebra = std::nullopt);

struct NegativityWitness {
    double min_eigenvalue = 0.0;
    /// Sum of the absolute values of the negative eigenvalues.
    double negativity = 0.0;
};

/// Throws NotSelfAdjoint when the hermiticity deviation exceeds `tol`.
NegativityWitness negativity_witness(const AlgebraElement &t, double tol = kDefaultTol);

}  // namespace sot

#endif
