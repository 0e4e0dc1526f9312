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

#ifndef SOT_IO_HPP
#define SOT_IO_HPP

#include <string>
#include <utility>

#include "json.hpp"
#include "sot/classical.hpp"
#include "sot/nstep.hpp"
#include "sot/qubit_pdo.hpp"

namespace sot::io {

using Json = nlohmann::json;

/// Every reader throws Error(ParseError) on malformed input. Mathematical
/// validation (shapes against descriptors, chaining) raises the usual codes.

Json to_json(const AlgebraDescriptor &a);
AlgebraDescriptor descriptor_from_json(const Json &j);

/// {"re": [[...]], "im": [[...]]}; "im" may be omitted on input.
Json to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j);

/// {"algebra": [...], "blocks": [...]}.
Json to_json(const AlgebraElement &x);
AlgebraElement element_from_json(const Json &j);

/// {"domain", "codomain", "kind": "matrix", "components": [...]}; components
/// are listed in (codomain block, domain block) row-major order.
Json to_json(const SuperOperator &e);
/// Also accepts "kind": "named" with "components": {"name": ..., ...}. Known
/// names: identity, depolarizing (param), dephasing (param), unitary (matrix),
/// transpose, bit_flip (param), stochastic (probs).
SuperOperator channel_from_json(const Json &j);

/// {"rho": <element>, "channels": [<channel>...]}.
Json to_json(const ProcessChain &chain);
ProcessChain process_from_json(const Json &j);

/// {"element": <element>, "factorization": [<algebra>...]}.
Json pdo_to_json(const AlgebraElement &t, const TensorFactorization &f);
std::pair<AlgebraElement, TensorFactorization> pdo_from_json(const Json &j);

/// {"source": [...], "target": [...], "probs": [[...]]}, probs indexed [y][x].
Json to_json(const StochasticMap &f);
StochasticMap stochastic_from_json(const Json &j);

/// {"set": [...], "weights": [...]}.
Json to_json(const ProbDist &p);
ProbDist dist_from_json(const Json &j);

/// {"k", "n", "coeffs": [...]} plus "coeffs_im" when any coefficient is complex.
Json to_json(const PauliCoefficients &c);

/// Parses text, mapping syntax errors to ParseError.
Json parse(const std::string &text);
/// Indented dump with sorted keys and round-trip-exact numbers.
std::string dump(const Json &j);

}  // namespace sot::io

#endif
