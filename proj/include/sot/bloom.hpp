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

#ifndef SOT_BLOOM_HPP
#define SOT_BLOOM_HPP

#include <string>

#include "sot/channel.hpp"

namespace sot {

/// Selects a bloom from the family lambda (rho (x) 1) J + (1 - lambda) J (rho (x) 1).
///
/// Lambda(1), Lambda(0) and Lambda(1/2) are the same values as Right, Left
/// and Symmetric; `variant()` reports the named kind in those cases.
class BloomKind {
   public:
    enum class Variant { Right, Left, Symmetric, Lambda };

    static BloomKind right();
    static BloomKind left();
    static BloomKind symmetric();
    static BloomKind lambda(Complex weight);

    Variant variant() const;
    /// Weight of the right-multiplied term.
    Complex weight() const {
        return weight_;
    }
    std::string name() const;

    bool operator==(const BloomKind &other) const {
        return weight_ == other.weight_;
    }

   private:
    explicit BloomKind(Complex weight) : weight_(weight) {
    }
    Complex weight_;
};

/// The bloom of `e` evaluated at `rho`, an element of domain (x) codomain.
AlgebraElement bloom_apply(const BloomKind &kind, const SuperOperator &e, const AlgebraElement &rho);

/// The bloom of `e` as a map domain -> domain (x) codomain.
SuperOperator bloom_as_map(const BloomKind &kind, const SuperOperator &e);

struct BloomShriekReport {
    /// Largest entry of tr_domain o bloom - e over the matrix-unit basis.
    double channel_deviation = 0.0;
    /// Largest entry of tr_codomain o bloom - id.
    double identity_deviation = 0.0;

    bool ok(double tol = kDefaultTol) const {
        return channel_deviation <= tol && identity_deviation <= tol;
    }
};

BloomShriekReport check_bloom_shriek(const SuperOperator &e, const BloomKind &kind);

}  // namespace sot

#endif
