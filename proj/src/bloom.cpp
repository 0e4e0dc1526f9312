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

#include "sot/bloom.hpp"

#include <sstream>

namespace sot {

BloomKind BloomKind::right() {
    return BloomKind(1.0);
}

BloomKind BloomKind::left() {
    return BloomKind(0.0);
}

BloomKind BloomKind::symmetric() {
    return BloomKind(0.5);
}

BloomKind BloomKind::lambda(Complex weight) {
    if (!std::isfinite(weight.real()) || !std::isfinite(weight.imag())) {
        throw Error(ErrorCode::InvalidArgument, "bloom weight must be finite");
    }
    return BloomKind(weight);
}

BloomKind::Variant BloomKind::variant() const {
    if (weight_ == Complex(1.0)) {
        return Variant::Right;
    }
    if (weight_ == Complex(0.0)) {
        return Variant::Left;
    }
    if (weight_ == Complex(0.5)) {
        return Variant::Symmetric;
    }
    return Variant::Lambda;
}

std::string BloomKind::name() const {
    switch (variant()) {
        case Variant::Right:
            return "right";
        case Variant::Left:
            return "left";
        case Variant::Symmetric:
            return "symmetric";
        case Variant::Lambda:
            break;
    }
    std::ostringstream out;
    out << "lambda(" << weight_.real();
    if (weight_.imag() != 0.0) {
        out << (weight_.imag() < 0 ? "-" : "+") << std::abs(weight_.imag()) << "i";
    }
    out << ")";
    return out.str();
}

AlgebraElement bloom_apply(const BloomKind &kind, const SuperOperator &e, const AlgebraElement &rho) {
    if (!(rho.algebra() == e.domain())) {
        throw Error(
            ErrorCode::AlgebraMismatch,
            "bloom input lives on " + rho.algebra().to_string() + ", map expects " + e.domain().to_string());
    }
    const AlgebraElement &j = e.jamiolkowski_matrix();
    const auto lifted = tensor_elements(rho, AlgebraElement::identity(e.codomain()));
    const Complex w = kind.weight();
    switch (kind.variant()) {
        case BloomKind::Variant::Right:
            return lifted * j;
        case BloomKind::Variant::Left:
            return j * lifted;
        default:
            return w * (lifted * j) + (Complex(1.0) - w) * (j * lifted);
    }
}

SuperOperator bloom_as_map(const BloomKind &kind, const SuperOperator &e) {
    using Index = Eigen::Index;
    const AlgebraElement &j = e.jamiolkowski_matrix();
    const auto &dom = e.domain();
    const auto &cod = e.codomain();
    const auto target = tensor_descriptors(dom, cod);
    const auto nx = dom.block_count();
    const auto ny = cod.block_count();
    const Complex wr = kind.weight();
    const Complex wl = Complex(1.0) - wr;

    std::vector<Matrix> comps;
    comps.reserve(target.block_count() * nx);
    for (std::size_t xt = 0; xt < nx; ++xt) {
        const Index m = static_cast<Index>(dom.dim(xt));
        for (std::size_t y = 0; y < ny; ++y) {
            const Index n = static_cast<Index>(cod.dim(y));
            const Index d = m * n;
            const Matrix &jb = j.block(xt * ny + y);
            for (std::size_t x = 0; x < nx; ++x) {
                const Index mx = static_cast<Index>(dom.dim(x));
                Matrix c = Matrix::Zero(d * d, mx * mx);
                if (x == xt) {
                    for (Index a = 0; a < m; ++a) {
                        for (Index b = 0; b < m; ++b) {
                            // (E_ab (x) 1) J moves rows b*n.. to a*n..; J (E_ab (x) 1) moves columns a*n.. to b*n..
                            Matrix out = Matrix::Zero(d, d);
                            if (wr != Complex(0.0)) {
                                out.middleRows(a * n, n) += wr * jb.middleRows(b * n, n);
                            }
                            if (wl != Complex(0.0)) {
                                out.middleCols(b * n, n) += wl * jb.middleCols(a * n, n);
                            }
                            for (Index p = 0; p < d; ++p) {
                                for (Index q = 0; q < d; ++q) {
                                    c(p * d + q, a * m + b) = out(p, q);
                                }
                            }
                        }
                    }
                }
                comps.push_back(std::move(c));
            }
        }
    }
    return SuperOperator(dom, target, std::move(comps));
}

BloomShriekReport check_bloom_shriek(const SuperOperator &e, const BloomKind &kind) {
    const auto bloom = bloom_as_map(kind, e);
    const TensorFactorization pair({e.domain(), e.codomain()});
    const std::size_t keep_domain[] = {0};
    const std::size_t keep_codomain[] = {1};
    BloomShriekReport report;
    report.channel_deviation = max_abs_diff(compose(partial_trace_map(pair, keep_codomain), bloom), e);
    report.identity_deviation =
        max_abs_diff(compose(partial_trace_map(pair, keep_domain), bloom), channels::identity(e.domain()));
    return report;
}

}  // namespace sot
