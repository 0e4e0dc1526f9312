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

#include "sot/io.hpp"

namespace sot::io {

namespace {

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

template <typename F>
auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception &ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

Json real_matrix(const Eigen::MatrixXd &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd real_matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw Error(ErrorCode::ParseError, "expected a nonempty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
            throw Error(ErrorCode::ParseError, "ragged matrix");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

std::vector<std::string> labels_from_json(const Json &j) {
    if (!j.is_array()) {
        throw Error(ErrorCode::ParseError, "expected an array of labels");
    }
    std::vector<std::string> out;
    for (const auto &item : j) {
        out.push_back(item.is_string() ? item.get<std::string>() : item.dump());
    }
    return out;
}

std::size_t single_block_dim(const AlgebraDescriptor &a, const std::string &name) {
    if (a.block_count() != 1) {
        throw Error(ErrorCode::AlgebraMismatch, "named channel " + name + " needs a single-block algebra");
    }
    return a.dim(0);
}

SuperOperator named_channel(const AlgebraDescriptor &domain, const AlgebraDescriptor &codomain, const Json &desc) {
    const auto name = field(desc, "name").get<std::string>();
    auto param = [&] { return field(desc, "param").get<double>(); };
    auto rewrap = [&](const SuperOperator &e) { return SuperOperator(domain, codomain, e.components()); };
    if (name == "identity") {
        if (!(domain == codomain)) {
            throw Error(ErrorCode::AlgebraMismatch, "identity needs equal domain and codomain");
        }
        return channels::identity(domain);
    }
    if (name == "depolarizing") {
        return rewrap(channels::depolarizing(single_block_dim(domain, name), param()));
    }
    if (name == "dephasing") {
        return rewrap(channels::dephasing(single_block_dim(domain, name), param()));
    }
    if (name == "transpose") {
        return rewrap(channels::transpose(single_block_dim(domain, name)));
    }
    if (name == "unitary") {
        return rewrap(channels::unitary(matrix_from_json(field(desc, "matrix"))));
    }
    if (name == "bit_flip") {
        return rewrap(q_embed(StochasticMap::bit_flip(param())));
    }
    if (name == "stochastic") {
        std::vector<std::string> src, dst;
        for (const auto &b : domain.blocks()) {
            src.push_back(b.label);
        }
        for (const auto &b : codomain.blocks()) {
            dst.push_back(b.label);
        }
        return q_embed(StochasticMap(src, dst, real_matrix_from_json(field(desc, "probs"))));
    }
    throw Error(ErrorCode::ParseError, "unknown named channel \"" + name + "\"");
}

}  // namespace

Json to_json(const AlgebraDescriptor &a) {
    Json out = Json::array();
    for (const auto &b : a.blocks()) {
        out.push_back({{"label", b.label}, {"dim", b.dim}});
    }
    return out;
}

AlgebraDescriptor descriptor_from_json(const Json &j) {
    return guarded([&] {
        if (!j.is_array()) {
            throw Error(ErrorCode::ParseError, "algebra must be an array of blocks");
        }
        std::vector<Block> blocks;
        for (const auto &b : j) {
            const auto dim = field(b, "dim").get<long long>();
            if (dim < 1) {
                throw Error(ErrorCode::ParseError, "block dimension must be positive");
            }
            blocks.push_back(Block{field(b, "label").get<std::string>(), static_cast<std::size_t>(dim)});
        }
        try {
            return AlgebraDescriptor(std::move(blocks));
        } catch (const Error &ex) {
            throw Error(ErrorCode::ParseError, ex.what());
        }
    });
}

Json to_json(const Matrix &m) {
    return {{"re", real_matrix(m.real())}, {"im", real_matrix(m.imag())}};
}

Matrix matrix_from_json(const Json &j) {
    return guarded([&] {
        const Eigen::MatrixXd re = real_matrix_from_json(field(j, "re"));
        Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
        if (j.contains("im")) {
            im = real_matrix_from_json(j.at("im"));
            if (im.rows() != re.rows() || im.cols() != re.cols()) {
                throw Error(ErrorCode::ParseError, "real and imaginary parts differ in shape");
            }
        }
        Matrix m(re.rows(), re.cols());
        m.real() = re;
        m.imag() = im;
        return m;
    });
}

Json to_json(const AlgebraElement &x) {
    Json blocks = Json::array();
    for (const auto &b : x.blocks()) {
        blocks.push_back(to_json(b));
    }
    return {{"algebra", to_json(x.algebra())}, {"blocks", std::move(blocks)}};
}

AlgebraElement element_from_json(const Json &j) {
    return guarded([&] {
        auto algebra = descriptor_from_json(field(j, "algebra"));
        const auto &blocks = field(j, "blocks");
        if (!blocks.is_array()) {
            throw Error(ErrorCode::ParseError, "blocks must be an array");
        }
        std::vector<Matrix> data;
        for (const auto &b : blocks) {
            data.push_back(matrix_from_json(b));
        }
        return AlgebraElement(std::move(algebra), std::move(data));
    });
}

Json to_json(const SuperOperator &e) {
    Json comps = Json::array();
    for (const auto &c : e.components()) {
        comps.push_back(to_json(c));
    }
    return {{"domain", to_json(e.domain())},
            {"codomain", to_json(e.codomain())},
            {"kind", "matrix"},
            {"components", std::move(comps)}};
}

SuperOperator channel_from_json(const Json &j) {
    return guarded([&] {
        auto domain = descriptor_from_json(field(j, "domain"));
        auto codomain = descriptor_from_json(field(j, "codomain"));
        const auto kind = field(j, "kind").get<std::string>();
        const auto &comps = field(j, "components");
        if (kind == "named") {
            return named_channel(domain, codomain, comps);
        }
        if (kind != "matrix") {
            throw Error(ErrorCode::ParseError, "channel kind must be \"matrix\" or \"named\"");
        }
        if (!comps.is_array()) {
            throw Error(ErrorCode::ParseError, "components must be an array");
        }
        std::vector<Matrix> data;
        for (const auto &c : comps) {
            data.push_back(matrix_from_json(c));
        }
        return SuperOperator(std::move(domain), std::move(codomain), std::move(data));
    });
}

Json to_json(const ProcessChain &chain) {
    Json maps = Json::array();
    for (const auto &c : chain.channels()) {
        maps.push_back(to_json(c));
    }
    return {{"rho", to_json(chain.rho())}, {"channels", std::move(maps)}};
}

ProcessChain process_from_json(const Json &j) {
    return guarded([&] {
        auto rho = element_from_json(field(j, "rho"));
        const auto &maps = field(j, "channels");
        if (!maps.is_array()) {
            throw Error(ErrorCode::ParseError, "channels must be an array");
        }
        std::vector<SuperOperator> channels;
        for (const auto &m : maps) {
            channels.push_back(channel_from_json(m));
        }
        return ProcessChain(std::move(rho), std::move(channels));
    });
}

Json pdo_to_json(const AlgebraElement &t, const TensorFactorization &f) {
    Json factors = Json::array();
    for (const auto &a : f.factors()) {
        factors.push_back(to_json(a));
    }
    return {{"element", to_json(t)}, {"factorization", std::move(factors)}};
}

std::pair<AlgebraElement, TensorFactorization> pdo_from_json(const Json &j) {
    return guarded([&] {
        auto element = element_from_json(field(j, "element"));
        const auto &factors = field(j, "factorization");
        if (!factors.is_array() || factors.empty()) {
            throw Error(ErrorCode::ParseError, "factorization must be a nonempty array of algebras");
        }
        std::vector<AlgebraDescriptor> list;
        for (const auto &f : factors) {
            list.push_back(descriptor_from_json(f));
        }
        return std::pair{std::move(element), TensorFactorization(std::move(list))};
    });
}

Json to_json(const StochasticMap &f) {
    return {{"source", f.source()}, {"target", f.target()}, {"probs", real_matrix(f.probs())}};
}

StochasticMap stochastic_from_json(const Json &j) {
    return guarded([&] {
        return StochasticMap(
            labels_from_json(field(j, "source")),
            labels_from_json(field(j, "target")),
            real_matrix_from_json(field(j, "probs")));
    });
}

Json to_json(const ProbDist &p) {
    std::vector<double> w(p.weights().data(), p.weights().data() + p.weights().size());
    return {{"set", p.labels()}, {"weights", w}};
}

ProbDist dist_from_json(const Json &j) {
    return guarded([&] {
        const auto w = field(j, "weights").get<std::vector<double>>();
        return ProbDist(
            labels_from_json(field(j, "set")),
            Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size())));
    });
}

Json to_json(const PauliCoefficients &c) {
    std::vector<double> re, im;
    bool complex = false;
    for (const auto &v : c.coeffs) {
        re.push_back(v.real());
        im.push_back(v.imag());
        complex = complex || v.imag() != 0.0;
    }
    Json out = {{"k", c.k}, {"n", c.n}, {"coeffs", re}};
    if (complex) {
        out["coeffs_im"] = im;
    }
    return out;
}

Json parse(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception &ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

}  // namespace sot::io
