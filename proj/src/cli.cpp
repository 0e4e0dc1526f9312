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

#include "sot/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sot/extract.hpp"
#include "sot/io.hpp"

namespace sot::cli {

namespace {

using io::Json;

/// Exact reconstruction bound for extraction of in-class elements.
constexpr double kReconstructionTol = 1e-8;

struct Options {
    std::string command;
    std::string in;
    std::string out;
    double tol = kDefaultTol;
    std::string kind = "symmetric";
    std::optional<double> lambda;
    std::string paren;
    bool force = false;
};

struct Outcome {
    Json result;
    int code = kOk;
    std::optional<Json> failure;
};

void emit(std::ostream &err, const Json &j) {
    err << j.dump() << "\n";
}

Json error_json(const std::string &code, const std::string &message) {
    return {{"error", code}, {"message", message}};
}

Json read_input(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return io::parse(buf.str());
}

BloomKind parse_kind(const Options &o) {
    if (o.kind == "lambda") {
        if (!o.lambda) {
            throw Error(ErrorCode::ParseError, "--kind lambda requires --lambda");
        }
        return BloomKind::lambda(*o.lambda);
    }
    if (o.lambda) {
        throw Error(ErrorCode::ParseError, "--lambda is only valid with --kind lambda");
    }
    if (o.kind == "right") {
        return BloomKind::right();
    }
    if (o.kind == "left") {
        return BloomKind::left();
    }
    return BloomKind::symmetric();
}

Json finite_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json to_json(const MarginalReport &m) {
    return {{"factor", m.factor},
            {"is_state", m.is_state},
            {"min_eigenvalue", finite_or_null(m.min_eigenvalue)},
            {"trace_deviation", m.trace_deviation}};
}

Json to_json(const PdoReport &r) {
    Json marginals = Json::array();
    for (const auto &m : r.marginals) {
        marginals.push_back(to_json(m));
    }
    return {{"ok", r.ok},
            {"self_adjoint", r.self_adjoint},
            {"hermiticity_deviation", r.hermiticity_deviation},
            {"trace_deviation", r.trace_deviation},
            {"marginals", std::move(marginals)}};
}

Json to_json(const ChainReport &r) {
    Json pairs = Json::array();
    for (const auto &p : r.pairs) {
        pairs.push_back({{"ok", p.ok},
                         {"pdo", to_json(p.pdo)},
                         {"invertible", p.invertible},
                         {"spectrum_margin", finite_or_null(p.spectrum_margin)},
                         {"cptp", p.cptp ? Json(p.cptp->ok) : Json(nullptr)},
                         {"choi_min_eigenvalue", finite_or_null(p.choi_min_eigenvalue)},
                         {"residual", finite_or_null(p.residual)}});
    }
    return {{"ok", r.ok},
            {"pairs_ok", r.pairs_ok},
            {"pairs", std::move(pairs)},
            {"jordan_ok", r.jordan_ok},
            {"jordan_deviation", finite_or_null(r.jordan_deviation)},
            {"disagreement", r.disagreement}};
}

Json negativity_or_null(const AlgebraElement &t, double tol) {
    if (hermiticity_deviation(t) > tol) {
        return nullptr;
    }
    return negativity_witness(t, tol).negativity;
}

Outcome cmd_compute(const Options &o, std::ostream &err) {
    const auto chain = io::process_from_json(read_input(o.in));
    const auto kind = parse_kind(o);
    if (kind.variant() != BloomKind::Variant::Symmetric) {
        emit(err, {{"warning", "only the symmetric bloom guarantees self-adjoint output"}, {"kind", kind.name()}});
    }
    if (!is_state(chain.rho(), o.tol)) {
        emit(err, {{"warning", "initial element is not a state"},
                   {"min_eigenvalue", min_eigenvalue(chain.rho())}});
    }
    bool all_tp = true;
    for (std::size_t i = 1; i <= chain.length(); ++i) {
        const auto check = is_cptp(chain.channel(i), o.tol);
        all_tp = all_tp && check.trace.ok;
        if (!check.ok) {
            emit(err, {{"warning", "map is not CPTP"},
                       {"channel", i},
                       {"trace_deviation", check.trace.deviation},
                       {"choi_min_eigenvalue", check.positivity.min_eigenvalue}});
        }
    }
    std::optional<ParenTree> tree;
    if (!o.paren.empty()) {
        tree = ParenTree::parse(o.paren);
    }
    const auto tau = tree ? state_over_time(chain, *tree, kind) : state_over_time(chain, kind);
    const auto f = chain.factorization();

    Json deviations = Json::array();
    double worst = 0.0;
    const auto marginals = chain.marginals();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::size_t keep[] = {i};
        const double d = max_abs_diff(partial_trace(tau, f, keep), marginals[i]);
        worst = std::max(worst, d);
        deviations.push_back(d);
    }
    Json report = {{"trace", tau.trace().real()},
                   {"trace_imag", tau.trace().imag()},
                   {"hermiticity_deviation", hermiticity_deviation(tau)},
                   {"marginal_deviations", std::move(deviations)},
                   {"min_eigenvalue", min_eigenvalue(tau)},
                   {"negativity", negativity_or_null(tau, o.tol)},
                   {"kind", kind.name()},
                   {"paren", tree ? Json(tree->to_string()) : Json(nullptr)}};
    Outcome outcome;
    outcome.result = io::pdo_to_json(tau, f);
    outcome.result["report"] = std::move(report);
    if (all_tp && worst > kReconstructionTol) {
        outcome.code = kNumericalFailure;
        outcome.failure = error_json("NumericalFailure", "marginals of the output drift from the process");
    }
    return outcome;
}

Outcome cmd_extract(const Options &o, std::ostream &err) {
    const auto [t, f] = io::pdo_from_json(read_input(o.in));
    if (f.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "extraction needs at least two factors");
    }
    const auto membership = in_T_star_chain(t, f, o.tol);
    if (membership.disagreement) {
        emit(err, {{"warning", "membership conditions disagree"}, {"report", to_json(membership)}});
    }
    for (std::size_t i = 0; i < membership.pairs.size(); ++i) {
        if (!membership.pairs[i].invertible) {
            Outcome outcome;
            outcome.code = kPreconditionFailure;
            outcome.failure = error_json("SingularMarginal", "marginal on factor " + std::to_string(i) + " is singular");
            (*outcome.failure)["report"] = to_json(membership);
            return outcome;
        }
    }
    if (!membership.ok && !o.force) {
        Outcome outcome;
        outcome.code = kPreconditionFailure;
        outcome.failure = error_json("NotInTStar", "element is outside the extractable class; use --force to extract anyway");
        (*outcome.failure)["report"] = to_json(membership);
        return outcome;
    }
    const auto extraction = extract_process(t, f, true, o.tol);
    const double reconstruction = max_abs_diff(yinyang(extraction.chain), t);

    Outcome outcome;
    outcome.result = io::to_json(extraction.chain);
    const auto &d = extraction.diagnostics;
    outcome.result["diagnostics"] = {{"cptp", d.cptp},
                                     {"choi_min_eig", d.choi_min_eig},
                                     {"residuals", d.residuals},
                                     {"pairs_ok", membership.pairs_ok},
                                     {"jordan_ok", membership.jordan_ok},
                                     {"jordan_deviation", finite_or_null(membership.jordan_deviation)},
                                     {"disagreement", membership.disagreement},
                                     {"reconstruction_deviation", reconstruction}};
    if (o.force && !membership.ok) {
        emit(err, {{"warning", "forced extraction outside the extractable class"}, {"cptp", d.cptp}});
    }
    if (membership.ok && reconstruction > kReconstructionTol) {
        outcome.code = kNumericalFailure;
        outcome.failure = error_json("NumericalFailure", "extracted process does not reproduce the input");
    }
    return outcome;
}

Outcome cmd_validate(const Options &o, std::ostream &) {
    const auto [t, f] = io::pdo_from_json(read_input(o.in));
    const auto pdo = is_pdo(t, f, o.tol);
    Outcome outcome;
    outcome.result = {{"pdo", pdo.ok},
                      {"state", is_state(t, o.tol)},
                      {"self_adjoint", pdo.self_adjoint},
                      {"hermiticity_deviation", pdo.hermiticity_deviation},
                      {"trace", t.trace().real()},
                      {"trace_imag", t.trace().imag()},
                      {"marginals", to_json(pdo)["marginals"]}};
    if (f.size() >= 2) {
        outcome.result["t_star"] = to_json(in_T_star_chain(t, f, o.tol));
    }
    return outcome;
}

Outcome cmd_spectrum(const Options &o, std::ostream &) {
    const auto input = read_input(o.in);
    const auto t = io::element_from_json(input.contains("element") ? input.at("element") : input);
    const double dev = hermiticity_deviation(t);
    Outcome outcome;
    outcome.result = {{"eigenvalues", eigenvalues(t)},
                      {"min_eigenvalue", min_eigenvalue(t)},
                      {"self_adjoint", dev <= o.tol},
                      {"hermiticity_deviation", dev},
                      {"negativity", negativity_or_null(t, o.tol)}};
    return outcome;
}

Outcome cmd_classical(const Options &o, std::ostream &) {
    const auto input = read_input(o.in);
    Outcome outcome;
    if (input.contains("initial")) {
        const auto initial = io::dist_from_json(input.at("initial"));
        const auto &maps = input.at("maps");
        if (!maps.is_array() || maps.empty()) {
            throw Error(ErrorCode::ParseError, "\"maps\" must be a nonempty array");
        }
        std::vector<SuperOperator> channels;
        Json sets = Json::array({initial.labels()});
        for (const auto &m : maps) {
            const auto f = io::stochastic_from_json(m);
            channels.push_back(q_embed(f));
            sets.push_back(f.target());
        }
        const auto tau = yinyang(ProcessChain(as_element(initial), std::move(channels)));
        std::vector<double> weights;
        for (const auto &b : tau.blocks()) {
            weights.push_back(b(0, 0).real());
        }
        outcome.result = {{"joint", {{"sets", std::move(sets)}, {"weights", std::move(weights)}}},
                          {"negativity", negativity_witness(tau, o.tol).negativity}};
        return outcome;
    }
    if (!input.contains("joint")) {
        throw Error(ErrorCode::ParseError, "classical input needs \"initial\" and \"maps\", or \"joint\"");
    }
    const auto &joint = input.at("joint");
    std::vector<AlgebraDescriptor> factors;
    std::vector<std::vector<std::string>> sets;
    for (const auto &s : joint.at("sets")) {
        sets.push_back(s.get<std::vector<std::string>>());
        factors.push_back(AlgebraDescriptor::classical(sets.back()));
    }
    if (factors.size() < 2) {
        throw Error(ErrorCode::ParseError, "a joint distribution needs at least two sets");
    }
    const TensorFactorization f(factors);
    const auto weights = joint.at("weights").get<std::vector<double>>();
    if (weights.size() != f.composite().block_count()) {
        throw Error(ErrorCode::ShapeMismatch, "weight count does not match the product of set sizes");
    }
    std::vector<Matrix> blocks;
    for (double w : weights) {
        blocks.push_back(Matrix::Constant(1, 1, w));
    }
    const AlgebraElement tau(f.composite(), std::move(blocks));
    const std::size_t first[] = {0};
    Json maps = Json::array();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        const std::size_t keep[] = {i - 1, i};
        const auto pair = partial_trace(tau, f, keep);
        JointDist jd{sets[i - 1], sets[i], Eigen::MatrixXd(sets[i - 1].size(), sets[i].size())};
        for (std::size_t x = 0; x < sets[i - 1].size(); ++x) {
            for (std::size_t y = 0; y < sets[i].size(); ++y) {
                jd.weights(x, y) = pair.block(x * sets[i].size() + y)(0, 0).real();
            }
        }
        maps.push_back(io::to_json(classical_extract(jd).map));
    }
    outcome.result = {{"initial", io::to_json(as_dist(partial_trace(tau, f, first), false, o.tol))},
                      {"maps", std::move(maps)}};
    return outcome;
}

int exit_code_for(ErrorCode code) {
    return code == ErrorCode::ParseError ? kParseFailure : kPreconditionFailure;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"States over time: build pseudo-density operators from processes and back."};
    app.name("sot");
    app.add_option("command", o.command, "compute | extract | validate | spectrum | classical")
        ->required()
        ->check(CLI::IsMember({"compute", "extract", "validate", "spectrum", "classical"}));
    app.add_option("--in", o.in, "input JSON file")->required();
    app.add_option("--out", o.out, "output JSON file (stdout when omitted)");
    auto *tol = app.add_option("--tol", o.tol, "numerical tolerance (default $SOT_TOL, else 1e-9)");
    app.add_option("--kind", o.kind, "bloom kind")->check(CLI::IsMember({"symmetric", "right", "left", "lambda"}));
    app.add_option("--lambda", o.lambda, "weight of the right bloom for --kind lambda");
    app.add_option("--paren", o.paren, "parenthesization as nested arrays, e.g. [[0,1],2]");
    app.add_flag("--force", o.force, "extract even outside the extractable class");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &ex) {
        emit(err, error_json("ParseError", ex.what()));
        return kParseFailure;
    }
    if (tol->count() == 0) {
        if (const char *env = std::getenv("SOT_TOL"); env != nullptr && *env != '\0') {
            std::istringstream in(env);
            if (!(in >> o.tol) || !(in >> std::ws).eof()) {
                emit(err, error_json("ParseError", std::string("SOT_TOL is not a number: ") + env));
                return kParseFailure;
            }
        }
    }
    if (!(std::isfinite(o.tol) && o.tol > 0.0)) {
        emit(err, error_json("ParseError", "tolerance must be a positive number"));
        return kParseFailure;
    }

    Outcome outcome;
    try {
        if (o.command == "compute") {
            outcome = cmd_compute(o, err);
        } else if (o.command == "extract") {
            outcome = cmd_extract(o, err);
        } else if (o.command == "validate") {
            outcome = cmd_validate(o, err);
        } else if (o.command == "spectrum") {
            outcome = cmd_spectrum(o, err);
        } else {
            outcome = cmd_classical(o, err);
        }
    } catch (const Error &ex) {
        emit(err, error_json(std::string(to_string(ex.code())), ex.what()));
        return exit_code_for(ex.code());
    } catch (const io::Json::exception &ex) {
        emit(err, error_json("ParseError", ex.what()));
        return kParseFailure;
    }

    if (outcome.failure) {
        emit(err, *outcome.failure);
    }
    if (outcome.code == kPreconditionFailure) {
        return outcome.code;
    }
    const std::string text = io::dump(outcome.result);
    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        file << text;
        if (!file) {
            emit(err, error_json("IoError", "cannot write " + o.out));
            return kParseFailure;
        }
    }
    return outcome.code;
}

}  // namespace sot::cli
