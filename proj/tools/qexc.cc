// Copyright 2026 The qexc Authors
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

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qexc/codes.h"
#include "qexc/codesearch.h"
#include "qexc/errors.h"
#include "qexc/klverify.h"
#include "qexc/report.h"
#include "qexc/stabcheck.h"

namespace {

using namespace qexc;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string mode = "exact";
    std::optional<double> tolerance;
    std::string output = "human";
    uint64_t seed = 2024;
};

struct CodeSource {
    std::string builtin;
    std::string file;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Code load_code(const CodeSource &src, const RunConfig &cfg) {
    if (!src.builtin.empty() && !src.file.empty()) {
        throw DomainError("give either --code or --codefile, not both");
    }
    Code code;
    if (!src.file.empty()) {
        code = parse_code(read_file(src.file));
    } else {
        code = builtin_code(src.builtin.empty() ? "ruskai9" : src.builtin);
    }
    if (cfg.mode == "float") {
        code = code.to_float();
    }
    return code;
}

KLOptions kl_options(const RunConfig &cfg, bool strict) {
    KLOptions o;
    o.tolerance = cfg.tolerance;
    o.strict = strict;
    return o;
}

void emit(const RunConfig &cfg, const std::string &title, const Report &r) {
    if (cfg.output == "structured") {
        std::cout << r.structured();
    } else {
        std::cout << title << "\n" << r.human();
    }
}

std::set<int> parse_weights(const std::string &text) {
    std::set<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size()) {
            throw ParseError("bad weight '" + item + "'", 1, 1);
        }
        out.insert(v);
    }
    return out;
}

// A witness mask is either an n-character bit string (qubit 1 first) or a decimal integer.
uint32_t parse_mask(const std::string &text, int n) {
    if (static_cast<int>(text.size()) == n && text.find_first_not_of("01") == std::string::npos) {
        return static_cast<uint32_t>(std::stoul(text, nullptr, 2));
    }
    size_t used = 0;
    unsigned long v = std::stoul(text, &used);
    if (used != text.size() || v >= (1ul << n)) {
        throw ParseError("bad mask '" + text + "'", 1, 1);
    }
    return static_cast<uint32_t>(v);
}

SearchErrors parse_search_errors(const std::string &name) {
    if (name == "pauli+exchange") {
        return SearchErrors::single_pauli_exchange;
    }
    if (name == "pauli") {
        return SearchErrors::single_pauli;
    }
    if (name == "bitflip") {
        return SearchErrors::bit_flip;
    }
    throw DomainError("unknown search error set '" + name + "'");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact verification of quantum codes against Pauli and exchange errors", "qexc"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    double tol = -1;
    app.add_option("--mode", cfg.mode, "Arithmetic: exact or float")
        ->check(CLI::IsMember({"exact", "float"}))
        ->capture_default_str();
    app.add_option("--tol", tol, "Absolute tolerance (default 0 exact, 1e-9 float)")->check(CLI::NonNegativeNumber);
    app.add_option("--output", cfg.output, "Report style: human or structured")
        ->check(CLI::IsMember({"human", "structured"}))
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for randomized demos")->capture_default_str();

    CodeSource src;
    std::string errors_text = "pauli+exchange";
    bool strict = false;
    auto add_code_options = [&](CLI::App *sub) {
        sub->add_option("--code", src.builtin, "Built-in code: ruskai9, shor9, rep3, five-qubit");
        sub->add_option("--codefile", src.file, "Code file")->check(CLI::ExistingFile);
        sub->add_option("--errors", errors_text, "Error set, e.g. pauli+exchange or 'I, Z1, E(3,4)'")
            ->capture_default_str();
    };

    auto *verify = app.add_subcommand("verify", "Check the Knill-Laflamme conditions");
    add_code_options(verify);
    verify->add_flag("--strict", strict, "Also require D proportional to the identity");

    bool full = false;
    auto *dmatrix = app.add_subcommand("dmatrix", "Print the D matrix block structure");
    add_code_options(dmatrix);
    dmatrix->add_flag("--full", full, "Print every row of D");

    auto *gram = app.add_subcommand("gram", "Print the Gram tensor <e_p C_i|e_q C_j>");
    add_code_options(gram);

    std::string stab_file;
    std::vector<std::string> witness;
    auto *stab = app.add_subcommand("stab-check", "Scan the Pauli group for stabilizers of the code");
    stab->add_option("codefile", stab_file, "Code file or built-in code name")->required();
    stab->add_option("--witness", witness, "Masks a b of the element X(a)Z(b)")->expected(2);

    int search_n = 0;
    std::string support0;
    std::string support1;
    bool dual = false;
    std::string search_set = "pauli+exchange";
    auto *search = app.add_subcommand("search", "Solve for coefficients of a permutation-invariant code");
    search->add_option("--n", search_n, "Qubit count")->required();
    search->add_option("--support0", support0, "Weights of word 0, e.g. 0,6")->required();
    search->add_option("--support1", support1, "Weights of word 1 (defaults to the complement of word 0)");
    search->add_flag("--dual", dual, "Word 1 is the bit complement of word 0");
    search->add_option("--error-set", search_set, "pauli+exchange, pauli or bitflip")->capture_default_str();

    int survey_n = 7;
    int max_weights = 3;
    std::string survey_set = "pauli";
    auto *survey_cmd = app.add_subcommand("survey", "Solve every complement-dual pattern on n qubits");
    survey_cmd->add_option("--n", survey_n, "Qubit count")->capture_default_str();
    survey_cmd->add_option("--max-weights", max_weights, "Weights per word")->capture_default_str();
    survey_cmd->add_option("--error-set", survey_set, "pauli+exchange, pauli or bitflip")->capture_default_str();

    int samples = 3;
    auto *demo = app.add_subcommand("demo-shor", "Expand an exchange error on the Shor code");
    demo->add_option("--samples", samples, "Random logical states")->capture_default_str();

    std::string scenario;
    int bound_n = 9;
    auto *bounds = app.add_subcommand("bounds", "Dimension counting bounds");
    bounds->add_option("--scenario", scenario, "single_bit, all_two_bit_plus_single (two_bit) or irrep_proposal (irrep)")->required();
    bounds->add_option("--n", bound_n, "Qubit count to evaluate")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e);
            return kExitOk;
        }
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
    if (tol >= 0) {
        cfg.tolerance = tol;
    }

    try {
        if (verify->parsed() || dmatrix->parsed() || gram->parsed()) {
            Code code = load_code(src, cfg);
            ErrorSet errors = parse_error_set(errors_text, code.n);
            std::string title = (code.label.empty() ? std::string("code") : code.label) + " / " + errors_text;
            if (gram->parsed()) {
                emit(cfg, "gram " + title, report_gram(gram_tensor(code, errors), errors));
                return kExitOk;
            }
            KLReport kl = verify_kl(code, errors, kl_options(cfg, strict));
            if (verify->parsed()) {
                emit(cfg, "verify " + title, report_kl(kl, errors));
                return kl.correctable ? kExitOk : kExitNegative;
            }
            if (!kl.D) {
                emit(cfg, "dmatrix " + title, report_kl(kl, errors));
                return kExitNegative;
            }
            Report r = report_blocks(d_blocks(*kl.D, errors, code.words.size(), kl.tolerance));
            if (full) {
                r.append("D", report_dmatrix(*kl.D, errors));
            }
            emit(cfg, "dmatrix " + title, r);
            return kExitOk;
        }
        if (stab->parsed()) {
            CodeSource s;
            bool builtin = false;
            for (const auto &name : builtin_code_names()) {
                builtin |= name == stab_file;
            }
            (builtin ? s.builtin : s.file) = stab_file;
            Code code = load_code(s, cfg);
            if (!witness.empty()) {
                PauliString element(code.n, parse_mask(witness[0], code.n), parse_mask(witness[1], code.n));
                EigenWitness w = eigenvector_witness(code, element);
                emit(cfg, "witness " + element.str(), report_witness(w));
                return kExitOk;
            }
            emit(cfg, "stabilizer scan " + code.label, report_additivity(stabilizer_scan(code)));
            return kExitOk;
        }
        if (search->parsed()) {
            SupportPattern p;
            p.n = search_n;
            p.weights0 = parse_weights(support0);
            if (support1.empty()) {
                p = dual_pattern(search_n, p.weights0);
            } else {
                p.weights1 = parse_weights(support1);
                p.dual = dual;
            }
            SolverOptions opts;
            opts.errors = parse_search_errors(search_set);
            if (cfg.tolerance) {
                opts.tolerance = *cfg.tolerance;
            }
            SolverResult r = solve_coefficients(p, opts);
            emit(cfg, "search " + p.str(), report_solver(r));
            return r.feasible() ? kExitOk : kExitNegative;
        }
        if (survey_cmd->parsed()) {
            SolverOptions opts;
            opts.errors = parse_search_errors(survey_set);
            if (cfg.tolerance) {
                opts.tolerance = *cfg.tolerance;
            }
            emit(cfg, "survey n=" + std::to_string(survey_n), report_survey(survey(survey_n, opts, max_weights)));
            return kExitOk;
        }
        if (demo->parsed()) {
            emit(cfg, "shor exchange demo", report_shor_demo(shor_exchange_demo(cfg.seed, samples)));
            return kExitOk;
        }
        if (bounds->parsed()) {
            auto s = parse_scenario(scenario);
            if (!s) {
                throw DomainError("unknown scenario '" + scenario + "'");
            }
            emit(cfg, "bound " + scenario, report_bound(dimension_bound(bound_n, *s)));
            return kExitOk;
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
