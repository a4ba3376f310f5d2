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

#include "qexc/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qexc {

void Report::add(std::string key, std::string value) {
    std::replace(value.begin(), value.end(), '\n', ' ');
    entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add(std::string key, bool value) {
    add(std::move(key), std::string(value ? "true" : "false"));
}

void Report::add(std::string key, int value) {
    add(std::move(key), std::to_string(value));
}

void Report::add(std::string key, long value) {
    add(std::move(key), std::to_string(value));
}

void Report::add(std::string key, unsigned long value) {
    add(std::move(key), std::to_string(value));
}

void Report::add(std::string key, double value) {
    add(std::move(key), format_double(value));
}

void Report::append(const std::string &prefix, const Report &other) {
    for (const auto &[k, v] : other.entries_) {
        entries_.emplace_back(prefix + "." + k, v);
    }
}

std::string Report::get(const std::string &key) const {
    for (const auto &[k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    return {};
}

std::string Report::structured() const {
    std::string out;
    for (const auto &[k, v] : entries_) {
        out += k + ": " + v + "\n";
    }
    return out;
}

std::string Report::human() const {
    size_t width = 0;
    for (const auto &e : entries_) {
        width = std::max(width, e.first.size());
    }
    width = std::min<size_t>(width, 40);
    std::string out;
    for (const auto &[k, v] : entries_) {
        std::string key = k;
        out += "  " + key + std::string(width > key.size() ? width - key.size() : 0, ' ') + "  " + v + "\n";
    }
    return out;
}

std::string format_double(double v) {
    if (v == 0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string format_complex(std::complex<double> z) {
    if (z.imag() == 0 || std::abs(z.imag()) < 1e-15) {
        return format_double(z.real());
    }
    std::string re = std::abs(z.real()) < 1e-15 ? "" : format_double(z.real());
    std::string im = format_double(std::abs(z.imag())) + "i";
    if (re.empty()) {
        return (z.imag() < 0 ? "-" : "") + im;
    }
    return re + (z.imag() < 0 ? " - " : " + ") + im;
}

std::string value_str(const InnerProductValue &v) {
    return v.mode == Mode::exact ? v.str() : format_complex(v.value);
}

std::string mode_name(Mode m) {
    return m == Mode::exact ? "exact" : "float";
}

}  // namespace

Report report_kl(const KLReport &r, const ErrorSet &errors, size_t max_violations) {
    Report out;
    out.add("correctable", r.correctable);
    out.add("mode", mode_name(r.mode));
    out.add("tolerance", r.tolerance);
    out.add("strict", r.strict);
    out.add("num_words", static_cast<unsigned long>(r.num_words));
    out.add("num_errors", static_cast<unsigned long>(r.num_errors));
    if (r.correctable) {
        out.add("rank", r.rank);
        out.add("dimension_used", static_cast<unsigned long>(r.dimension_used));
    }
    out.add("space_dimension", static_cast<unsigned long>(r.space_dimension));
    out.add("violations", static_cast<unsigned long>(r.violations.size()));
    for (size_t k = 0; k < r.violations.size() && k < max_violations; ++k) {
        const Violation &v = r.violations[k];
        std::string key = "violation." + std::to_string(k);
        out.add(key + ".kind", v.kind_name());
        out.add(key + ".errors",
                (v.p < errors.size() ? errors.label(v.p) : std::to_string(v.p)) + " | " +
                    (v.q < errors.size() ? errors.label(v.q) : std::to_string(v.q)));
        out.add(key + ".words", v.word_i + " | " + v.word_j);
        out.add(key + ".residual", value_str(v.residual));
        out.add(key + ".magnitude", v.magnitude);
    }
    return out;
}

Report report_blocks(const BlockReport &r) {
    Report out;
    out.add("block_diagonal", r.block_diagonal);
    out.add("max_off_block", r.max_off_block);
    out.add("rank", r.total_rank);
    out.add("sum_of_block_ranks", r.sum_of_block_ranks);
    out.add("dimension_used", static_cast<unsigned long>(r.dimension_used));
    for (const auto &b : r.blocks) {
        std::string key = "block." + b.name;
        out.add(key + ".range", std::to_string(b.begin) + ".." + std::to_string(b.begin + b.size - 1));
        out.add(key + ".rank", b.rank);
        out.add(key + ".diagonal", b.uniform_diagonal ? value_str(*b.uniform_diagonal) : std::string("mixed"));
        out.add(key + ".offdiagonal",
                b.size < 2 ? std::string("none")
                           : (b.uniform_offdiagonal ? value_str(*b.uniform_offdiagonal) : std::string("mixed")));
    }
    return out;
}

Report report_dmatrix(const DMatrix &d, const ErrorSet &errors) {
    Report out;
    out.add("size", static_cast<unsigned long>(d.size()));
    out.add("mode", mode_name(d.mode()));
    for (size_t p = 0; p < d.size(); ++p) {
        std::string row;
        for (size_t q = 0; q < d.size(); ++q) {
            row += (q ? " " : "") + value_str(d.at(p, q));
        }
        out.add("row." + errors.label(p), row);
    }
    return out;
}

Report report_gram(const GramTensor &g, const ErrorSet &errors) {
    Report out;
    out.add("num_errors", static_cast<unsigned long>(g.num_errors()));
    out.add("num_words", static_cast<unsigned long>(g.num_words()));
    out.add("mode", mode_name(g.mode()));
    out.add("hermitian", g.mode() == Mode::exact ? g.is_exactly_hermitian() : g.hermiticity_defect() < 1e-12);
    for (size_t i = 0; i < g.num_words(); ++i) {
        for (size_t j = 0; j < g.num_words(); ++j) {
            for (size_t p = 0; p < g.num_errors(); ++p) {
                std::string row;
                for (size_t q = 0; q < g.num_errors(); ++q) {
                    row += (q ? " " : "") + value_str(g.at(p, i, q, j));
                }
                out.add("gram." + std::to_string(i) + "." + std::to_string(j) + "." + errors.label(p), row);
            }
        }
    }
    return out;
}

Report report_additivity(const AdditivityReport &r) {
    Report out;
    out.add("scanned", static_cast<unsigned long>(r.scanned));
    out.add("nontrivially_stabilized", r.is_nontrivially_stabilized);
    out.add("additive_candidate", r.is_nontrivially_stabilized);
    out.add("stabilizers", static_cast<unsigned long>(r.findings.size()));
    for (size_t k = 0; k < r.findings.size(); ++k) {
        out.add("stabilizer." + std::to_string(k),
                r.findings[k].element.str() + " eigenvalue " + r.findings[k].eigenvalue_str());
    }
    return out;
}

Report report_witness(const EigenWitness &w) {
    Report out;
    out.add("stabilizes", w.stabilizes);
    if (w.eigenvalue_power) {
        static const char *powers[4] = {"1", "i", "-1", "-i"};
        out.add("eigenvalue", powers[((*w.eigenvalue_power % 4) + 4) % 4]);
    }
    switch (w.kind) {
        case EigenWitness::Kind::none:
            out.add("witness", "none");
            break;
        case EigenWitness::Kind::support:
            out.add("witness", "support");
            out.add("word", static_cast<unsigned long>(w.word));
            out.add("component", static_cast<unsigned long>(w.component));
            out.add("image", static_cast<unsigned long>(w.image));
            break;
        case EigenWitness::Kind::phase:
            out.add("witness", "phase");
            out.add("word", static_cast<unsigned long>(w.word));
            out.add("component", static_cast<unsigned long>(w.component));
            out.add("parity", w.parity);
            break;
    }
    out.add("description", w.description);
    return out;
}

Report report_solver(const SolverResult &r) {
    Report out;
    out.add("pattern", r.pattern.str());
    out.add("errors", search_errors_name(r.errors));
    out.add("status", r.status_name());
    out.add("feasible", r.feasible());
    out.add("method", r.method);
    if (r.feasible()) {
        for (size_t w = 0; w < r.coefficients.size(); ++w) {
            for (const auto &[k, a] : r.coefficients[w]) {
                out.add("coefficient." + std::to_string(w) + "." + std::to_string(k), a);
            }
        }
        out.add("max_residual", r.max_residual);
        out.add("verified", r.verified);
    } else {
        out.add("certificate", r.certificate);
    }
    if (r.method == "grid") {
        out.add("resolution", r.resolution);
    }
    return out;
}

Report report_survey(const std::vector<SolverResult> &results) {
    Report out;
    size_t feasible = 0;
    size_t infeasible = 0;
    for (const auto &r : results) {
        feasible += r.status == SolverResult::Status::feasible;
        infeasible += r.status == SolverResult::Status::infeasible;
    }
    out.add("patterns", static_cast<unsigned long>(results.size()));
    out.add("feasible", static_cast<unsigned long>(feasible));
    out.add("infeasible", static_cast<unsigned long>(infeasible));
    out.add("no_solution_found", static_cast<unsigned long>(results.size() - feasible - infeasible));
    for (size_t k = 0; k < results.size(); ++k) {
        out.append("result." + std::to_string(k), report_solver(results[k]));
    }
    return out;
}

Report report_bound(const BoundResult &r) {
    Report out;
    out.add("scenario", scenario_name(r.scenario));
    out.add("inequality", r.inequality);
    out.add("min_n", r.min_n);
    out.add("n", r.n);
    out.add("holds_at_n", r.holds_at_n);
    out.add("required", format_double(static_cast<double>(r.required)));
    out.add("available", format_double(static_cast<double>(r.available)));
    for (size_t k = 0; k < r.trace.size(); ++k) {
        out.add("trace." + std::to_string(k), r.trace[k]);
    }
    return out;
}

Report report_shor_demo(const ShorDemoReport &r) {
    Report out;
    std::string qubits;
    for (int q : r.matching_qubits) {
        qubits += (qubits.empty() ? "" : ",") + std::to_string(q);
    }
    std::string quoted;
    for (int q : r.quoted_labels) {
        quoted += (quoted.empty() ? "" : ",") + std::to_string(q);
    }
    out.add("matching_qubits", qubits);
    out.add("quoted_labels", quoted);
    out.add("image_matches", r.image_matches);
    for (size_t k = 0; k < r.samples.size(); ++k) {
        const auto &s = r.samples[k];
        std::string key = "sample." + std::to_string(k);
        out.add(key + ".a", format_complex(s.a));
        out.add(key + ".b", format_complex(s.b));
        out.add(key + ".code_coefficient", format_complex(s.code_coefficient));
        out.add(key + ".error_coefficient", format_complex(s.error_coefficient));
        out.add(key + ".code_fraction", s.code_fraction);
        out.add(key + ".error_fraction", s.error_fraction);
        out.add(key + ".remainder_fraction", s.remainder_fraction);
        out.add(key + ".remainder_overlap", s.remainder_overlap);
    }
    if (!r.samples.empty()) {
        out.add("coefficient", format_complex(r.samples[0].code_coefficient));
        out.add("remainder_fraction", r.samples[0].remainder_fraction);
    }
    out.append("kl", report_kl(r.kl, r.kl_errors, 3));
    return out;
}

}  // namespace qexc
