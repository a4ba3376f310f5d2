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

#ifndef QEXC_REPORT_H
#define QEXC_REPORT_H

#include <string>
#include <utility>
#include <vector>

#include "qexc/codesearch.h"
#include "qexc/klverify.h"
#include "qexc/stabcheck.h"

namespace qexc {

/// Ordered key/value report. Keys are stable; values never contain newlines.
class Report {
   public:
    void add(std::string key, std::string value);
    void add(std::string key, const char *value) {
        add(std::move(key), std::string(value));
    }
    void add(std::string key, bool value);
    void add(std::string key, int value);
    void add(std::string key, long value);
    void add(std::string key, unsigned long value);
    void add(std::string key, double value);
    /// Appends the entries of other with every key prefixed by prefix + ".".
    void append(const std::string &prefix, const Report &other);

    const std::vector<std::pair<std::string, std::string>> &entries() const {
        return entries_;
    }
    /// Value of the first entry with this key, or empty.
    std::string get(const std::string &key) const;

    /// One "key: value" line per entry.
    std::string structured() const;
    /// Aligned listing for people.
    std::string human() const;

   private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Fixed-format rendering of a double: %.12g, with -0 printed as 0.
std::string format_double(double v);

Report report_kl(const KLReport &r, const ErrorSet &errors, size_t max_violations = 20);
Report report_blocks(const BlockReport &r);
Report report_dmatrix(const DMatrix &d, const ErrorSet &errors);
Report report_gram(const GramTensor &g, const ErrorSet &errors);
Report report_additivity(const AdditivityReport &r);
Report report_witness(const EigenWitness &w);
Report report_solver(const SolverResult &r);
Report report_survey(const std::vector<SolverResult> &results);
Report report_bound(const BoundResult &r);
Report report_shor_demo(const ShorDemoReport &r);

}  // namespace qexc

#endif  // QEXC_REPORT_H
