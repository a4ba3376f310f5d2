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

#include <benchmark/benchmark.h>

#include "qexc/codes.h"
#include "qexc/codesearch.h"
#include "qexc/errorops.h"
#include "qexc/klverify.h"
#include "qexc/stabcheck.h"

using namespace qexc;

namespace {

const ErrorSet &full9() {
    static const ErrorSet s = basic_error_set(9, families::single_pauli | families::exchange);
    return s;
}

void BM_GramTensorExact(benchmark::State &state) {
    Code c = ruskai9_code();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_tensor(c, full9()));
    }
}
BENCHMARK(BM_GramTensorExact)->Unit(benchmark::kMillisecond);

void BM_GramTensorFloat(benchmark::State &state) {
    Code c = ruskai9_code().to_float();
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram_tensor(c, full9()));
    }
}
BENCHMARK(BM_GramTensorFloat)->Unit(benchmark::kMillisecond);

void BM_VerifyKL(benchmark::State &state) {
    Code c = state.range(0) ? ruskai9_code() : ruskai9_code().to_float();
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_kl(c, full9()));
    }
}
BENCHMARK(BM_VerifyKL)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_StabilizerScan(benchmark::State &state) {
    Code c = ruskai9_code();
    for (auto _ : state) {
        benchmark::DoNotOptimize(stabilizer_scan(c));
    }
}
BENCHMARK(BM_StabilizerScan)->Unit(benchmark::kMillisecond);

void BM_SolveRuskaiPattern(benchmark::State &state) {
    SupportPattern p = dual_pattern(9, {0, 6});
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_coefficients(p));
    }
}
BENCHMARK(BM_SolveRuskaiPattern)->Unit(benchmark::kMillisecond);

void BM_Survey7(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(survey_7bit());
    }
}
BENCHMARK(BM_Survey7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
