// Copyright 2026 The algebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal library walkthrough: generate one problem per dimension, evaluate
// it against the built-in perfect responder, and print the graded result.

#include <cstdio>

#include "algebench/analysis.hpp"
#include "algebench/generators.hpp"
#include "algebench/harness.hpp"

int main() {
    using namespace algebench;

    ModelEndpoint mock;
    mock.model_id = "mock-perfect";
    mock.base_url = "mock://perfect";

    for (Dimension dim : kAllDimensions) {
        std::int64_t level = schedule(dim).levels.front();
        std::vector<Problem> problems = generate(dim, level, 1, /*seed=*/42);
        std::vector<Transcript> transcripts = run_suite(mock, problems);
        const Problem& p = problems[0];
        std::printf("%s level %-3lld  %-28s = %-12s [%s]\n",
                    dimension_name(dim).c_str(), static_cast<long long>(p.level),
                    p.infix.c_str(), p.answer[0].decimal_string(12).c_str(),
                    grade_name(transcripts[0].grade).c_str());
    }
    return 0;
}
