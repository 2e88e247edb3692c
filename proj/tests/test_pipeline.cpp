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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "algebench/io.hpp"
#include "algebench/pipeline.hpp"

using namespace algebench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("algebench_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("problem json round trip preserves everything the pipeline needs") {
    for (Dimension dim : kAllDimensions) {
        std::int64_t level = schedule(dim).levels.front();
        for (const auto& p : generate(dim, level, 2, 42)) {
            Problem back = problem_from_json(problem_to_json(p));
            CHECK(back.id == p.id);
            CHECK(back.dimension == p.dimension);
            CHECK(back.level == p.level);
            CHECK(back.infix == p.infix);
            CHECK(back.is_control == p.is_control);
            CHECK(back.seed == p.seed);
            CHECK(back.metrics == p.metrics);
            if (p.expr) CHECK(*back.expr == *p.expr);
            REQUIRE(back.answer.size() == p.answer.size());
            for (std::size_t i = 0; i < p.answer.size(); ++i) {
                if (p.answer[i].is_exact())
                    CHECK(back.answer[i] == p.answer[i]);
                else
                    CHECK(back.answer[i].decimal_string(30) ==
                          p.answer[i].decimal_string(30));
            }
        }
    }
}

TEST_CASE("transcript json round trip") {
    Transcript t;
    t.problem_id = "D4/2/0/abc";
    t.model_id = "m";
    t.prompt_hash = "f00";
    t.raw_completion = "steps\nANSWER: 35";
    t.parsed_answer = "35";
    t.grade = Grade::correct;
    t.latency_ms = 12.5;
    t.attempt_count = 2;
    t.truncated = true;
    t.timestamp = "2026-01-01T00:00:00Z";
    Transcript back = transcript_from_json(transcript_to_json(t));
    CHECK(back.problem_id == t.problem_id);
    CHECK(back.parsed_answer == t.parsed_answer);
    CHECK(back.grade == t.grade);
    CHECK(back.attempt_count == 2);
    CHECK(back.truncated);

    Transcript failed;
    failed.problem_id = "x";
    failed.model_id = "m";
    failed.grade = Grade::request_failure;
    Transcript fb = transcript_from_json(transcript_to_json(failed));
    CHECK(!fb.parsed_answer.has_value());
    CHECK(fb.grade == Grade::request_failure);
}

TEST_CASE("run_generate writes interleaved D7 controls") {
    TempDir dir;
    GenerateRunConfig config;
    config.dimensions = {Dimension::d7};
    config.level = 5;
    config.count = 4;
    config.out_path = dir.file("problems.jsonl");
    auto summary = run_generate(config);
    CHECK(summary.problems_written == 4);
    CHECK(summary.controls_written == 4);

    auto problems = read_problems_file(config.out_path);
    REQUIRE(problems.size() == 8);
    for (std::size_t i = 0; i < problems.size(); i += 2) {
        CHECK(!problems[i].is_control);
        CHECK(problems[i + 1].is_control);
        CHECK(problems[i + 1].control_of == problems[i].id);
        CHECK(problems[i + 1].answer[0] == problems[i].answer[0]);
    }
}

TEST_CASE("run_generate all levels of one dimension") {
    TempDir dir;
    GenerateRunConfig config;
    config.dimensions = {Dimension::d2};
    config.count = 3;
    config.out_path = dir.file("d2.jsonl");
    run_generate(config);
    auto problems = read_problems_file(config.out_path);
    CHECK(problems.size() == 8 * 3);  // eight depths
}

TEST_CASE("mock end-to-end: generate, eval, analyze, profile") {
    TempDir dir;

    GenerateRunConfig gen;
    gen.dimensions = {Dimension::d2, Dimension::d4, Dimension::d5, Dimension::d7,
                      Dimension::d8};
    gen.count = 3;
    gen.out_path = dir.file("problems.jsonl");
    run_generate(gen);

    EvalRunConfig eval;
    eval.problems_path = gen.out_path;
    eval.endpoint.model_id = "mock-perfect";
    eval.endpoint.base_url = "mock://perfect";
    eval.out_path = dir.file("transcripts.jsonl");
    auto eval_summary = run_eval(eval);
    CHECK(eval_summary.by_grade.at("correct") == eval_summary.transcripts);

    AnalyzeRunConfig analyze;
    analyze.problems_path = gen.out_path;
    analyze.transcripts_path = eval.out_path;
    analyze.out_dir = dir.file("out");
    auto analysis = run_analyze(analyze);
    CHECK(analysis.curves.size() == 5);
    for (const auto& c : analysis.curves)
        for (const auto& pt : c.points) CHECK(pt.accuracy == 1.0);
    CHECK(fs::exists(analysis.results_csv_path));
    CHECK(fs::exists(analysis.results_jsonl_path));
    CHECK(analysis.heatmap_paths.size() == 5);

    // Round trip through the written csv.
    auto curves_back = import_curves_csv(slurp(analysis.results_csv_path));
    CHECK(curves_back.size() == 5);

    ProfileRunConfig profile;
    profile.problems_path = gen.out_path;
    profile.transcripts_path = eval.out_path;
    profile.out_path = dir.file("profile.json");
    auto profiles = run_profile(profile);
    REQUIRE(profiles.size() == 1);
    for (const auto& [dim, th] : profiles[0].thresholds) CHECK(!th.has_value());
    CHECK(fs::exists(profile.out_path));
}

TEST_CASE("profile with a missing shortlist dimension errors") {
    TempDir dir;
    GenerateRunConfig gen;
    gen.dimensions = {Dimension::d2, Dimension::d4, Dimension::d5, Dimension::d8};
    gen.count = 2;
    gen.out_path = dir.file("p.jsonl");
    run_generate(gen);

    EvalRunConfig eval;
    eval.problems_path = gen.out_path;
    eval.endpoint.model_id = "mock-perfect";
    eval.endpoint.base_url = "mock://perfect";
    eval.out_path = dir.file("t.jsonl");
    run_eval(eval);

    ProfileRunConfig profile;
    profile.problems_path = gen.out_path;
    profile.transcripts_path = eval.out_path;
    CHECK_THROWS_AS(run_profile(profile), MissingDimensionError);
}

TEST_CASE("append-only transcripts: analysis uses the newest record") {
    TempDir dir;
    GenerateRunConfig gen;
    gen.dimensions = {Dimension::d4};
    gen.level = 2;
    gen.count = 3;
    gen.out_path = dir.file("p.jsonl");
    run_generate(gen);

    // First a floor run, then a perfect rerun appended to the same file.
    EvalRunConfig eval;
    eval.problems_path = gen.out_path;
    eval.endpoint.model_id = "same-model";
    eval.endpoint.base_url = "mock://floor";
    eval.out_path = dir.file("t.jsonl");
    eval.cache_path = dir.file("floor.cache");
    run_eval(eval);
    eval.endpoint.base_url = "mock://perfect";
    eval.cache_path = dir.file("perfect.cache");
    run_eval(eval);

    auto lines = read_transcripts_file(eval.out_path);
    CHECK(lines.size() == 6);  // both runs persisted

    AnalyzeRunConfig analyze;
    analyze.problems_path = gen.out_path;
    analyze.transcripts_path = eval.out_path;
    analyze.out_dir = dir.file("out");
    auto analysis = run_analyze(analyze);
    REQUIRE(analysis.curves.size() == 1);
    CHECK(analysis.curves[0].points[0].accuracy == 1.0);  // newest run wins
}

TEST_CASE("d3 validation pipeline with report file") {
    TempDir dir;
    ValidateD3RunConfig config;
    config.endpoint.model_id = "mock-sigma";
    config.endpoint.base_url = "mock://sigma-fail-ge-17";
    config.problems_per_operator = 3;
    config.out_path = dir.file("rho.json");
    D3Validation v = run_validate_d3(config);
    CHECK(v.per_operator.size() == 13);
    CHECK(v.rho > 0.8);
    auto j = nlohmann::json::parse(slurp(config.out_path));
    CHECK(j.at("spearman_rho").get<double>() == doctest::Approx(v.rho));
    CHECK(j.at("per_operator").size() == 13);
}

TEST_CASE("empty problems file evaluates to an empty transcripts file") {
    TempDir dir;
    std::string problems = dir.file("empty.jsonl");
    atomic_write_file(problems, "");
    EvalRunConfig eval;
    eval.problems_path = problems;
    eval.endpoint.model_id = "mock-perfect";
    eval.endpoint.base_url = "mock://perfect";
    eval.out_path = dir.file("t.jsonl");
    auto summary = run_eval(eval);
    CHECK(summary.transcripts == 0);
    CHECK(read_transcripts_file(eval.out_path).empty());
}

TEST_CASE("atomic write leaves no temp file behind") {
    TempDir dir;
    std::string path = dir.file("x.txt");
    atomic_write_file(path, "hello\n");
    CHECK(slurp(path) == "hello\n");
    CHECK(!fs::exists(path + ".tmp"));
    atomic_write_file(path, "replaced\n");
    CHECK(slurp(path) == "replaced\n");
}
