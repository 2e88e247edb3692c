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

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "algebench/pipeline.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 generation exhaustion, 3 missing credential.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitMissingCredential = 3;

std::vector<algebench::Dimension> parse_dimensions(const std::string& arg) {
    using algebench::Dimension;
    std::vector<Dimension> dims;
    if (arg == "all") {
        dims.assign(std::begin(algebench::kAllDimensions),
                    std::end(algebench::kAllDimensions));
        return dims;
    }
    std::size_t pos = 0;
    while (pos <= arg.size()) {
        std::size_t comma = arg.find(',', pos);
        std::string part =
            arg.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        dims.push_back(algebench::dimension_from_name(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return dims;
}

struct EndpointFlags {
    std::string model = "mock-perfect";
    std::string base_url = "mock://perfect";
    std::string api_key_env = "ALGEBENCH_API_KEY";
    int concurrency = 4;
    double timeout = 120.0;
    int retries = 3;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model, "Model identifier sent on the wire");
        cmd->add_option("--base-url", base_url,
                        "Chat-completions base URL, or mock://perfect, mock://floor, "
                        "mock://sigma-fail-ge-N");
        cmd->add_option("--api-key-env", api_key_env,
                        "Environment variable holding the API credential");
        cmd->add_option("--concurrency", concurrency, "Max in-flight requests");
        cmd->add_option("--timeout", timeout, "Per-request timeout in seconds");
        cmd->add_option("--retries", retries, "Max retries per request");
    }

    algebench::ModelEndpoint endpoint() const {
        algebench::ModelEndpoint ep;
        ep.model_id = model;
        ep.base_url = base_url;
        ep.api_key_env = api_key_env;
        ep.max_concurrency = concurrency;
        ep.request_timeout_seconds = timeout;
        ep.max_retries = retries;
        return ep;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebench: dimension-isolated algebra benchmark pipeline"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate and verify problems");
    std::string gen_dimension = "all";
    std::string gen_level = "all";
    int gen_count = 50;
    std::uint64_t gen_seed = 42;
    double gen_timeout = 12.0;
    std::int64_t gen_digit_cap = 1'000'000;
    std::string gen_out = "problems.jsonl";
    gen->add_option("--dimension", gen_dimension, "D1..D9, comma list, or all");
    gen->add_option("--level", gen_level, "Schedule level value, or all");
    gen->add_option("--count", gen_count, "Problems per level")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Master seed");
    gen->add_option("--timeout", gen_timeout, "Oracle timeout per problem, seconds");
    gen->add_option("--digit-cap", gen_digit_cap, "Oracle digit cap per intermediate");
    gen->add_option("--out", gen_out, "Output problems file (JSONL)");

    // eval
    auto* eval = app.add_subcommand("eval", "Query a model over a problems file");
    std::string eval_problems;
    std::string eval_out = "transcripts.jsonl";
    std::string eval_cache;
    EndpointFlags eval_ep;
    eval->add_option("--problems", eval_problems, "Problems file")->required();
    eval->add_option("--out", eval_out, "Transcripts file (JSONL, appended)");
    eval->add_option("--cache", eval_cache, "Completion cache file (default <out>.cache)");
    eval_ep.attach(eval);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Accuracy curves and heatmaps");
    std::string an_problems, an_transcripts, an_out = ".";
    analyze->add_option("--problems", an_problems, "Problems file")->required();
    analyze->add_option("--transcripts", an_transcripts, "Transcripts file")->required();
    analyze->add_option("--out", an_out, "Output directory");

    // profile
    auto* profile = app.add_subcommand("profile", "Five-dimension diagnostic profile");
    std::string pr_problems, pr_transcripts, pr_out;
    double pr_floor = 0.5;
    profile->add_option("--problems", pr_problems, "Problems file")->required();
    profile->add_option("--transcripts", pr_transcripts, "Transcripts file")->required();
    profile->add_option("--floor", pr_floor, "Failure threshold accuracy floor");
    profile->add_option("--out", pr_out, "JSON report path");

    // validate-d3
    auto* vd3 = app.add_subcommand("validate-d3",
                                   "Operator hardness rank validation (Spearman)");
    int vd3_per_rung = 20;
    std::uint64_t vd3_seed = 42;
    std::string vd3_out, vd3_cache;
    EndpointFlags vd3_ep;
    vd3->add_option("--per-rung", vd3_per_rung, "Problems per operator (e.g. 20 or 100)")
        ->check(CLI::PositiveNumber);
    vd3->add_option("--seed", vd3_seed, "Master seed");
    vd3->add_option("--out", vd3_out, "JSON report path");
    vd3->add_option("--cache", vd3_cache, "Completion cache file");
    vd3_ep.attach(vd3);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            algebench::GenerateRunConfig config;
            config.dimensions = parse_dimensions(gen_dimension);
            if (gen_level != "all") config.level = std::stoll(gen_level);
            config.count = gen_count;
            config.seed = gen_seed;
            config.oracle_timeout_seconds = gen_timeout;
            config.digit_cap = gen_digit_cap;
            config.out_path = gen_out;
            auto summary = algebench::run_generate(config);
            std::printf("wrote %zu problems (%zu controls) to %s\n",
                        summary.problems_written + summary.controls_written,
                        summary.controls_written, gen_out.c_str());
            return kExitOk;
        }
        if (eval->parsed()) {
            algebench::EvalRunConfig config;
            config.problems_path = eval_problems;
            config.endpoint = eval_ep.endpoint();
            config.out_path = eval_out;
            config.cache_path = eval_cache;
            auto summary = algebench::run_eval(config);
            std::printf("wrote %zu transcripts to %s\n", summary.transcripts,
                        eval_out.c_str());
            for (const auto& [grade, n] : summary.by_grade)
                std::printf("  %s: %zu\n", grade.c_str(), n);
            if (summary.by_grade.count("request_failure"))
                std::fprintf(stderr, "warning: %zu request failure(s) recorded\n",
                             summary.by_grade.at("request_failure"));
            return kExitOk;
        }
        if (analyze->parsed()) {
            algebench::AnalyzeRunConfig config;
            config.problems_path = an_problems;
            config.transcripts_path = an_transcripts;
            config.out_dir = an_out;
            auto summary = algebench::run_analyze(config);
            std::printf("wrote %s\n", summary.results_csv_path.c_str());
            std::printf("wrote %s\n", summary.results_jsonl_path.c_str());
            for (const auto& h : summary.heatmap_paths) std::printf("wrote %s\n", h.c_str());
            return kExitOk;
        }
        if (profile->parsed()) {
            algebench::ProfileRunConfig config;
            config.problems_path = pr_problems;
            config.transcripts_path = pr_transcripts;
            config.floor = pr_floor;
            config.out_path = pr_out;
            auto profiles = algebench::run_profile(config);
            for (const auto& p : profiles) {
                std::printf("model %s\n", p.model_id.c_str());
                for (const auto& [dim, curve] : p.curves) {
                    auto th = p.thresholds.at(dim);
                    std::printf("  %s threshold %s  |", algebench::dimension_name(dim).c_str(),
                                th ? std::to_string(*th).c_str() : "none");
                    for (const auto& pt : curve.points)
                        std::printf(" %lld:%.2f", static_cast<long long>(pt.level),
                                    pt.accuracy);
                    std::printf("\n");
                }
            }
            return kExitOk;
        }
        if (vd3->parsed()) {
            algebench::ValidateD3RunConfig config;
            config.endpoint = vd3_ep.endpoint();
            config.problems_per_operator = vd3_per_rung;
            config.seed = vd3_seed;
            config.cache_path = vd3_cache;
            config.out_path = vd3_out;
            try {
                auto v = algebench::run_validate_d3(config);
                std::printf("operator  sigma  accuracy\n");
                for (const auto& po : v.per_operator)
                    std::printf("%-8s  %5d  %.4f\n", algebench::op_info(po.op).name,
                                po.sigma, po.accuracy);
                std::printf("spearman rho (sigma vs failure rate): %.4f\n", v.rho);
            } catch (const algebench::DegenerateInputError&) {
                std::printf("spearman rho undefined: accuracies are constant across "
                            "operators\n");
            }
            return kExitOk;
        }
    } catch (const algebench::ExhaustedAttemptsError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitExhausted;
    } catch (const algebench::MissingCredentialError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitMissingCredential;
    } catch (const algebench::UnknownLevelError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
