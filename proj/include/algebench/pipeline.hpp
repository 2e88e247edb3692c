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

#ifndef ALGEBENCH_PIPELINE_HPP
#define ALGEBENCH_PIPELINE_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebench/analysis.hpp"
#include "algebench/generators.hpp"
#include "algebench/harness.hpp"
#include "algebench/io.hpp"
#include "algebench/schedule.hpp"

namespace algebench {

// Batch-level orchestration behind the CLI subcommands. Everything here is
// plain file-in/file-out so runs are reproducible and scriptable.

struct GenerateRunConfig {
    std::vector<Dimension> dimensions;      // empty selects all nine
    std::optional<std::int64_t> level;      // nullopt selects the full ladder
    int count = 50;
    std::uint64_t seed = 42;
    double oracle_timeout_seconds = 12.0;
    std::int64_t digit_cap = 1'000'000;
    std::string out_path;
};

struct GenerateRunSummary {
    std::size_t problems_written = 0;
    std::size_t controls_written = 0;
};

inline GenerateRunSummary run_generate(const GenerateRunConfig& config) {
    std::vector<Dimension> dims = config.dimensions;
    if (dims.empty()) dims.assign(std::begin(kAllDimensions), std::end(kAllDimensions));
    std::sort(dims.begin(), dims.end());

    GenerateOptions gen_options;
    gen_options.verify_options.timeout_seconds = config.oracle_timeout_seconds;
    gen_options.verify_options.digit_cap = config.digit_cap;

    GenerateRunSummary summary;
    std::vector<Problem> all;
    for (Dimension dim : dims) {
        std::vector<std::int64_t> levels;
        if (config.level) {
            if (!level_in_schedule(dim, *config.level))
                throw UnknownLevelError("level " + std::to_string(*config.level) +
                                        " not in " + dimension_name(dim) + " schedule");
            levels.push_back(*config.level);
        } else {
            levels = schedule(dim).levels;
        }
        for (std::int64_t level : levels) {
            std::vector<Problem> batch =
                generate(dim, level, config.count, config.seed, gen_options);
            for (auto& p : batch) {
                if (dim == Dimension::d7) {
                    Problem control = control_for(p, gen_options);
                    all.push_back(std::move(p));
                    all.push_back(std::move(control));
                    ++summary.problems_written;
                    ++summary.controls_written;
                } else {
                    all.push_back(std::move(p));
                    ++summary.problems_written;
                }
            }
        }
    }
    write_problems_file(config.out_path, all);
    return summary;
}

struct EvalRunConfig {
    std::string problems_path;
    ModelEndpoint endpoint;
    std::string out_path;
    std::string cache_path;  // empty derives "<out_path>.cache"
};

struct EvalRunSummary {
    std::size_t transcripts = 0;
    std::map<std::string, std::size_t> by_grade;
};

inline EvalRunSummary run_eval(const EvalRunConfig& config) {
    std::vector<Problem> problems = read_problems_file(config.problems_path);
    SuiteOptions options;
    options.cache_path =
        config.cache_path.empty() ? config.out_path + ".cache" : config.cache_path;
    std::vector<Transcript> transcripts = run_suite(config.endpoint, problems, options);
    append_transcripts_file(config.out_path, transcripts);

    EvalRunSummary summary;
    summary.transcripts = transcripts.size();
    for (const auto& t : transcripts) ++summary.by_grade[grade_name(t.grade)];
    return summary;
}

namespace pipeline_detail {

/// Transcript files are append-only, so a rerun leaves older records in
/// place; the newest record per (model, problem) wins.
inline std::vector<Transcript> latest_per_problem(const std::vector<Transcript>& all) {
    std::unordered_map<std::string, std::size_t> last;
    for (std::size_t i = 0; i < all.size(); ++i)
        last[all[i].model_id + "\x1f" + all[i].problem_id] = i;
    std::vector<std::size_t> keep;
    keep.reserve(last.size());
    for (const auto& [_, i] : last) keep.push_back(i);
    std::sort(keep.begin(), keep.end());
    std::vector<Transcript> out;
    out.reserve(keep.size());
    for (std::size_t i : keep) out.push_back(all[i]);
    return out;
}

struct GroupedRun {
    // (model_id, dimension) -> matched transcripts and primary problems
    std::map<std::pair<std::string, int>, std::pair<std::vector<Transcript>,
                                                    std::vector<Problem>>>
        groups;
};

inline GroupedRun group_for_curves(const std::vector<Problem>& problems,
                                   const std::vector<Transcript>& transcripts_raw) {
    std::unordered_map<std::string, const Problem*> by_id;
    for (const auto& p : problems) by_id[p.id] = &p;

    GroupedRun out;
    for (const auto& t : latest_per_problem(transcripts_raw)) {
        auto it = by_id.find(t.problem_id);
        if (it == by_id.end()) continue;  // transcript for a problem not in this file
        const Problem& p = *it->second;
        if (p.is_control) continue;  // control pairs are audited separately
        auto& group = out.groups[{t.model_id, static_cast<int>(p.dimension)}];
        group.first.push_back(t);
        group.second.push_back(p);
    }
    return out;
}

}  // namespace pipeline_detail

struct AnalyzeRunConfig {
    std::string problems_path;
    std::string transcripts_path;
    std::string out_dir = ".";
};

struct AnalyzeRunSummary {
    std::vector<AccuracyCurve> curves;
    std::string results_csv_path;
    std::string results_jsonl_path;
    std::vector<std::string> heatmap_paths;
};

inline AnalyzeRunSummary run_analyze(const AnalyzeRunConfig& config) {
    std::vector<Problem> problems = read_problems_file(config.problems_path);
    std::vector<Transcript> transcripts = read_transcripts_file(config.transcripts_path);
    auto grouped = pipeline_detail::group_for_curves(problems, transcripts);

    AnalyzeRunSummary summary;
    for (auto& [key, group] : grouped.groups)
        summary.curves.push_back(accuracy_curve(group.first, group.second));
    std::sort(summary.curves.begin(), summary.curves.end(),
              [](const AccuracyCurve& a, const AccuracyCurve& b) {
                  if (a.model_id != b.model_id) return a.model_id < b.model_id;
                  return a.dimension < b.dimension;
              });

    std::filesystem::create_directories(config.out_dir);
    summary.results_csv_path =
        (std::filesystem::path(config.out_dir) / "results.csv").string();
    atomic_write_file(summary.results_csv_path, export_curves_csv(summary.curves));
    summary.results_jsonl_path =
        (std::filesystem::path(config.out_dir) / "results.jsonl").string();
    atomic_write_file(summary.results_jsonl_path, export_curves_jsonl(summary.curves));

    std::set<Dimension> dims;
    for (const auto& c : summary.curves) dims.insert(c.dimension);
    for (Dimension d : dims) {
        std::vector<AccuracyCurve> same_dim;
        for (const auto& c : summary.curves)
            if (c.dimension == d) same_dim.push_back(c);
        std::string path =
            (std::filesystem::path(config.out_dir) / ("heatmap_" + dimension_name(d) + ".csv"))
                .string();
        atomic_write_file(path, export_heatmap_csv(same_dim));
        summary.heatmap_paths.push_back(path);
    }
    return summary;
}

struct ProfileRunConfig {
    std::string problems_path;
    std::string transcripts_path;
    double floor = 0.5;
    std::string out_path;  // optional JSON report
};

inline nlohmann::json profile_to_json(const ModelProfile& profile, double floor) {
    nlohmann::json j;
    j["model_id"] = profile.model_id;
    j["floor"] = floor;
    nlohmann::json dims;
    for (const auto& [dim, curve] : profile.curves) {
        nlohmann::json c;
        auto th = profile.thresholds.at(dim);
        if (th)
            c["failure_threshold"] = *th;
        else
            c["failure_threshold"] = nullptr;
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& pt : curve.points)
            pts.push_back({{"level", pt.level},
                           {"n_total", pt.n_total},
                           {"n_correct", pt.n_correct},
                           {"accuracy", pt.accuracy}});
        c["points"] = pts;
        dims[dimension_name(dim)] = c;
    }
    j["dimensions"] = dims;
    return j;
}

/// Builds one five-dimension profile per model found in the transcripts.
inline std::vector<ModelProfile> run_profile(const ProfileRunConfig& config) {
    std::vector<Problem> problems = read_problems_file(config.problems_path);
    std::vector<Transcript> transcripts = read_transcripts_file(config.transcripts_path);
    auto grouped = pipeline_detail::group_for_curves(problems, transcripts);

    std::map<std::string, std::vector<AccuracyCurve>> per_model;
    for (auto& [key, group] : grouped.groups) {
        Dimension dim = static_cast<Dimension>(key.second);
        bool shortlisted = false;
        for (Dimension d : kProfileDimensions) shortlisted |= d == dim;
        if (!shortlisted) continue;  // profile consumes the shortlist only
        per_model[key.first].push_back(accuracy_curve(group.first, group.second));
    }
    if (per_model.empty())
        throw MissingDimensionError("profile: no shortlist-dimension transcripts found");

    std::vector<ModelProfile> profiles;
    for (auto& [model, curves] : per_model)
        profiles.push_back(diagnostic_profile(curves, config.floor));

    if (!config.out_path.empty()) {
        if (profiles.size() == 1) {
            atomic_write_file(config.out_path,
                              profile_to_json(profiles[0], config.floor).dump(2) + "\n");
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& p : profiles) arr.push_back(profile_to_json(p, config.floor));
            atomic_write_file(config.out_path, arr.dump(2) + "\n");
        }
    }
    return profiles;
}

struct ValidateD3RunConfig {
    ModelEndpoint endpoint;
    int problems_per_operator = 20;
    std::uint64_t seed = 42;
    double oracle_timeout_seconds = 12.0;
    std::string cache_path;
    std::string out_path;  // optional JSON report
};

inline nlohmann::json d3_validation_to_json(const D3Validation& v,
                                            const std::string& model_id) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& po : v.per_operator)
        ops.push_back({{"operator", op_info(po.op).name},
                       {"sigma", po.sigma},
                       {"n_total", po.n_total},
                       {"n_correct", po.n_correct},
                       {"accuracy", po.accuracy}});
    return nlohmann::json{{"model_id", model_id},
                          {"per_operator", ops},
                          {"spearman_rho", v.rho}};
}

inline D3Validation run_validate_d3(const ValidateD3RunConfig& config) {
    GenerateOptions gen_options;
    gen_options.verify_options.timeout_seconds = config.oracle_timeout_seconds;
    SuiteOptions suite_options;
    suite_options.cache_path = config.cache_path;
    auto runner = [&](const std::vector<Problem>& problems) {
        return run_suite(config.endpoint, problems, suite_options);
    };
    D3Validation v =
        validate_d3(runner, config.problems_per_operator, config.seed, gen_options);
    if (!config.out_path.empty())
        atomic_write_file(config.out_path,
                          d3_validation_to_json(v, config.endpoint.model_id).dump(2) + "\n");
    return v;
}

}  // namespace algebench

#endif  // ALGEBENCH_PIPELINE_HPP
