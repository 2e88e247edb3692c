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

#ifndef ALGEBENCH_IO_HPP
#define ALGEBENCH_IO_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "algebench/generators.hpp"
#include "algebench/harness.hpp"

namespace algebench {

// One JSON object per line in both files. Problems files are written
// atomically as a whole; transcripts files are append-only.

namespace io_detail {

inline std::string join_decimals(const std::vector<Value>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i > 0) out += ",";
        out += vs[i].decimal_string(30);
    }
    return out;
}

inline std::optional<std::string> join_exact(const std::vector<Value>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!vs[i].is_exact()) return std::nullopt;
        if (i > 0) out += ",";
        out += vs[i].exact_string();
    }
    return out;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        out.push_back(
            s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace io_detail

inline nlohmann::json problem_to_json(const Problem& p) {
    nlohmann::json j;
    j["id"] = p.id;
    j["dimension"] = dimension_name(p.dimension);
    j["level"] = p.level;
    j["index"] = p.index;
    j["seed"] = p.seed;
    j["prefix_tokens"] = p.expr ? render_prefix(*p.expr) : std::vector<std::string>{};
    j["infix"] = p.infix;
    j["answer_decimal"] = io_detail::join_decimals(p.answer);
    auto exact = io_detail::join_exact(p.answer);
    if (exact)
        j["answer_exact"] = *exact;
    else
        j["answer_exact"] = nullptr;
    j["is_control"] = p.is_control;
    if (p.control_of)
        j["control_of"] = *p.control_of;
    else
        j["control_of"] = nullptr;
    j["metrics"] = {{"token_count", p.metrics.token_count},
                    {"depth", p.metrics.depth},
                    {"max_sigma", p.metrics.max_sigma},
                    {"parallel_branches", p.metrics.parallel_branches},
                    {"ops_per_branch", p.metrics.ops_per_branch},
                    {"chain_length", p.metrics.chain_length},
                    {"max_digits", p.metrics.max_digits},
                    {"repeated_operand_count", p.metrics.repeated_operand_count}};
    return j;
}

/// Loads the persisted view of a problem. Expression bodies come back from
/// their prefix tokens; symbolic equation bodies are not reconstructed,
/// which downstream evaluation and analysis never need.
inline Problem problem_from_json(const nlohmann::json& j) {
    Problem p;
    p.id = j.at("id").get<std::string>();
    p.dimension = dimension_from_name(j.at("dimension").get<std::string>());
    p.level = j.at("level").get<std::int64_t>();
    p.index = j.value("index", 0);
    p.seed = j.at("seed").get<std::uint64_t>();
    auto tokens = j.at("prefix_tokens").get<std::vector<std::string>>();
    if (!tokens.empty()) p.expr = parse_prefix(tokens);
    p.infix = j.at("infix").get<std::string>();

    if (!j.at("answer_exact").is_null()) {
        for (const auto& part :
             io_detail::split_list(j.at("answer_exact").get<std::string>()))
            p.answer.push_back(Value::exact(Rational::from_string(part)));
    } else {
        // High-precision reals persist as 30-digit decimals; grading compares
        // against the same stored decimal on every load, so this is stable.
        for (const auto& part :
             io_detail::split_list(j.at("answer_decimal").get<std::string>()))
            p.answer.push_back(
                Value::real(BigFloat::from_rational(Rational::from_string(part), 40)));
    }
    p.is_control = j.at("is_control").get<bool>();
    if (!j.at("control_of").is_null())
        p.control_of = j.at("control_of").get<std::string>();
    const auto& m = j.at("metrics");
    p.metrics.token_count = m.at("token_count").get<std::int64_t>();
    p.metrics.depth = m.at("depth").get<std::int64_t>();
    p.metrics.max_sigma = m.at("max_sigma").get<std::int64_t>();
    p.metrics.parallel_branches = m.at("parallel_branches").get<std::int64_t>();
    p.metrics.ops_per_branch = m.at("ops_per_branch").get<std::int64_t>();
    p.metrics.chain_length = m.at("chain_length").get<std::int64_t>();
    p.metrics.max_digits = m.at("max_digits").get<std::int64_t>();
    p.metrics.repeated_operand_count = m.at("repeated_operand_count").get<std::int64_t>();
    return p;
}

inline nlohmann::json transcript_to_json(const Transcript& t) {
    nlohmann::json j;
    j["problem_id"] = t.problem_id;
    j["model_id"] = t.model_id;
    j["prompt_hash"] = t.prompt_hash;
    j["raw_completion"] = t.raw_completion;
    if (t.parsed_answer)
        j["parsed_answer"] = *t.parsed_answer;
    else
        j["parsed_answer"] = nullptr;
    j["grade"] = grade_name(t.grade);
    j["latency_ms"] = t.latency_ms;
    j["attempt_count"] = t.attempt_count;
    j["truncated"] = t.truncated;
    j["timestamp"] = t.timestamp;
    return j;
}

inline Transcript transcript_from_json(const nlohmann::json& j) {
    Transcript t;
    t.problem_id = j.at("problem_id").get<std::string>();
    t.model_id = j.at("model_id").get<std::string>();
    t.prompt_hash = j.at("prompt_hash").get<std::string>();
    t.raw_completion = j.at("raw_completion").get<std::string>();
    if (!j.at("parsed_answer").is_null())
        t.parsed_answer = j.at("parsed_answer").get<std::string>();
    t.grade = grade_from_name(j.at("grade").get<std::string>());
    t.latency_ms = j.value("latency_ms", 0.0);
    t.attempt_count = j.value("attempt_count", 0);
    t.truncated = j.value("truncated", false);
    t.timestamp = j.value("timestamp", "");
    return t;
}

/// Writes whole-file content via a temp file and rename, so readers never
/// observe a half-written file.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

inline void write_problems_file(const std::string& path,
                                const std::vector<Problem>& problems) {
    std::string content;
    for (const auto& p : problems) content += problem_to_json(p).dump() + "\n";
    atomic_write_file(path, content);
}

inline std::vector<Problem> read_problems_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read problems file " + path);
    std::vector<Problem> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(problem_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

inline void append_transcripts_file(const std::string& path,
                                    const std::vector<Transcript>& transcripts) {
    std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + path);
    for (const auto& t : transcripts) out << transcript_to_json(t).dump() << "\n";
}

inline std::vector<Transcript> read_transcripts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read transcripts file " + path);
    std::vector<Transcript> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(transcript_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace algebench

#endif  // ALGEBENCH_IO_HPP
