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

#ifndef ALGEBENCH_HARNESS_HPP
#define ALGEBENCH_HARNESS_HPP

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "algebench/generators.hpp"
#include "algebench/oracle.hpp"
#include "algebench/rational.hpp"
#include "algebench/rng.hpp"

namespace algebench {

struct MissingCredentialError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Where and how to reach a model. Temperature is not a field: the protocol
/// pins it to zero for deterministic outputs.
struct ModelEndpoint {
    std::string model_id;
    std::string base_url;  // "https://host/v1" or the built-in "mock://..." forms
    std::string api_key_env = "ALGEBENCH_API_KEY";
    int max_concurrency = 4;
    double request_timeout_seconds = 120.0;
    int max_retries = 3;
    int max_completion_tokens = 8192;
};

enum class Grade { correct, incorrect, parse_failure, request_failure };

inline std::string grade_name(Grade g) {
    switch (g) {
        case Grade::correct: return "correct";
        case Grade::incorrect: return "incorrect";
        case Grade::parse_failure: return "parse_failure";
        case Grade::request_failure: return "request_failure";
    }
    return "?";
}

inline Grade grade_from_name(std::string_view s) {
    if (s == "correct") return Grade::correct;
    if (s == "incorrect") return Grade::incorrect;
    if (s == "parse_failure") return Grade::parse_failure;
    if (s == "request_failure") return Grade::request_failure;
    throw std::invalid_argument("unknown grade \"" + std::string(s) + "\"");
}

/// One model-problem interaction.
struct Transcript {
    std::string problem_id;
    std::string model_id;
    std::string system_message;
    std::string user_message;
    std::string prompt_hash;
    std::string raw_completion;
    std::optional<std::string> parsed_answer;
    Grade grade = Grade::request_failure;
    double latency_ms = 0.0;
    int attempt_count = 0;
    bool truncated = false;
    std::string timestamp;
};

/// Inclusive tolerances: a reply is correct when it is within 0.05 absolute
/// or 0.5% relative of the truth.
struct GradeRule {
    Rational relative_tol{BigInt(1), BigInt(200)};
    Rational absolute_tol{BigInt(1), BigInt(20)};
};

// ---------------------------------------------------------------------------
// Prompting

inline constexpr const char* kSystemPrompt =
    "Solve the following math problem step by step. Show your reasoning. End your "
    "response with a single line of the form ANSWER: <value> containing only the final "
    "numeric answer. If there are multiple values, separate them with commas in "
    "ascending order.";

struct PromptMessages {
    std::string system;
    std::string user;
};

inline PromptMessages build_prompt(const Problem& p) {
    return PromptMessages{kSystemPrompt, p.infix};
}

inline std::string prompt_hash(const PromptMessages& m) {
    std::uint64_t h = 0xcbf2'9ce4'8422'2325ull;
    auto fold = [&h](std::string_view s) {
        for (unsigned char c : s) h = (h ^ c) * 0x100'0000'01b3ull;
        h = KeyedRng::mix64(h);
    };
    fold(m.system);
    fold(m.user);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Answer extraction

namespace harness_detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline bool starts_with_answer(std::string_view line, std::size_t& value_at) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    static constexpr std::string_view kTag = "answer:";
    for (std::size_t k = 0; k < kTag.size(); ++k, ++i) {
        if (i >= line.size()) return false;
        if (std::tolower(static_cast<unsigned char>(line[i])) != kTag[k]) return false;
    }
    value_at = i;
    return true;
}

/// "1,234,567.8" style thousands grouping, optionally signed.
inline bool looks_thousands_grouped(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t lead = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++lead;
        ++i;
    }
    if (lead < 1 || lead > 3) return false;
    bool any_group = false;
    while (i < s.size() && s[i] == ',') {
        ++i;
        for (int k = 0; k < 3; ++k, ++i)
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        any_group = true;
    }
    if (!any_group) return false;
    if (i < s.size() && s[i] == '.') {
        ++i;
        if (i >= s.size()) return false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    }
    return i == s.size();
}

inline std::string strip_currency_and_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (c != '$' && c != ' ' && c != '\t') out.push_back(c);
    return out;
}

}  // namespace harness_detail

/// Scans for the last "ANSWER:" line and normalizes its value to canonical
/// decimal form (fractions and scientific notation converted; currency,
/// spacing, and thousands separators stripped; multi-value answers joined
/// with ","). Returns nullopt when no line parses. Never throws.
inline std::optional<std::string> extract_answer(std::string_view completion) {
    std::optional<std::string> value_text;
    std::size_t start = 0;
    while (start <= completion.size()) {
        std::size_t nl = completion.find('\n', start);
        std::string_view line = completion.substr(
            start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        std::size_t at = 0;
        if (harness_detail::starts_with_answer(line, at))
            value_text = harness_detail::trim(line.substr(at));
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    if (!value_text || value_text->empty()) return std::nullopt;

    // Thousands grouping is detected before inner spaces are stripped:
    // "1,234" groups, "1, 234" is a two-value list.
    std::string no_currency;
    for (char c : *value_text)
        if (c != '$') no_currency.push_back(c);
    std::string trimmed = harness_detail::trim(no_currency);

    std::vector<std::string> parts;
    if (harness_detail::looks_thousands_grouped(trimmed)) {
        std::string collapsed;
        for (char c : trimmed)
            if (c != ',') collapsed.push_back(c);
        parts.push_back(collapsed);
    } else {
        std::size_t pos = 0;
        while (pos <= trimmed.size()) {
            std::size_t comma = trimmed.find(',', pos);
            parts.push_back(harness_detail::strip_currency_and_spaces(trimmed.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].empty()) return std::nullopt;
        try {
            Rational r = Rational::from_string(parts[i]);
            if (i > 0) out += ",";
            out += r.to_decimal_string(30);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grading

namespace harness_detail {

inline bool within_tolerance(const Rational& got, const Rational& truth,
                             const GradeRule& rule) {
    Rational diff = (got - truth).abs();
    if (diff <= rule.absolute_tol) return true;
    if (truth.is_zero()) return false;  // relative branch undefined at zero
    return diff <= rule.relative_tol * truth.abs();
}

}  // namespace harness_detail

/// Pure tolerance check; multi-value answers must match their counterparts
/// in canonical order, component count included.
inline Grade grade_answer(const std::string& parsed, const std::vector<Value>& truth,
                          const GradeRule& rule = {}) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= parsed.size()) {
        std::size_t comma = parsed.find(',', pos);
        parts.push_back(parsed.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (parts.size() != truth.size()) return Grade::incorrect;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Rational got = Rational::from_string(parts[i]);
        if (!harness_detail::within_tolerance(got, truth[i].as_rational(), rule))
            return Grade::incorrect;
    }
    return Grade::correct;
}

// ---------------------------------------------------------------------------
// Completion transport: mock endpoints and the chat-completions wire

namespace harness_detail {

struct FetchResult {
    bool ok = false;
    std::string completion;
    bool truncated = false;
    int attempts = 0;
};

inline bool is_mock(const ModelEndpoint& ep) {
    return ep.base_url.rfind("mock://", 0) == 0;
}

/// Built-in offline responders keyed by base_url:
///   mock://perfect          answers the stored truth
///   mock://floor            always answers 0
///   mock://sigma-fail-ge-N  answers truth below operator rank N, else 0
inline std::string mock_completion(const ModelEndpoint& ep, const Problem& p) {
    std::string kind = ep.base_url.substr(7);
    auto truth_line = [&p] {
        std::string ans;
        for (std::size_t i = 0; i < p.answer.size(); ++i) {
            if (i > 0) ans += ", ";
            ans += p.answer[i].decimal_string(30);
        }
        return "Solving step by step.\nANSWER: " + ans;
    };
    if (kind == "perfect") return truth_line();
    if (kind == "floor") return "ANSWER: 0";
    static constexpr std::string_view kSigmaPrefix = "sigma-fail-ge-";
    if (kind.rfind(kSigmaPrefix, 0) == 0) {
        long threshold = std::strtol(kind.substr(kSigmaPrefix.size()).c_str(), nullptr, 10);
        if (p.metrics.max_sigma >= threshold) return "ANSWER: 0";
        return truth_line();
    }
    throw std::invalid_argument("unknown mock endpoint \"" + ep.base_url + "\"");
}

struct ParsedUrl {
    std::string host_origin;  // scheme://host[:port]
    std::string path_prefix;  // possibly empty, no trailing slash
};

inline ParsedUrl split_base_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("base_url needs a scheme: " + base_url);
    auto path_start = base_url.find('/', scheme_end + 3);
    ParsedUrl u;
    if (path_start == std::string::npos) {
        u.host_origin = base_url;
    } else {
        u.host_origin = base_url.substr(0, path_start);
        u.path_prefix = base_url.substr(path_start);
        while (!u.path_prefix.empty() && u.path_prefix.back() == '/')
            u.path_prefix.pop_back();
    }
    return u;
}

inline FetchResult fetch_completion(const ModelEndpoint& ep, const PromptMessages& msgs,
                                    const std::string& api_key) {
    nlohmann::json body{
        {"model", ep.model_id},
        {"messages",
         {{{"role", "system"}, {"content", msgs.system}},
          {{"role", "user"}, {"content", msgs.user}}}},
        {"temperature", 0},
        {"max_tokens", ep.max_completion_tokens},
    };
    const std::string payload = body.dump();
    ParsedUrl url = split_base_url(ep.base_url);

    FetchResult result;
    for (int attempt = 0; attempt <= ep.max_retries; ++attempt) {
        result.attempts = attempt + 1;
        if (attempt > 0) {
            double delay = std::min(0.25 * static_cast<double>(1 << (attempt - 1)), 4.0);
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        }
        httplib::Client cli(url.host_origin);
        cli.set_connection_timeout(std::chrono::duration<double>(ep.request_timeout_seconds));
        cli.set_read_timeout(std::chrono::duration<double>(ep.request_timeout_seconds));
        httplib::Headers headers;
        if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
        auto res = cli.Post(url.path_prefix + "/chat/completions", headers, payload,
                            "application/json");
        if (!res) continue;  // transport error, retry
        if (res->status == 429 || res->status >= 500) continue;
        if (res->status != 200) break;  // other client errors are permanent
        try {
            nlohmann::json reply = nlohmann::json::parse(res->body);
            const auto& choice = reply.at("choices").at(0);
            result.completion = choice.at("message").at("content").get<std::string>();
            result.truncated = choice.value("finish_reason", "") == "length";
            result.ok = true;
            return result;
        } catch (const std::exception&) {
            continue;  // malformed body, retry within budget
        }
    }
    return result;
}

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

/// Completion cache keyed by (model, problem, prompt). Backed by a JSONL
/// file when a path is given; loads once, appends as new entries land.
class CompletionCache {
public:
    explicit CompletionCache(std::string path) : path_(std::move(path)) {
        if (path_.empty()) return;
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                nlohmann::json j = nlohmann::json::parse(line);
                Entry e;
                e.completion = j.at("raw_completion").get<std::string>();
                e.attempts = j.value("attempt_count", 1);
                e.truncated = j.value("truncated", false);
                map_[key(j.at("model_id").get<std::string>(),
                         j.at("problem_id").get<std::string>(),
                         j.at("prompt_hash").get<std::string>())] = std::move(e);
            } catch (const std::exception&) {
                // Skip unreadable cache lines rather than fail the run.
            }
        }
    }

    struct Entry {
        std::string completion;
        int attempts = 0;
        bool truncated = false;
    };

    std::optional<Entry> lookup(const std::string& model, const std::string& problem,
                                const std::string& hash) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key(model, problem, hash));
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void store(const std::string& model, const std::string& problem,
               const std::string& hash, const Entry& e) {
        std::lock_guard<std::mutex> lock(mu_);
        map_[key(model, problem, hash)] = e;
        if (path_.empty()) return;
        nlohmann::json j{{"model_id", model},
                         {"problem_id", problem},
                         {"prompt_hash", hash},
                         {"raw_completion", e.completion},
                         {"attempt_count", e.attempts},
                         {"truncated", e.truncated}};
        std::ofstream out(path_, std::ios::app);
        out << j.dump() << "\n";
    }

private:
    static std::string key(const std::string& m, const std::string& p,
                           const std::string& h) {
        return m + "\x1f" + p + "\x1f" + h;
    }

    std::string path_;
    std::mutex mu_;
    std::unordered_map<std::string, Entry> map_;
};

}  // namespace harness_detail

struct SuiteOptions {
    std::string cache_path;  // empty disables the on-disk cache
    GradeRule grade_rule;
};

/// Queries the endpoint for every problem, grading each reply against the
/// stored truth. Transcript i always corresponds to problem i regardless of
/// completion order; request failures are recorded per transcript and never
/// abort the suite.
inline std::vector<Transcript> run_suite(const ModelEndpoint& endpoint,
                                         const std::vector<Problem>& problems,
                                         const SuiteOptions& options = {}) {
    const bool mock = harness_detail::is_mock(endpoint);
    std::string api_key;
    if (!mock) {
        const char* key = endpoint.api_key_env.empty()
                              ? nullptr
                              : std::getenv(endpoint.api_key_env.c_str());
        if (key == nullptr || *key == '\0')
            throw MissingCredentialError("environment variable " + endpoint.api_key_env +
                                         " is not set");
        api_key = key;
    }

    harness_detail::CompletionCache cache(options.cache_path);
    std::vector<Transcript> results(problems.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= problems.size()) return;
            const Problem& p = problems[i];
            PromptMessages msgs = build_prompt(p);

            Transcript t;
            t.problem_id = p.id;
            t.model_id = endpoint.model_id;
            t.system_message = msgs.system;
            t.user_message = msgs.user;
            t.prompt_hash = prompt_hash(msgs);
            t.timestamp = harness_detail::utc_timestamp();

            auto cached = cache.lookup(t.model_id, t.problem_id, t.prompt_hash);
            if (cached) {
                t.raw_completion = cached->completion;
                t.attempt_count = cached->attempts;
                t.truncated = cached->truncated;
            } else {
                auto t0 = std::chrono::steady_clock::now();
                harness_detail::FetchResult fr;
                if (mock) {
                    fr.ok = true;
                    fr.attempts = 1;
                    fr.completion = harness_detail::mock_completion(endpoint, p);
                } else {
                    fr = harness_detail::fetch_completion(endpoint, msgs, api_key);
                }
                t.latency_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
                t.attempt_count = fr.attempts;
                if (!fr.ok) {
                    t.grade = Grade::request_failure;
                    results[i] = std::move(t);
                    continue;
                }
                t.raw_completion = fr.completion;
                t.truncated = fr.truncated;
                cache.store(t.model_id, t.problem_id, t.prompt_hash,
                            {fr.completion, fr.attempts, fr.truncated});
            }

            t.parsed_answer = extract_answer(t.raw_completion);
            if (!t.parsed_answer) {
                t.grade = Grade::parse_failure;
            } else {
                t.grade = grade_answer(*t.parsed_answer, p.answer, options.grade_rule);
            }
            results[i] = std::move(t);
        }
    };

    int threads = std::max(1, std::min<int>(endpoint.max_concurrency,
                                            static_cast<int>(problems.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

}  // namespace algebench

#endif  // ALGEBENCH_HARNESS_HPP
