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

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "algebench/generators.hpp"
#include "algebench/harness.hpp"
#include "test_support.hpp"

using namespace algebench;

namespace {

std::vector<Value> truth(long long v) { return {Value::exact(Rational(v))}; }

std::vector<Value> truth2(const char* a, const char* b) {
    return {Value::exact(Rational::from_string(a)), Value::exact(Rational::from_string(b))};
}

}  // namespace

TEST_CASE("build_prompt is the fixed system prompt plus the bare infix") {
    auto probs = generate(Dimension::d7, 5, 1, 42);
    PromptMessages m = build_prompt(probs[0]);
    CHECK(m.system == kSystemPrompt);
    CHECK(m.user == probs[0].infix);
    // Shape check: "v + v + v + v + v".
    std::string v = probs[0].expr->children()[0].value().to_string();
    CHECK(m.user == v + " + " + v + " + " + v + " + " + v + " + " + v);

    auto pow_probs = generate(Dimension::d3, 22, 1, 42);
    PromptMessages pm = build_prompt(pow_probs[0]);
    CHECK(pm.user.find('^') != std::string::npos);

    // Deterministic across calls.
    PromptMessages again = build_prompt(probs[0]);
    CHECK(again.system == m.system);
    CHECK(again.user == m.user);
    CHECK(prompt_hash(again) == prompt_hash(m));
}

TEST_CASE("extract_answer basics") {
    CHECK(extract_answer("steps...\nANSWER: 35") == "35");
    CHECK(extract_answer("ANSWER: 7\nrevision...\nANSWER: 128") == "128");
    CHECK(!extract_answer("The answer is 35.").has_value());
    CHECK(!extract_answer("").has_value());
    CHECK(!extract_answer("ANSWER:").has_value());
    CHECK(!extract_answer("ANSWER: not a number").has_value());
}

TEST_CASE("extract_answer formats") {
    CHECK(extract_answer("answer: 42") == "42");          // case-insensitive
    CHECK(extract_answer("  ANSWER: 42") == "42");        // leading whitespace
    CHECK(extract_answer("ANSWER: $1,234") == "1234");    // currency + thousands
    CHECK(extract_answer("ANSWER: 1,234,567.5") == "1234567.5");
    CHECK(extract_answer("ANSWER: 7/2") == "3.5");        // fraction to decimal
    CHECK(extract_answer("ANSWER: 1.25e2") == "125");     // scientific notation
    CHECK(extract_answer("ANSWER: -3.5") == "-3.5");
    CHECK(extract_answer("ANSWER: 2, 3") == "2,3");       // multi-value
    CHECK(extract_answer("ANSWER: 1, 234") == "1,234");   // spaced pair, not thousands
    CHECK(extract_answer("ANSWER: 35  ") == "35");
    CHECK(!extract_answer("ANSWER: 1,,2").has_value());
}

TEST_CASE("extract_answer is idempotent and total on fuzz") {
    KeyedRng rng{55, 1};
    for (int i = 0; i < 2000; ++i) {
        std::string junk;
        int len = static_cast<int>(rng.uniform(60));
        for (int k = 0; k < len; ++k)
            junk.push_back(static_cast<char>(rng.uniform(96) + 32));
        if (rng.coin()) junk += "\nANSWER: " + std::to_string(rng.uniform_int(-999, 999));
        auto first = extract_answer(junk);
        auto second = extract_answer(junk);
        CHECK(first == second);
        if (first) {
            auto re = extract_answer("ANSWER: " + *first);
            CHECK(re == first);
        }
    }
}

TEST_CASE("grading documented examples") {
    CHECK(grade_answer("1004", truth(1000)) == Grade::correct);    // relative 0.004
    CHECK(grade_answer("0.05", {Value::exact(Rational::from_string("0.01"))}) ==
          Grade::correct);                                          // absolute 0.04
    CHECK(grade_answer("101", truth(100)) == Grade::incorrect);     // both exceeded
    CHECK(grade_answer("35", truth(35)) == Grade::correct);         // exact
}

TEST_CASE("grading boundaries are inclusive") {
    // |diff| == 0.05 exactly.
    CHECK(grade_answer("1.05", truth(1)) == Grade::correct);
    CHECK(grade_answer("0.95", truth(1)) == Grade::correct);
    // relative == 0.005 exactly.
    CHECK(grade_answer("1005", truth(1000)) == Grade::correct);
    CHECK(grade_answer("995", truth(1000)) == Grade::correct);
    // Just past both bounds.
    CHECK(grade_answer("1005.0000001", truth(1000)) == Grade::incorrect);
    CHECK(grade_answer("1.0500001", truth(1)) == Grade::incorrect);
}

TEST_CASE("grading at truth zero uses the absolute branch only") {
    CHECK(grade_answer("0.05", truth(0)) == Grade::correct);
    CHECK(grade_answer("-0.05", truth(0)) == Grade::correct);
    CHECK(grade_answer("0.06", truth(0)) == Grade::incorrect);
}

TEST_CASE("multi-value grading matches counterparts in order") {
    CHECK(grade_answer("2,3", truth2("2", "3")) == Grade::correct);
    CHECK(grade_answer("3,2", truth2("2", "3")) == Grade::incorrect);
    CHECK(grade_answer("2", truth2("2", "3")) == Grade::incorrect);
    CHECK(grade_answer("2,3,4", truth2("2", "3")) == Grade::incorrect);
    CHECK(grade_answer("2.004,3.1", truth2("2", "3")) == Grade::incorrect);
    CHECK(grade_answer("2.004,3.004", truth2("2", "3")) == Grade::correct);
}

TEST_CASE("grading a high-precision real truth") {
    Value t = eval_exact(Expr::unary(Op::sin, Expr::leaf(2)));
    CHECK(grade_answer("0.9092974268", {t}) == Grade::correct);
    CHECK(grade_answer("0.909", {t}) == Grade::correct);  // within 0.05 absolute
    CHECK(grade_answer("0.8", {t}) == Grade::incorrect);
}

TEST_CASE("mock perfect and floor endpoints") {
    auto probs = generate(Dimension::d4, 2, 5, 42);
    ModelEndpoint perfect{"mock-perfect", "mock://perfect"};
    auto ts = run_suite(perfect, probs);
    REQUIRE(ts.size() == probs.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(ts[i].problem_id == probs[i].id);  // order preserved
        CHECK(ts[i].grade == Grade::correct);
        CHECK(ts[i].attempt_count == 1);
    }

    ModelEndpoint floor{"mock-floor", "mock://floor"};
    for (const auto& t : run_suite(floor, probs)) CHECK(t.grade == Grade::incorrect);

    CHECK(run_suite(perfect, {}).empty());
}

TEST_CASE("mock sigma-fail endpoint fails hard rungs only") {
    auto easy = generate(Dimension::d3, 5, 3, 42);
    auto hard = generate(Dimension::d3, 22, 3, 42);
    ModelEndpoint ep{"mock-sigma", "mock://sigma-fail-ge-17"};
    for (const auto& t : run_suite(ep, easy)) CHECK(t.grade == Grade::correct);
    for (const auto& t : run_suite(ep, hard)) CHECK(t.grade == Grade::incorrect);
}

TEST_CASE("missing credential aborts before any request") {
    ::unsetenv("ALGEBENCH_TEST_NO_KEY");
    ModelEndpoint ep{"real-model", "http://127.0.0.1:9"};
    ep.api_key_env = "ALGEBENCH_TEST_NO_KEY";
    auto probs = generate(Dimension::d9, 1, 1, 42);
    CHECK_THROWS_AS(run_suite(ep, probs), MissingCredentialError);
}

namespace {

/// Local chat-completions stand-in. Returns 429 for the first `fail_first`
/// requests per problem, then a canned completion.
class LocalServer {
public:
    explicit LocalServer(int fail_first = 0, std::string answer_line = "ANSWER: 35")
        : fail_first_(fail_first), answer_line_(std::move(answer_line)) {
        server_.Post("/v1/chat/completions",
                     [this](const httplib::Request& req, httplib::Response& res) {
                         ++hits_;
                         if (served_.fetch_add(1) < fail_first_) {
                             res.status = 429;
                             res.set_content("slow down", "text/plain");
                             return;
                         }
                         auto body = nlohmann::json::parse(req.body);
                         last_temperature_ = body.at("temperature").get<double>();
                         last_model_ = body.at("model").get<std::string>();
                         nlohmann::json reply{
                             {"choices",
                              {{{"message",
                                 {{"role", "assistant"}, {"content", answer_line_}}},
                                {"finish_reason", "stop"}}}}};
                         res.set_content(reply.dump(), "application/json");
                     });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~LocalServer() {
        server_.stop();
        thread_.join();
    }

    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
    int hits() const { return hits_; }
    double last_temperature() const { return last_temperature_; }
    std::string last_model() const { return last_model_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    int fail_first_ = 0;
    std::string answer_line_;
    std::atomic<int> served_{0};
    std::atomic<int> hits_{0};
    double last_temperature_ = -1;
    std::string last_model_;
};

ModelEndpoint local_endpoint(const LocalServer& server, const std::string& model) {
    ::setenv("ALGEBENCH_TEST_KEY", "k-local", 1);
    ModelEndpoint ep;
    ep.model_id = model;
    ep.base_url = server.base_url();
    ep.api_key_env = "ALGEBENCH_TEST_KEY";
    ep.max_concurrency = 2;
    ep.request_timeout_seconds = 10;
    ep.max_retries = 3;
    return ep;
}

}  // namespace

TEST_CASE("http path sends temperature zero and retries through 429s") {
    LocalServer server(/*fail_first=*/2);
    auto probs = generate(Dimension::d7, 5, 1, 42);  // answer is K*v, not 35
    probs[0].answer = {Value::exact(Rational(35))};  // align truth with the stub

    ModelEndpoint ep = local_endpoint(server, "test-model");
    ep.max_concurrency = 1;
    auto ts = run_suite(ep, probs);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].attempt_count == 3);  // two 429s then success
    CHECK(ts[0].grade == Grade::correct);
    CHECK(ts[0].raw_completion == "ANSWER: 35");
    CHECK(server.last_temperature() == 0.0);
    CHECK(server.last_model() == "test-model");
}

TEST_CASE("permanent request failure is recorded per transcript, suite continues") {
    ::setenv("ALGEBENCH_TEST_KEY", "k-local", 1);
    ModelEndpoint ep;
    ep.model_id = "unreachable";
    ep.base_url = "http://127.0.0.1:9";  // nothing listens here
    ep.api_key_env = "ALGEBENCH_TEST_KEY";
    ep.max_retries = 0;
    ep.request_timeout_seconds = 0.2;
    auto probs = generate(Dimension::d9, 1, 2, 42);
    auto ts = run_suite(ep, probs);
    REQUIRE(ts.size() == 2);
    for (const auto& t : ts) {
        CHECK(t.grade == Grade::request_failure);
        CHECK(!t.parsed_answer.has_value());
    }
}

TEST_CASE("cache makes re-runs free and regrades identically") {
    auto tmp = std::filesystem::temp_directory_path() / "algebench_cache_test.jsonl";
    std::filesystem::remove(tmp);

    auto probs = generate(Dimension::d4, 4, 6, 42);
    SuiteOptions opts;
    opts.cache_path = tmp.string();

    int first_hits = 0;
    {
        LocalServer server(0, "ANSWER: 0");  // wrong answers, but cacheable
        auto ts = run_suite(local_endpoint(server, "cached-model"), probs, opts);
        first_hits = server.hits();
        CHECK(first_hits == static_cast<int>(probs.size()));
        for (const auto& t : ts) CHECK(t.grade == Grade::incorrect);
    }
    {
        // Same model against a dead endpoint: everything must come from cache.
        ::setenv("ALGEBENCH_TEST_KEY", "k-local", 1);
        ModelEndpoint dead;
        dead.model_id = "cached-model";
        dead.base_url = "http://127.0.0.1:9";
        dead.api_key_env = "ALGEBENCH_TEST_KEY";
        dead.request_timeout_seconds = 0.2;
        dead.max_retries = 0;
        auto ts = run_suite(dead, probs, opts);
        for (const auto& t : ts) {
            CHECK(t.grade == Grade::incorrect);  // regraded identically
            CHECK(t.raw_completion == "ANSWER: 0");
        }
    }
    std::filesystem::remove(tmp);
}

TEST_CASE("order preservation under concurrency") {
    auto probs = generate(Dimension::d4, 8, 24, 42);
    ModelEndpoint perfect{"mock-perfect", "mock://perfect"};
    perfect.max_concurrency = 8;
    auto ts = run_suite(perfect, probs);
    REQUIRE(ts.size() == probs.size());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(ts[i].problem_id == probs[i].id);
}
