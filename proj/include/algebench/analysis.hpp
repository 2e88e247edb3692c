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

#ifndef ALGEBENCH_ANALYSIS_HPP
#define ALGEBENCH_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "algebench/generators.hpp"
#include "algebench/harness.hpp"
#include "algebench/schedule.hpp"

namespace algebench {

struct MixedDimensionsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingDimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurvePoint {
    std::int64_t level = 0;
    std::int64_t n_total = 0;
    std::int64_t n_correct = 0;
    std::int64_t n_parse_failure = 0;
    std::int64_t n_request_failure = 0;
    double accuracy = 0.0;

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        return a.level == b.level && a.n_total == b.n_total &&
               a.n_correct == b.n_correct && a.n_parse_failure == b.n_parse_failure &&
               a.n_request_failure == b.n_request_failure;
    }
};

struct AccuracyCurve {
    Dimension dimension = Dimension::d1;
    std::string model_id;
    std::vector<CurvePoint> points;  // schedule order

    friend bool operator==(const AccuracyCurve& a, const AccuracyCurve& b) {
        return a.dimension == b.dimension && a.model_id == b.model_id &&
               a.points == b.points;
    }
};

/// Per-level accuracy over one dimension and one model. Every problem must
/// have exactly one transcript; parse and request failures count as
/// incorrect in n_total and are tallied separately.
inline AccuracyCurve accuracy_curve(const std::vector<Transcript>& transcripts,
                                    const std::vector<Problem>& problems) {
    if (problems.empty()) throw std::invalid_argument("accuracy_curve: no problems");
    Dimension dim = problems.front().dimension;
    std::unordered_map<std::string, const Problem*> by_id;
    for (const auto& p : problems) {
        if (p.dimension != dim)
            throw MixedDimensionsError("accuracy_curve: problems span dimensions");
        if (!by_id.emplace(p.id, &p).second)
            throw std::invalid_argument("accuracy_curve: duplicate problem id " + p.id);
    }
    if (transcripts.empty())
        throw std::invalid_argument("accuracy_curve: no transcripts");
    if (transcripts.size() != problems.size())
        throw std::invalid_argument("accuracy_curve: transcript/problem count mismatch");

    const std::string& model = transcripts.front().model_id;
    std::map<std::int64_t, CurvePoint> by_level;
    std::unordered_map<std::string, int> seen;
    for (const auto& t : transcripts) {
        if (t.model_id != model)
            throw MixedDimensionsError("accuracy_curve: transcripts span models");
        auto it = by_id.find(t.problem_id);
        if (it == by_id.end())
            throw std::invalid_argument("accuracy_curve: transcript for unknown problem " +
                                        t.problem_id);
        if (++seen[t.problem_id] > 1)
            throw std::invalid_argument("accuracy_curve: duplicate transcript for " +
                                        t.problem_id);
        CurvePoint& pt = by_level[it->second->level];
        pt.level = it->second->level;
        ++pt.n_total;
        switch (t.grade) {
            case Grade::correct: ++pt.n_correct; break;
            case Grade::parse_failure: ++pt.n_parse_failure; break;
            case Grade::request_failure: ++pt.n_request_failure; break;
            case Grade::incorrect: break;
        }
    }

    AccuracyCurve curve;
    curve.dimension = dim;
    curve.model_id = model;
    for (std::int64_t level : schedule(dim).levels) {
        auto it = by_level.find(level);
        if (it == by_level.end()) continue;
        it->second.accuracy = static_cast<double>(it->second.n_correct) /
                              static_cast<double>(it->second.n_total);
        curve.points.push_back(it->second);
        by_level.erase(it);
    }
    // Levels outside the registry schedule still get points, after the
    // scheduled ones, in ascending order.
    for (auto& [_, pt] : by_level) {
        pt.accuracy = static_cast<double>(pt.n_correct) / static_cast<double>(pt.n_total);
        curve.points.push_back(pt);
    }
    return curve;
}

/// First level whose accuracy drops below `floor` and stays below it for
/// every later level; isolated dips with later recovery do not count.
inline std::optional<std::int64_t> failure_threshold(const AccuracyCurve& curve,
                                                     double floor = 0.5) {
    if (curve.points.empty())
        throw std::invalid_argument("failure_threshold: empty curve");
    std::optional<std::int64_t> candidate;
    for (const auto& pt : curve.points) {
        if (pt.accuracy < floor) {
            if (!candidate) candidate = pt.level;
        } else {
            candidate.reset();
        }
    }
    return candidate;
}

// ---------------------------------------------------------------------------
// Spearman rank correlation

namespace analysis_detail {

/// Ranks 1..n with ties sharing their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace analysis_detail

/// Standard Spearman rho with average-rank tie handling. Throws
/// DegenerateInputError when either side is constant.
inline double spearman_rho(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("spearman_rho: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("spearman_rho: need at least 2 points");
    auto constant = [](const std::vector<double>& v) {
        for (double x : v)
            if (x != v.front()) return false;
        return true;
    };
    if (constant(a) || constant(b))
        throw DegenerateInputError("spearman_rho: constant input vector");

    std::vector<double> ra = analysis_detail::average_ranks(a);
    std::vector<double> rb = analysis_detail::average_ranks(b);
    const double n = static_cast<double>(a.size());
    double mean = (n + 1.0) / 2.0;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = ra[i] - mean;
        double db = rb[i] - mean;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    return cov / std::sqrt(va * vb);
}

// ---------------------------------------------------------------------------
// D3 sigma-rank validation

struct D3Validation {
    struct PerOperator {
        Op op;
        int sigma = 0;
        std::int64_t n_total = 0;
        std::int64_t n_correct = 0;
        double accuracy = 0.0;
    };
    std::vector<PerOperator> per_operator;  // one entry per operator, 13 total
    double rho = 0.0;
};

/// Runs the evaluator over every operator with all structural dimensions at
/// minimum and correlates sigma against failure rate (1 - accuracy), so a
/// ranking that predicts hardness comes out positive. The sin/cos sigma tie
/// is handled through average ranks.
inline D3Validation validate_d3(
    const std::function<std::vector<Transcript>(const std::vector<Problem>&)>& run,
    int problems_per_operator, std::uint64_t seed,
    const GenerateOptions& options = {}) {
    if (problems_per_operator < 1)
        throw std::invalid_argument("validate_d3: need at least one problem per operator");
    D3Validation out;
    std::vector<double> sigmas, failure;
    for (const auto& info : kOpTable) {
        std::vector<Problem> problems =
            generate_d3_for_operator(info.op, problems_per_operator, seed, options);
        std::vector<Transcript> ts = run(problems);
        D3Validation::PerOperator po;
        po.op = info.op;
        po.sigma = info.sigma;
        po.n_total = static_cast<std::int64_t>(ts.size());
        for (const auto& t : ts)
            if (t.grade == Grade::correct) ++po.n_correct;
        po.accuracy = static_cast<double>(po.n_correct) / static_cast<double>(po.n_total);
        out.per_operator.push_back(po);
        sigmas.push_back(static_cast<double>(po.sigma));
        failure.push_back(1.0 - po.accuracy);
    }
    out.rho = spearman_rho(sigmas, failure);
    return out;
}

// ---------------------------------------------------------------------------
// Diagnostic profile

inline constexpr Dimension kProfileDimensions[] = {
    Dimension::d2, Dimension::d4, Dimension::d5, Dimension::d7, Dimension::d8,
};

struct ModelProfile {
    std::string model_id;
    std::map<Dimension, AccuracyCurve> curves;
    std::map<Dimension, std::optional<std::int64_t>> thresholds;
};

/// Assembles the five-dimension diagnostic summary; exactly D2, D4, D5, D7
/// and D8 must be present, nothing else.
inline ModelProfile diagnostic_profile(const std::vector<AccuracyCurve>& curves,
                                       double floor = 0.5) {
    ModelProfile profile;
    for (const auto& c : curves) {
        bool shortlisted = false;
        for (Dimension d : kProfileDimensions) shortlisted |= d == c.dimension;
        if (!shortlisted)
            throw std::invalid_argument("diagnostic_profile: unexpected dimension " +
                                        dimension_name(c.dimension));
        if (profile.curves.count(c.dimension))
            throw std::invalid_argument("diagnostic_profile: duplicate dimension " +
                                        dimension_name(c.dimension));
        if (profile.curves.empty())
            profile.model_id = c.model_id;
        else if (profile.model_id != c.model_id)
            throw std::invalid_argument("diagnostic_profile: curves span models");
        profile.curves.emplace(c.dimension, c);
        profile.thresholds.emplace(c.dimension, failure_threshold(c, floor));
    }
    for (Dimension d : kProfileDimensions)
        if (!profile.curves.count(d))
            throw MissingDimensionError("diagnostic_profile: missing " + dimension_name(d));
    return profile;
}

// ---------------------------------------------------------------------------
// Export / import

namespace analysis_detail {

inline std::string format_accuracy(double a) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", a);
    return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        out.push_back(line.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace analysis_detail

inline constexpr const char* kResultsCsvHeader =
    "model_id,dimension,level,n_total,n_correct,accuracy,n_parse_failure,"
    "n_request_failure";

inline std::string export_curves_csv(const std::vector<AccuracyCurve>& curves) {
    std::string out = std::string(kResultsCsvHeader) + "\n";
    for (const auto& c : curves) {
        for (const auto& pt : c.points) {
            out += c.model_id + "," + dimension_name(c.dimension) + "," +
                   std::to_string(pt.level) + "," + std::to_string(pt.n_total) + "," +
                   std::to_string(pt.n_correct) + "," +
                   analysis_detail::format_accuracy(pt.accuracy) + "," +
                   std::to_string(pt.n_parse_failure) + "," +
                   std::to_string(pt.n_request_failure) + "\n";
        }
    }
    return out;
}

inline std::string export_curves_jsonl(const std::vector<AccuracyCurve>& curves) {
    std::string out;
    for (const auto& c : curves) {
        for (const auto& pt : c.points) {
            nlohmann::json j{{"model_id", c.model_id},
                             {"dimension", dimension_name(c.dimension)},
                             {"level", pt.level},
                             {"n_total", pt.n_total},
                             {"n_correct", pt.n_correct},
                             {"accuracy", pt.accuracy},
                             {"n_parse_failure", pt.n_parse_failure},
                             {"n_request_failure", pt.n_request_failure}};
            out += j.dump() + "\n";
        }
    }
    return out;
}

namespace analysis_detail {

inline std::vector<AccuracyCurve> assemble_curves(
    const std::vector<std::tuple<std::string, Dimension, CurvePoint>>& rows) {
    std::map<std::pair<std::string, int>, AccuracyCurve> grouped;
    for (const auto& [model, dim, pt] : rows) {
        auto& c = grouped[{model, static_cast<int>(dim)}];
        c.model_id = model;
        c.dimension = dim;
        c.points.push_back(pt);
    }
    std::vector<AccuracyCurve> out;
    for (auto& [_, c] : grouped) {
        std::sort(c.points.begin(), c.points.end(),
                  [&c](const CurvePoint& a, const CurvePoint& b) {
                      const auto& levels = schedule(c.dimension).levels;
                      auto pos = [&levels](std::int64_t l) {
                          for (std::size_t i = 0; i < levels.size(); ++i)
                              if (levels[i] == l) return i;
                          return levels.size();
                      };
                      auto pa = pos(a.level), pb = pos(b.level);
                      if (pa != pb) return pa < pb;
                      return a.level < b.level;
                  });
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace analysis_detail

inline std::vector<AccuracyCurve> import_curves_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kResultsCsvHeader)
        throw std::invalid_argument("import_curves_csv: bad header");
    std::vector<std::tuple<std::string, Dimension, CurvePoint>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = analysis_detail::split_csv_line(line);
        if (f.size() != 8) throw std::invalid_argument("import_curves_csv: bad row");
        CurvePoint pt;
        pt.level = std::stoll(f[2]);
        pt.n_total = std::stoll(f[3]);
        pt.n_correct = std::stoll(f[4]);
        pt.n_parse_failure = std::stoll(f[6]);
        pt.n_request_failure = std::stoll(f[7]);
        pt.accuracy = static_cast<double>(pt.n_correct) / static_cast<double>(pt.n_total);
        rows.emplace_back(f[0], dimension_from_name(f[1]), pt);
    }
    return analysis_detail::assemble_curves(rows);
}

inline std::vector<AccuracyCurve> import_curves_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::tuple<std::string, Dimension, CurvePoint>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        CurvePoint pt;
        pt.level = j.at("level").get<std::int64_t>();
        pt.n_total = j.at("n_total").get<std::int64_t>();
        pt.n_correct = j.at("n_correct").get<std::int64_t>();
        pt.n_parse_failure = j.at("n_parse_failure").get<std::int64_t>();
        pt.n_request_failure = j.at("n_request_failure").get<std::int64_t>();
        pt.accuracy = static_cast<double>(pt.n_correct) / static_cast<double>(pt.n_total);
        rows.emplace_back(j.at("model_id").get<std::string>(),
                          dimension_from_name(j.at("dimension").get<std::string>()), pt);
    }
    return analysis_detail::assemble_curves(rows);
}

/// Heatmap matrix for one dimension: header row of levels, one row per
/// model, cells are accuracies (empty when a model lacks that level).
inline std::string export_heatmap_csv(const std::vector<AccuracyCurve>& curves) {
    if (curves.empty()) throw std::invalid_argument("export_heatmap_csv: no curves");
    Dimension dim = curves.front().dimension;
    for (const auto& c : curves)
        if (c.dimension != dim)
            throw MixedDimensionsError("export_heatmap_csv: curves span dimensions");

    std::vector<std::int64_t> levels;
    for (const auto& c : curves)
        for (const auto& pt : c.points)
            if (std::find(levels.begin(), levels.end(), pt.level) == levels.end())
                levels.push_back(pt.level);
    const auto& sched = schedule(dim).levels;
    std::sort(levels.begin(), levels.end(), [&sched](std::int64_t a, std::int64_t b) {
        auto pos = [&sched](std::int64_t l) {
            for (std::size_t i = 0; i < sched.size(); ++i)
                if (sched[i] == l) return i;
            return sched.size();
        };
        auto pa = pos(a), pb = pos(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });

    std::string out = "model_id";
    for (auto l : levels) out += "," + std::to_string(l);
    out += "\n";

    std::vector<const AccuracyCurve*> ordered;
    for (const auto& c : curves) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const AccuracyCurve* a, const AccuracyCurve* b) {
                  return a->model_id < b->model_id;
              });
    for (const AccuracyCurve* c : ordered) {
        out += c->model_id;
        for (auto l : levels) {
            out += ",";
            for (const auto& pt : c->points)
                if (pt.level == l) {
                    out += analysis_detail::format_accuracy(pt.accuracy);
                    break;
                }
        }
        out += "\n";
    }
    return out;
}

}  // namespace algebench

#endif  // ALGEBENCH_ANALYSIS_HPP
