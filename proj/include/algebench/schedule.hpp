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

#ifndef ALGEBENCH_SCHEDULE_HPP
#define ALGEBENCH_SCHEDULE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace algebench {

/// The nine isolated complexity dimensions.
///
/// D1 syntactic length, D2 tree depth, D3 operator hardness, D4 working
/// memory (parallel branches), D5 ops per branch, D6 solution ambiguity,
/// D7 counting load, D8 sequential chain length, D9 numeric magnitude.
enum class Dimension { d1 = 1, d2, d3, d4, d5, d6, d7, d8, d9 };

inline constexpr Dimension kAllDimensions[] = {
    Dimension::d1, Dimension::d2, Dimension::d3, Dimension::d4, Dimension::d5,
    Dimension::d6, Dimension::d7, Dimension::d8, Dimension::d9,
};

inline std::string dimension_name(Dimension d) {
    return "D" + std::to_string(static_cast<int>(d));
}

inline Dimension dimension_from_name(std::string_view s) {
    if (s.size() == 2 && (s[0] == 'D' || s[0] == 'd') && s[1] >= '1' && s[1] <= '9')
        return static_cast<Dimension>(s[1] - '0');
    throw std::invalid_argument("unknown dimension \"" + std::string(s) + "\"");
}

/// Ordered ladder of difficulty parameter values for one dimension.
///
/// The level value is the dimension's natural parameter: prefix token count
/// for D1, nesting depth for D2, operator sigma for D3, branch count K for
/// D4, operations per branch for D5, problem type 1..8 for D6, repeat count
/// K for D7, chain steps for D8, operand digit count for D9.
struct LevelSchedule {
    Dimension dimension;
    std::vector<std::int64_t> levels;
};

inline const LevelSchedule& schedule(Dimension d) {
    static const LevelSchedule kSchedules[] = {
        {Dimension::d1, {5, 11, 21, 51, 75, 101, 201, 501, 751}},
        {Dimension::d2, {1, 2, 3, 4, 5, 6, 7, 8}},
        {Dimension::d3, {2, 3, 5, 6, 8, 9, 11, 13, 15, 17, 19, 22}},
        {Dimension::d4, {2, 4, 8, 12, 20, 25, 30, 40, 50, 60, 75, 100, 150, 200}},
        {Dimension::d5, {0, 1, 2, 3, 5, 8, 12, 20, 30}},
        {Dimension::d6, {1, 2, 3, 4, 5, 6, 7, 8}},
        {Dimension::d7, {5, 7, 10, 12, 18, 25, 60, 100, 150, 200, 300}},
        {Dimension::d8, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}},
        {Dimension::d9, {1, 2, 4, 6, 8, 15}},
    };
    return kSchedules[static_cast<int>(d) - 1];
}

inline bool level_in_schedule(Dimension d, std::int64_t level) {
    for (auto l : schedule(d).levels)
        if (l == level) return true;
    return false;
}

/// Index of `level` in its dimension's ladder; throws for unknown levels.
inline std::size_t level_index(Dimension d, std::int64_t level) {
    const auto& ls = schedule(d).levels;
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == level) return i;
    throw std::invalid_argument("level " + std::to_string(level) + " not in " +
                                dimension_name(d) + " schedule");
}

}  // namespace algebench

#endif  // ALGEBENCH_SCHEDULE_HPP
