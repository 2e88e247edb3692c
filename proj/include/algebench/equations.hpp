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

#ifndef ALGEBENCH_EQUATIONS_HPP
#define ALGEBENCH_EQUATIONS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebench/expr.hpp"

namespace algebench {

/// The eight D6 problem types, ordered by the number of structurally
/// distinct solution strategies they admit.
enum class EquationType {
    linear = 1,        // a*x + b = c
    system2,           // 2x2 linear system
    quadratic,         // monic quadratic, factorable over the integers
    system3,           // 3x3 linear system
    cubic,             // monic cubic with three integer roots
    quadratic_system,  // x - y = d, x*y = p
    cancel_expand,     // (a^2 - b^2) / (a + b)
    identity,          // (a + b)^2 - a^2 - 2ab
};

inline std::string equation_type_name(EquationType t) {
    return "L" + std::to_string(static_cast<int>(t));
}

/// One symbolic problem instance. Coefficient layout by type:
///   linear            [a, b, c]                       a*x + b = c
///   system2           [a1,b1,c1, a2,b2,c2]            rows of (a x + b y = c)
///   quadratic         [b, c]                          x^2 + b x + c = 0
///   system3           [a1,b1,c1,d1, ...]              rows of (a x + b y + c z = d)
///   cubic             [c2, c1, c0]                    x^3 + c2 x^2 + c1 x + c0 = 0
///   quadratic_system  [d, p]                          x - y = d, x*y = p
///   cancel_expand     [a, b]
///   identity          [a, b]
struct EquationProblem {
    EquationType type;
    std::vector<std::int64_t> coeffs;
    std::string target;  // what the answer reports, e.g. "x" or "roots ascending"
};

namespace detail {

/// Renders c*sym as the leading or a continuing term of a polynomial string.
inline void append_term(std::string& out, std::int64_t c, const std::string& sym) {
    if (c == 0) return;
    if (out.empty()) {
        if (c == -1 && !sym.empty())
            out += "-";
        else if (!(c == 1 && !sym.empty()))
            out += std::to_string(c);
    } else {
        out += c < 0 ? " - " : " + ";
        std::int64_t m = c < 0 ? -c : c;
        if (!(m == 1 && !sym.empty())) out += std::to_string(m);
    }
    out += sym;
}

inline std::string linear_combo(const std::vector<std::int64_t>& cs,
                                const std::vector<std::string>& syms) {
    std::string out;
    for (std::size_t i = 0; i < cs.size(); ++i) append_term(out, cs[i], syms[i]);
    if (out.empty()) out = "0";
    return out;
}

}  // namespace detail

/// Expression form of the two numeric D6 types; the other six are symbolic
/// and have no Expr body.
inline Expr equation_expr(const EquationProblem& p) {
    auto lit = [](std::int64_t v) { return Expr::leaf(v); };
    switch (p.type) {
        case EquationType::cancel_expand: {
            std::int64_t a = p.coeffs[0], b = p.coeffs[1];
            return Expr::binary(
                Op::div,
                Expr::binary(Op::sub, Expr::binary(Op::pow, lit(a), lit(2)),
                             Expr::binary(Op::pow, lit(b), lit(2))),
                Expr::binary(Op::add, lit(a), lit(b)));
        }
        case EquationType::identity: {
            std::int64_t a = p.coeffs[0], b = p.coeffs[1];
            return Expr::binary(
                Op::sub,
                Expr::binary(Op::sub,
                             Expr::binary(Op::pow, Expr::binary(Op::add, lit(a), lit(b)),
                                          lit(2)),
                             Expr::binary(Op::pow, lit(a), lit(2))),
                Expr::binary(Op::mul, lit(2),
                             Expr::binary(Op::mul, lit(a), lit(b))));
        }
        default:
            throw std::logic_error("equation_expr: type has no expression body");
    }
}

inline std::string render_equation(const EquationProblem& p) {
    const auto& c = p.coeffs;
    switch (p.type) {
        case EquationType::linear:
            return detail::linear_combo({c[0], c[1]}, {"x", ""}) + " = " +
                   std::to_string(c[2]);
        case EquationType::system2:
            return detail::linear_combo({c[0], c[1]}, {"x", "y"}) + " = " +
                   std::to_string(c[2]) + ", " +
                   detail::linear_combo({c[3], c[4]}, {"x", "y"}) + " = " +
                   std::to_string(c[5]);
        case EquationType::quadratic:
            return detail::linear_combo({1, c[0], c[1]}, {"x^2", "x", ""}) + " = 0";
        case EquationType::system3: {
            std::string out;
            for (int row = 0; row < 3; ++row) {
                if (row > 0) out += ", ";
                out += detail::linear_combo({c[row * 4], c[row * 4 + 1], c[row * 4 + 2]},
                                            {"x", "y", "z"}) +
                       " = " + std::to_string(c[row * 4 + 3]);
            }
            return out;
        }
        case EquationType::cubic:
            return detail::linear_combo({1, c[0], c[1], c[2]}, {"x^3", "x^2", "x", ""}) +
                   " = 0";
        case EquationType::quadratic_system:
            return detail::linear_combo({1, -1}, {"x", "y"}) + " = " +
                   std::to_string(c[0]) + ", x*y = " + std::to_string(c[1]);
        case EquationType::cancel_expand:
        case EquationType::identity:
            return render_infix(equation_expr(p));
    }
    throw std::logic_error("render_equation: bad type");
}

}  // namespace algebench

#endif  // ALGEBENCH_EQUATIONS_HPP
