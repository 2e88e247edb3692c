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

#ifndef ALGEBENCH_GENERATORS_HPP
#define ALGEBENCH_GENERATORS_HPP

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebench/equations.hpp"
#include "algebench/expr.hpp"
#include "algebench/oracle.hpp"
#include "algebench/rng.hpp"
#include "algebench/schedule.hpp"

namespace algebench {

struct ExhaustedAttemptsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownLevelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One verified benchmark item.
struct Problem {
    std::string id;
    Dimension dimension = Dimension::d1;
    std::int64_t level = 0;
    std::optional<Expr> expr;                 // expression body, or
    std::optional<EquationProblem> equation;  // symbolic body (D6)
    std::string infix;
    std::vector<Value> answer;  // canonical order
    bool is_control = false;
    std::optional<std::string> control_of;
    std::uint64_t seed = 0;
    int index = 0;
    Metrics metrics;
};

struct GenerateOptions {
    VerifyOptions verify_options;
    int max_attempts = 100;  // per problem slot, then ExhaustedAttempts
};

namespace gen_detail {

// Single-digit operands draw from 2..9: zero and one degenerate products
// and chains, and the recipes hold every non-varied dimension at minimum.
inline std::int64_t digit(KeyedRng& rng) { return rng.uniform_int(2, 9); }

inline std::int64_t nonzero(KeyedRng& rng, std::int64_t lo, std::int64_t hi) {
    std::int64_t v = rng.uniform_int(lo, hi - 1);
    return v >= 0 ? v + 1 : v;  // skips zero, keeps the draw uniform
}

// D1: flat right-spine addition chain of n single-digit terms.
inline Expr make_d1(std::int64_t tokens, KeyedRng& rng) {
    std::int64_t n = (tokens + 1) / 2;
    std::vector<std::int64_t> terms(static_cast<std::size_t>(n));
    for (auto& t : terms) t = digit(rng);
    Expr e = Expr::leaf(terms.back());
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        e = Expr::binary(Op::add, Expr::leaf(terms[i]), std::move(e));
    return e;
}

// D2: right-spine tree alternating add/mul, add at the root, to exact depth.
inline Expr make_d2_spine(std::int64_t depth, std::int64_t at, KeyedRng& rng) {
    Op op = at % 2 == 1 ? Op::add : Op::mul;
    Expr left = Expr::leaf(digit(rng));
    Expr right = at == depth ? Expr::leaf(digit(rng)) : make_d2_spine(depth, at + 1, rng);
    return Expr::binary(op, std::move(left), std::move(right));
}

inline Expr make_d2(std::int64_t depth, KeyedRng& rng) {
    return make_d2_spine(depth, 1, rng);
}

// D3: one application of a single operator, operands inside its domain so
// the oracle answer is finite and not within grading distance of zero.
inline Expr make_d3_operator(Op op, KeyedRng& rng) {
    switch (op) {
        case Op::neg:
            return Expr::unary(Op::neg, Expr::leaf(digit(rng)));
        case Op::abs:
            return Expr::unary(Op::abs, Expr::unary(Op::neg, Expr::leaf(digit(rng))));
        case Op::add:
            return Expr::binary(Op::add, Expr::leaf(digit(rng)), Expr::leaf(digit(rng)));
        case Op::sub: {
            std::int64_t a = digit(rng);
            std::int64_t b = digit(rng);
            while (b == a) b = digit(rng);
            return Expr::binary(Op::sub, Expr::leaf(a), Expr::leaf(b));
        }
        case Op::mul:
            return Expr::binary(Op::mul, Expr::leaf(digit(rng)), Expr::leaf(digit(rng)));
        case Op::div: {
            std::int64_t divisor = digit(rng);
            std::int64_t quotient = digit(rng);
            return Expr::binary(Op::div, Expr::leaf(divisor * quotient),
                                Expr::leaf(divisor));
        }
        case Op::sqrt: {
            std::int64_t r = digit(rng);
            return Expr::unary(Op::sqrt, Expr::leaf(r * r));
        }
        case Op::exp:
            return Expr::unary(Op::exp, Expr::leaf(rng.uniform_int(0, 5)));
        case Op::ln:
            // ln(1) is exactly zero, which would be indistinguishable from a
            // degenerate answer under the grading tolerance; start at 2.
            return Expr::unary(Op::ln, Expr::leaf(digit(rng)));
        case Op::sin:
        case Op::cos:
        case Op::tan:
            return Expr::unary(op, Expr::leaf(digit(rng)));
        case Op::pow: {
            // The top rung is the hard variant: large exponents.
            std::int64_t base = digit(rng);
            std::int64_t e = rng.uniform_int(6, 9);
            return Expr::binary(Op::pow, Expr::leaf(base), Expr::leaf(e));
        }
    }
    throw std::logic_error("make_d3_operator: bad op");
}

inline Expr make_d3(std::int64_t sigma, KeyedRng& rng) {
    if (sigma == 17) {
        // sin and cos share the rung.
        Op op = rng.coin() ? Op::sin : Op::cos;
        return make_d3_operator(op, rng);
    }
    for (const auto& info : kOpTable)
        if (info.sigma == sigma) return make_d3_operator(info.op, rng);
    throw UnknownLevelError("D3: no operator with sigma " + std::to_string(sigma));
}

// D4: sum of K independent single-digit products.
inline Expr make_d4(std::int64_t k, KeyedRng& rng) {
    auto term = [&] {
        return Expr::binary(Op::mul, Expr::leaf(digit(rng)), Expr::leaf(digit(rng)));
    };
    std::vector<Expr> terms;
    terms.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) terms.push_back(term());
    Expr e = std::move(terms.back());
    for (std::size_t i = terms.size() - 1; i-- > 0;)
        e = Expr::binary(Op::add, std::move(terms[i]), std::move(e));
    return e;
}

// D5 branch: right-growing alternating mul/add chain with exactly m
// operators. The mul root keeps the branch a single top-level addend.
inline Expr make_d5_branch(std::int64_t m, bool mul_next, KeyedRng& rng) {
    if (m == 0) return Expr::leaf(digit(rng));
    Op op = mul_next ? Op::mul : Op::add;
    Expr left = Expr::leaf(digit(rng));
    return Expr::binary(op, std::move(left), make_d5_branch(m - 1, !mul_next, rng));
}

inline Expr make_d5(std::int64_t ops_per_branch, KeyedRng& rng) {
    Expr a = make_d5_branch(ops_per_branch, true, rng);
    Expr b = make_d5_branch(ops_per_branch, true, rng);
    return Expr::binary(Op::add, std::move(a), std::move(b));
}

// D6: construct each type from an integer solution, then expand, so the
// solver always finds exact roots. Solutions stay nonzero.
inline EquationProblem make_d6(std::int64_t type_level, KeyedRng& rng) {
    EquationProblem p;
    p.type = static_cast<EquationType>(type_level);
    switch (p.type) {
        case EquationType::linear: {
            std::int64_t a = digit(rng);
            std::int64_t r = nonzero(rng, -9, 9);
            std::int64_t b = nonzero(rng, -9, 9);
            p.coeffs = {a, b, a * r + b};
            p.target = "x";
            break;
        }
        case EquationType::system2: {
            std::int64_t x0 = nonzero(rng, -9, 9), y0 = nonzero(rng, -9, 9);
            while (true) {
                std::int64_t a1 = nonzero(rng, -9, 9), b1 = nonzero(rng, -9, 9);
                std::int64_t a2 = nonzero(rng, -9, 9), b2 = nonzero(rng, -9, 9);
                if (a1 * b2 - a2 * b1 == 0) continue;
                p.coeffs = {a1, b1, a1 * x0 + b1 * y0, a2, b2, a2 * x0 + b2 * y0};
                break;
            }
            p.target = "x, y";
            break;
        }
        case EquationType::quadratic: {
            std::int64_t r1 = nonzero(rng, -9, 9);
            std::int64_t r2 = nonzero(rng, -9, 9);
            while (r2 == r1) r2 = nonzero(rng, -9, 9);
            p.coeffs = {-(r1 + r2), r1 * r2};
            p.target = "roots ascending";
            break;
        }
        case EquationType::system3: {
            std::int64_t s[3];
            for (auto& v : s) v = nonzero(rng, -9, 9);
            while (true) {
                std::int64_t a[3][3];
                for (auto& row : a)
                    for (auto& v : row) v = nonzero(rng, -9, 9);
                std::int64_t det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
                if (det == 0) continue;
                p.coeffs.clear();
                for (int i = 0; i < 3; ++i) {
                    for (int j = 0; j < 3; ++j) p.coeffs.push_back(a[i][j]);
                    p.coeffs.push_back(a[i][0] * s[0] + a[i][1] * s[1] + a[i][2] * s[2]);
                }
                break;
            }
            p.target = "x, y, z";
            break;
        }
        case EquationType::cubic: {
            std::int64_t r1 = nonzero(rng, -9, 9);
            std::int64_t r2 = nonzero(rng, -9, 9);
            while (r2 == r1) r2 = nonzero(rng, -9, 9);
            std::int64_t r3 = nonzero(rng, -9, 9);
            while (r3 == r1 || r3 == r2) r3 = nonzero(rng, -9, 9);
            p.coeffs = {-(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -(r1 * r2 * r3)};
            p.target = "roots ascending";
            break;
        }
        case EquationType::quadratic_system: {
            std::int64_t x0 = nonzero(rng, -9, 9);
            std::int64_t y0 = nonzero(rng, -9, 9);
            while (x0 == -y0) y0 = nonzero(rng, -9, 9);  // keeps the two pairs distinct
            p.coeffs = {x0 - y0, x0 * y0};
            p.target = "x, y pairs lexicographic";
            break;
        }
        case EquationType::cancel_expand: {
            std::int64_t a = rng.uniform_int(3, 9);
            std::int64_t b = rng.uniform_int(1, a - 1);
            p.coeffs = {a, b};
            p.target = "value";
            break;
        }
        case EquationType::identity: {
            p.coeffs = {digit(rng), digit(rng)};
            p.target = "value";
            break;
        }
        default:
            throw UnknownLevelError("D6: bad type " + std::to_string(type_level));
    }
    return p;
}

// D7: one fixed digit repeated K times under addition.
inline Expr make_d7(std::int64_t k, KeyedRng& rng) {
    std::int64_t v = digit(rng);
    Expr e = Expr::leaf(v);
    for (std::int64_t i = 1; i < k; ++i)
        e = Expr::binary(Op::add, Expr::leaf(v), std::move(e));
    return e;
}

// D8: left-spine chain over {+,-,*}; every intermediate stays inside
// [-50000, 500000] and away from zero, enforced by resampling the step.
inline constexpr std::int64_t kD8Min = -50'000;
inline constexpr std::int64_t kD8Max = 500'000;

inline Expr make_d8(std::int64_t steps, KeyedRng& rng) {
    std::int64_t value = digit(rng);
    Expr e = Expr::leaf(value);
    for (std::int64_t s = 0; s < steps; ++s) {
        for (int tries = 0;; ++tries) {
            if (tries >= 100)
                throw OracleError("D8: no in-bounds step found");  // effectively unreachable
            int which = static_cast<int>(rng.uniform(3));
            std::int64_t operand = digit(rng);
            std::int64_t next;
            Op op;
            switch (which) {
                case 0: op = Op::add; next = value + operand; break;
                case 1: op = Op::sub; next = value - operand; break;
                default: op = Op::mul; next = value * operand; break;
            }
            if (next == 0 || next < kD8Min || next > kD8Max) continue;
            value = next;
            e = Expr::binary(op, std::move(e), Expr::leaf(operand));
            break;
        }
    }
    return e;
}

// D9: one product of two operands with exactly `digits` digits.
inline Expr make_d9(std::int64_t digits, KeyedRng& rng) {
    std::int64_t lo = 1;
    for (std::int64_t i = 1; i < digits; ++i) lo *= 10;
    std::int64_t hi = lo * 10 - 1;
    if (digits == 1) lo = 2;
    std::int64_t a = rng.uniform_int(lo, hi);
    std::int64_t b = rng.uniform_int(lo, hi);
    return Expr::binary(Op::mul, Expr::leaf(a), Expr::leaf(b));
}

struct Candidate {
    std::optional<Expr> expr;
    std::optional<EquationProblem> equation;
};

inline Candidate make_candidate(Dimension dim, std::int64_t level, KeyedRng& rng) {
    Candidate c;
    switch (dim) {
        case Dimension::d1: c.expr = make_d1(level, rng); break;
        case Dimension::d2: c.expr = make_d2(level, rng); break;
        case Dimension::d3: c.expr = make_d3(level, rng); break;
        case Dimension::d4: c.expr = make_d4(level, rng); break;
        case Dimension::d5: c.expr = make_d5(level, rng); break;
        case Dimension::d6: c.equation = make_d6(level, rng); break;
        case Dimension::d7: c.expr = make_d7(level, rng); break;
        case Dimension::d8: c.expr = make_d8(level, rng); break;
        case Dimension::d9: c.expr = make_d9(level, rng); break;
    }
    return c;
}

inline std::string slot_id(Dimension dim, std::int64_t level, int index,
                           std::uint64_t seed) {
    KeyedRng h{seed, static_cast<std::uint64_t>(dim),
               static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(index)};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%08llx",
                  static_cast<unsigned long long>(h.next_u64() & 0xFFFFFFFFull));
    return dimension_name(dim) + "/" + std::to_string(level) + "/" +
           std::to_string(index) + "/" + buf;
}

/// Answers at or below the grading tolerance around zero are rejected so
/// that a degenerate always-zero responder can never score a point.
inline bool answer_magnitude_ok(const std::vector<Value>& answer) {
    const Rational floor(BigInt(1), BigInt(20));  // 0.05
    for (const auto& v : answer)
        if (!(v.as_rational().abs() > floor)) return false;
    return true;
}

}  // namespace gen_detail

/// Generates `count` verified problems, deterministic in every argument.
/// Candidates that fail verification are discarded and regenerated, at most
/// GenerateOptions::max_attempts times per slot.
inline std::vector<Problem> generate(Dimension dim, std::int64_t level, int count,
                                     std::uint64_t seed,
                                     const GenerateOptions& options = {}) {
    if (!level_in_schedule(dim, level))
        throw UnknownLevelError("level " + std::to_string(level) + " not in " +
                                dimension_name(dim) + " schedule");
    std::vector<Problem> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int slot = 0; slot < count; ++slot) {
        bool done = false;
        for (int attempt = 0; attempt < options.max_attempts && !done; ++attempt) {
            KeyedRng rng{seed, static_cast<std::uint64_t>(dim),
                         static_cast<std::uint64_t>(level),
                         static_cast<std::uint64_t>(slot),
                         static_cast<std::uint64_t>(attempt)};
            gen_detail::Candidate cand;
            try {
                cand = gen_detail::make_candidate(dim, level, rng);
            } catch (const OracleError&) {
                continue;
            }
            VerificationOutcome vr = cand.expr
                                         ? verify(*cand.expr, options.verify_options)
                                         : verify(*cand.equation, options.verify_options);
            if (vr.status != VerifyStatus::verified) continue;
            if (!gen_detail::answer_magnitude_ok(vr.answer)) continue;

            Problem p;
            p.id = gen_detail::slot_id(dim, level, slot, seed);
            p.dimension = dim;
            p.level = level;
            p.expr = cand.expr;
            p.equation = cand.equation;
            p.infix = cand.expr ? render_infix(*cand.expr) : render_equation(*cand.equation);
            p.answer = std::move(vr.answer);
            p.seed = seed;
            p.index = slot;
            if (cand.expr) {
                p.metrics = compute_metrics(*cand.expr);
            } else if (cand.equation->type == EquationType::cancel_expand ||
                       cand.equation->type == EquationType::identity) {
                p.metrics = compute_metrics(equation_expr(*cand.equation));
            }
            out.push_back(std::move(p));
            done = true;
        }
        if (!done)
            throw ExhaustedAttemptsError(dimension_name(dim) + " level " +
                                         std::to_string(level) + " slot " +
                                         std::to_string(slot) + ": no verifiable candidate in " +
                                         std::to_string(options.max_attempts) + " attempts");
    }
    return out;
}

/// D3 problems for one forced operator (the shared sin/cos rung splits here);
/// used by the sigma-rank validation run.
inline std::vector<Problem> generate_d3_for_operator(Op op, int count, std::uint64_t seed,
                                                     const GenerateOptions& options = {}) {
    const int sigma = op_info(op).sigma;
    std::vector<Problem> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int slot = 0; slot < count; ++slot) {
        bool done = false;
        for (int attempt = 0; attempt < options.max_attempts && !done; ++attempt) {
            KeyedRng rng{seed, static_cast<std::uint64_t>(Dimension::d3),
                         static_cast<std::uint64_t>(sigma),
                         0xD3ull + static_cast<std::uint64_t>(op),
                         static_cast<std::uint64_t>(slot),
                         static_cast<std::uint64_t>(attempt)};
            Expr e = gen_detail::make_d3_operator(op, rng);
            VerificationOutcome vr = verify(e, options.verify_options);
            if (vr.status != VerifyStatus::verified) continue;
            if (!gen_detail::answer_magnitude_ok(vr.answer)) continue;
            Problem p;
            p.id = gen_detail::slot_id(Dimension::d3, sigma, slot, seed) + "-" +
                   op_info(op).name;
            p.dimension = Dimension::d3;
            p.level = sigma;
            p.expr = e;
            p.infix = render_infix(e);
            p.answer = std::move(vr.answer);
            p.seed = seed;
            p.index = slot;
            p.metrics = compute_metrics(e);
            out.push_back(std::move(p));
            done = true;
        }
        if (!done)
            throw ExhaustedAttemptsError(std::string("D3 operator ") + op_info(op).name +
                                         " slot " + std::to_string(slot));
    }
    return out;
}

/// The D7 control: the same product K*v written as one multiplication, so
/// the arithmetic is identical but no enumeration is required.
inline Problem control_for(const Problem& primary, const GenerateOptions& options = {}) {
    if (primary.dimension != Dimension::d7 || primary.is_control)
        throw std::invalid_argument("control_for: needs a D7 primary problem");
    // The repeated operand is any leaf of the primary chain.
    const Expr* leafp = &*primary.expr;
    while (!leafp->is_leaf()) leafp = &leafp->children()[0];
    BigInt v = leafp->value();

    Expr e = Expr::binary(Op::mul, Expr::leaf(BigInt(primary.level)), Expr::leaf(v));
    VerificationOutcome vr = verify(e, options.verify_options);
    if (vr.status != VerifyStatus::verified)
        throw std::logic_error("control_for: control failed verification");

    Problem c;
    c.id = primary.id + "/ctrl";
    c.dimension = Dimension::d7;
    c.level = primary.level;
    c.expr = e;
    c.infix = render_infix(e);
    c.answer = std::move(vr.answer);
    c.is_control = true;
    c.control_of = primary.id;
    c.seed = primary.seed;
    c.index = primary.index;
    c.metrics = compute_metrics(e);
    return c;
}

}  // namespace algebench

#endif  // ALGEBENCH_GENERATORS_HPP
