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

#ifndef ALGEBENCH_ORACLE_HPP
#define ALGEBENCH_ORACLE_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebench/bigfloat.hpp"
#include "algebench/bigint.hpp"
#include "algebench/equations.hpp"
#include "algebench/expr.hpp"
#include "algebench/rational.hpp"

namespace algebench {

// ---------------------------------------------------------------------------
// Errors

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZeroError : OracleError {
    using OracleError::OracleError;
};
struct DomainError : OracleError {
    using OracleError::OracleError;
};
struct OverflowError : OracleError {
    using OracleError::OracleError;
};
struct TimeoutError : OracleError {
    using OracleError::OracleError;
};
struct SingularSystemError : OracleError {
    using OracleError::OracleError;
};
struct NoRationalRootError : OracleError {
    using OracleError::OracleError;
};

// ---------------------------------------------------------------------------
// Value

/// A verified answer: either an exact rational or a high-precision real.
///
/// The real form stores a fixed-point approximation computed at
/// EvalOptions::precision significant digits plus guard digits; its relative
/// error bound is kRealRelativeErrorBound, which is orders of magnitude
/// inside the grading tolerance.
class Value {
public:
    static constexpr const char* kRealRelativeErrorBound = "1e-30";

    static Value exact(Rational r) {
        Value v;
        v.rational_ = std::move(r);
        v.is_exact_ = true;
        return v;
    }

    static Value real(BigFloat f) {
        Value v;
        v.real_ = std::move(f);
        v.is_exact_ = false;
        return v;
    }

    bool is_exact() const { return is_exact_; }

    const Rational& rational() const {
        if (!is_exact_) throw std::logic_error("Value: rational() on real value");
        return rational_;
    }

    const BigFloat& real_part() const {
        if (is_exact_) throw std::logic_error("Value: real_part() on exact value");
        return real_;
    }

    /// Exact rational reading of the stored representation (for the real
    /// form this is the stored approximation, not the true irrational).
    Rational as_rational() const { return is_exact_ ? rational_ : real_.to_rational(); }

    std::string decimal_string(int sig_digits = 30) const {
        return is_exact_ ? rational_.to_decimal_string(sig_digits)
                         : real_.to_decimal_string(sig_digits);
    }

    /// "p/q" for exact values, empty for reals.
    std::string exact_string() const {
        return is_exact_ ? rational_.to_fraction_string() : std::string();
    }

    friend bool operator==(const Value& a, const Value& b) {
        if (a.is_exact_ != b.is_exact_) return false;
        if (a.is_exact_) return a.rational_ == b.rational_;
        return a.real_.scale() == b.real_.scale() && a.real_.mant() == b.real_.mant();
    }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

private:
    Value() = default;
    Rational rational_;
    BigFloat real_{BigInt(0), 0};
    bool is_exact_ = true;
};

// ---------------------------------------------------------------------------
// Evaluation options

struct EvalOptions {
    int precision = 50;                  // significant digits on the real path
    std::int64_t digit_cap = 1'000'000;  // max decimal digits of any intermediate
    std::optional<std::chrono::steady_clock::time_point> deadline;

    void check_deadline() const {
        if (deadline && std::chrono::steady_clock::now() > *deadline)
            throw TimeoutError("evaluation deadline exceeded");
    }
};

namespace detail {

inline bool needs_real_path(Op op) {
    switch (op) {
        case Op::sqrt:
        case Op::exp:
        case Op::ln:
        case Op::sin:
        case Op::cos:
        case Op::tan:
            return true;
        default:
            return false;
    }
}

inline bool subtree_is_rational(const Expr& e) {
    if (e.is_leaf()) return true;
    if (needs_real_path(e.op())) return false;
    for (const auto& c : e.children())
        if (!subtree_is_rational(c)) return false;
    // pow stays rational only when its exponent does and resolves to an
    // integer; the integer check happens at evaluation time.
    return true;
}

inline void check_digits(const Rational& r, const EvalOptions& opts) {
    if (static_cast<std::int64_t>(r.num().digit_count()) > opts.digit_cap ||
        static_cast<std::int64_t>(r.den().digit_count()) > opts.digit_cap)
        throw OverflowError("rational exceeds digit cap");
}

inline void check_digits(const BigFloat& f, const EvalOptions& opts) {
    if (static_cast<std::int64_t>(f.int_digit_count()) > opts.digit_cap)
        throw OverflowError("value exceeds digit cap");
}

inline Rational eval_rational(const Expr& e, const EvalOptions& opts);

inline std::int64_t integer_exponent(const Expr& exponent, const EvalOptions& opts) {
    Rational r = eval_rational(exponent, opts);
    if (!r.is_integer())
        throw DomainError("pow: non-integer exponent on the rational path");
    if (!r.num().fits_int64())
        throw OverflowError("pow: exponent too large");
    return r.num().to_int64();
}

inline Rational eval_rational(const Expr& e, const EvalOptions& opts) {
    opts.check_deadline();
    if (e.is_leaf()) return Rational(e.value());
    const auto& kids = e.children();
    switch (e.op()) {
        case Op::neg:
            return -eval_rational(kids[0], opts);
        case Op::abs:
            return eval_rational(kids[0], opts).abs();
        case Op::add: {
            Rational r = eval_rational(kids[0], opts) + eval_rational(kids[1], opts);
            check_digits(r, opts);
            return r;
        }
        case Op::sub: {
            Rational r = eval_rational(kids[0], opts) - eval_rational(kids[1], opts);
            check_digits(r, opts);
            return r;
        }
        case Op::mul: {
            Rational r = eval_rational(kids[0], opts) * eval_rational(kids[1], opts);
            check_digits(r, opts);
            return r;
        }
        case Op::div: {
            Rational d = eval_rational(kids[1], opts);
            if (d.is_zero()) throw DivisionByZeroError("division by exact zero");
            Rational r = eval_rational(kids[0], opts) / d;
            check_digits(r, opts);
            return r;
        }
        case Op::pow: {
            Rational base = eval_rational(kids[0], opts);
            std::int64_t e64 = integer_exponent(kids[1], opts);
            if (base.is_zero() && e64 < 0)
                throw DivisionByZeroError("zero base with negative exponent");
            // Size estimate before committing to the multiplication chain.
            std::uint64_t mag = e64 < 0 ? static_cast<std::uint64_t>(-(e64 + 1)) + 1
                                        : static_cast<std::uint64_t>(e64);
            std::uint64_t base_digits = std::max(base.num().digit_count(),
                                                 base.den().digit_count());
            if (mag > 0 &&
                base_digits > static_cast<std::uint64_t>(opts.digit_cap) / mag + 1)
                throw OverflowError("pow result would exceed digit cap");
            Rational r = Rational::pow(base, e64);
            check_digits(r, opts);
            return r;
        }
        default:
            throw std::logic_error("eval_rational: transcendental operator");
    }
}

inline BigFloat eval_real(const Expr& e, int scale, const EvalOptions& opts) {
    opts.check_deadline();
    if (e.is_leaf()) {
        BigFloat f = BigFloat::from_integer(e.value(), scale);
        check_digits(f, opts);
        return f;
    }
    const auto& kids = e.children();
    auto arg = [&](std::size_t i) { return eval_real(kids[i], scale, opts); };
    BigFloat r{BigInt(0), scale};
    switch (e.op()) {
        case Op::neg:
            r = -arg(0);
            break;
        case Op::abs:
            r = arg(0).abs();
            break;
        case Op::add:
            r = arg(0) + arg(1);
            break;
        case Op::sub:
            r = arg(0) - arg(1);
            break;
        case Op::mul:
            r = arg(0) * arg(1);
            break;
        case Op::div: {
            BigFloat d = arg(1);
            if (d.is_zero())
                throw DivisionByZeroError("division by zero at working precision");
            r = arg(0) / d;
            break;
        }
        case Op::sqrt: {
            BigFloat x = arg(0);
            if (x.signum() < 0) throw DomainError("sqrt of a negative value");
            r = hp::sqrt(x);
            break;
        }
        case Op::exp: {
            BigFloat x = arg(0);
            // exp(x) has about x / ln(10) integer digits.
            if (BigInt(3) * x.to_rational().num() >
                BigInt(7) * BigInt(opts.digit_cap) * x.to_rational().den())
                throw OverflowError("exp result would exceed digit cap");
            r = hp::exp(x, static_cast<std::size_t>(opts.digit_cap));
            break;
        }
        case Op::ln: {
            BigFloat x = arg(0);
            if (x.signum() <= 0) throw DomainError("ln of a non-positive value");
            r = hp::ln(x);
            break;
        }
        case Op::sin:
            r = hp::sin(arg(0));
            break;
        case Op::cos:
            r = hp::cos(arg(0));
            break;
        case Op::tan: {
            BigFloat x = arg(0);
            BigFloat c = hp::cos(x);
            if (c.is_zero()) throw DomainError("tan at a zero of cos");
            r = hp::sin(x) / c;
            break;
        }
        case Op::pow: {
            if (subtree_is_rational(kids[1])) {
                Rational er = eval_rational(kids[1], opts);
                if (er.is_integer()) {
                    if (!er.num().fits_int64())
                        throw OverflowError("pow: exponent too large");
                    std::int64_t e64 = er.num().to_int64();
                    BigFloat base = arg(0);
                    if (base.is_zero() && e64 < 0)
                        throw DivisionByZeroError("zero base with negative exponent");
                    std::uint64_t mag = e64 < 0
                                            ? static_cast<std::uint64_t>(-(e64 + 1)) + 1
                                            : static_cast<std::uint64_t>(e64);
                    std::uint64_t bd = base.int_digit_count() + 1;
                    if (mag > 0 &&
                        bd > static_cast<std::uint64_t>(opts.digit_cap) / mag + 1)
                        throw OverflowError("pow result would exceed digit cap");
                    r = hp::pow_int(base, e64);
                    break;
                }
            }
            BigFloat base = arg(0);
            if (base.signum() <= 0)
                throw DomainError("pow with non-integer exponent needs positive base");
            r = hp::pow_real(base, arg(1));
            break;
        }
        default:
            throw std::logic_error("eval_real: unhandled operator");
    }
    check_digits(r, opts);
    return r;
}

}  // namespace detail

/// Evaluates an expression exactly. Rational-closed trees (neg, abs, add,
/// sub, mul, div, pow with integer exponent) yield an exact rational;
/// anything touching sqrt/exp/ln/sin/cos/tan yields a high-precision real.
inline Value eval_exact(const Expr& e, const EvalOptions& opts = {}) {
    if (detail::subtree_is_rational(e))
        return Value::exact(detail::eval_rational(e, opts));
    const int scale = opts.precision + 20;
    return Value::real(detail::eval_real(e, scale, opts));
}

// ---------------------------------------------------------------------------
// Equation solvers

namespace detail {

inline Rational quadratic_discriminant_root(const Rational& disc) {
    if (disc.is_negative()) throw NoRationalRootError("negative discriminant");
    if (!disc.is_integer()) throw NoRationalRootError("non-integer discriminant");
    BigInt s = BigInt::isqrt(disc.num());
    if (s * s != disc.num()) throw NoRationalRootError("discriminant is not a square");
    return Rational(s);
}

/// Roots of x^2 + b x + c, ascending; throws NoRationalRootError when they
/// are not rational.
inline std::pair<Rational, Rational> solve_monic_quadratic(const Rational& b,
                                                           const Rational& c) {
    Rational disc = b * b - Rational(4) * c;
    Rational s = quadratic_discriminant_root(disc);
    Rational half(BigInt(1), BigInt(2));
    Rational r1 = (-b - s) * half;
    Rational r2 = (-b + s) * half;
    return {r1, r2};
}

}  // namespace detail

/// Solves one D6 problem; answers come back in the type's canonical order
/// (single root; components by variable order; roots ascending; pairs
/// lexicographic; single simplified value).
inline std::vector<Value> solve_equation(const EquationProblem& p,
                                         const EvalOptions& opts = {}) {
    opts.check_deadline();
    const auto& c = p.coeffs;
    auto R = [](std::int64_t v) { return Rational(v); };
    switch (p.type) {
        case EquationType::linear: {
            if (c[0] == 0) throw SingularSystemError("linear: zero coefficient");
            return {Value::exact((R(c[2]) - R(c[1])) / R(c[0]))};
        }
        case EquationType::system2: {
            Rational det = R(c[0]) * R(c[4]) - R(c[3]) * R(c[1]);
            if (det.is_zero()) throw SingularSystemError("2x2 system is singular");
            Rational x = (R(c[2]) * R(c[4]) - R(c[5]) * R(c[1])) / det;
            Rational y = (R(c[0]) * R(c[5]) - R(c[3]) * R(c[2])) / det;
            return {Value::exact(x), Value::exact(y)};
        }
        case EquationType::quadratic: {
            auto [r1, r2] = detail::solve_monic_quadratic(R(c[0]), R(c[1]));
            return {Value::exact(r1), Value::exact(r2)};
        }
        case EquationType::system3: {
            auto det3 = [&](std::int64_t m[3][3]) {
                return R(m[0][0]) * (R(m[1][1]) * R(m[2][2]) - R(m[1][2]) * R(m[2][1])) -
                       R(m[0][1]) * (R(m[1][0]) * R(m[2][2]) - R(m[1][2]) * R(m[2][0])) +
                       R(m[0][2]) * (R(m[1][0]) * R(m[2][1]) - R(m[1][1]) * R(m[2][0]));
            };
            std::int64_t a[3][3];
            std::int64_t rhs[3];
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) a[i][j] = c[i * 4 + j];
                rhs[i] = c[i * 4 + 3];
            }
            Rational det = det3(a);
            if (det.is_zero()) throw SingularSystemError("3x3 system is singular");
            std::vector<Value> out;
            for (int var = 0; var < 3; ++var) {
                std::int64_t m[3][3];
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) m[i][j] = j == var ? rhs[i] : a[i][j];
                out.push_back(Value::exact(det3(m) / det));
            }
            return out;
        }
        case EquationType::cubic: {
            // Rational-root search over divisors of the constant term, then
            // synthetic deflation to a quadratic. The generator builds cubics
            // from integer roots, so a general resolvent is not needed here.
            Rational c2 = R(c[0]), c1 = R(c[1]), c0 = R(c[2]);
            std::optional<Rational> root;
            if (c0.is_zero()) {
                root = Rational(0);
            } else {
                BigInt n = c0.num().abs();
                if (!n.fits_int64()) throw NoRationalRootError("constant term too large");
                std::int64_t nn = n.to_int64();
                for (std::int64_t d = 1; d * d <= nn && !root; ++d) {
                    if (nn % d != 0) continue;
                    opts.check_deadline();
                    for (std::int64_t cand : {d, -d, nn / d, -(nn / d)}) {
                        Rational x = R(cand);
                        if (((x + c2) * x + c1) * x + c0 == Rational(0)) {
                            root = x;
                            break;
                        }
                    }
                }
            }
            if (!root) throw NoRationalRootError("cubic has no rational root");
            Rational q1 = c2 + *root;
            Rational q0 = c1 + *root * q1;
            auto [r1, r2] = detail::solve_monic_quadratic(q1, q0);
            std::vector<Rational> roots{*root, r1, r2};
            std::sort(roots.begin(), roots.end());
            return {Value::exact(roots[0]), Value::exact(roots[1]),
                    Value::exact(roots[2])};
        }
        case EquationType::quadratic_system: {
            // x - y = d and x*y = p  =>  y^2 + d y - p = 0, x = y + d.
            auto [y1, y2] = detail::solve_monic_quadratic(R(c[0]), -R(c[1]));
            std::vector<std::pair<Rational, Rational>> pairs{
                {y1 + R(c[0]), y1}, {y2 + R(c[0]), y2}};
            std::sort(pairs.begin(), pairs.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first < b.first;
                          return a.second < b.second;
                      });
            std::vector<Value> out;
            for (auto& [x, y] : pairs) {
                out.push_back(Value::exact(x));
                out.push_back(Value::exact(y));
            }
            return out;
        }
        case EquationType::cancel_expand:
        case EquationType::identity:
            return {eval_exact(equation_expr(p), opts)};
    }
    throw std::logic_error("solve_equation: bad type");
}

// ---------------------------------------------------------------------------
// Verification

enum class VerifyStatus { verified, timeout, solver_error, non_finite };

inline std::string verify_status_name(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::verified: return "verified";
        case VerifyStatus::timeout: return "timeout";
        case VerifyStatus::solver_error: return "solver_error";
        case VerifyStatus::non_finite: return "non_finite";
    }
    return "?";
}

struct VerificationOutcome {
    VerifyStatus status;
    std::vector<Value> answer;  // nonempty iff status == verified
    std::chrono::duration<double> elapsed{0};
};

struct VerifyOptions {
    double timeout_seconds = 12.0;
    int precision = 50;
    std::int64_t digit_cap = 1'000'000;

    EvalOptions eval_options() const {
        EvalOptions o;
        o.precision = precision;
        o.digit_cap = digit_cap;
        o.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(timeout_seconds));
        return o;
    }
};

namespace detail {

template <typename Fn>
VerificationOutcome run_verified(Fn&& fn) {
    VerificationOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        out.answer = fn();
        out.status = VerifyStatus::verified;
    } catch (const TimeoutError&) {
        out.status = VerifyStatus::timeout;
    } catch (const OverflowError&) {
        out.status = VerifyStatus::non_finite;
    } catch (const DivisionByZeroError&) {
        out.status = VerifyStatus::non_finite;
    } catch (const DomainError&) {
        out.status = VerifyStatus::non_finite;
    } catch (const std::exception&) {
        out.status = VerifyStatus::solver_error;
    }
    out.elapsed = std::chrono::steady_clock::now() - t0;
    if (out.status != VerifyStatus::verified) out.answer.clear();
    return out;
}

}  // namespace detail

inline VerificationOutcome verify(const Expr& e, const VerifyOptions& vo = {}) {
    EvalOptions opts = vo.eval_options();
    return detail::run_verified(
        [&]() -> std::vector<Value> { return {eval_exact(e, opts)}; });
}

inline VerificationOutcome verify(const EquationProblem& p, const VerifyOptions& vo = {}) {
    EvalOptions opts = vo.eval_options();
    return detail::run_verified(
        [&]() -> std::vector<Value> { return solve_equation(p, opts); });
}

}  // namespace algebench

#endif  // ALGEBENCH_ORACLE_HPP
