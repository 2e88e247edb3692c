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

#ifndef ALGEBENCH_EXPR_HPP
#define ALGEBENCH_EXPR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebench/bigint.hpp"

namespace algebench {

// ---------------------------------------------------------------------------
// Operators

enum class Op { neg, abs, add, sub, mul, div, sqrt, exp, ln, sin, cos, tan, pow };

struct OpInfo {
    Op op;
    const char* name;  // prefix-notation token
    int arity;
    int sigma;  // ordinal hardness rank
};

/// Hardness ranks are fixed constants; sin and cos share sigma = 17 and that
/// tie is the only one in the table.
inline constexpr OpInfo kOpTable[] = {
    {Op::neg, "neg", 1, 2},   {Op::abs, "abs", 1, 3},   {Op::add, "add", 2, 5},
    {Op::sub, "sub", 2, 6},   {Op::mul, "mul", 2, 8},   {Op::div, "div", 2, 9},
    {Op::sqrt, "sqrt", 1, 11}, {Op::exp, "exp", 1, 13}, {Op::ln, "ln", 1, 15},
    {Op::sin, "sin", 1, 17},  {Op::cos, "cos", 1, 17},  {Op::tan, "tan", 1, 19},
    {Op::pow, "pow", 2, 22},
};

inline const OpInfo& op_info(Op op) { return kOpTable[static_cast<int>(op)]; }

inline const OpInfo* op_info_by_name(std::string_view name) {
    for (const auto& info : kOpTable)
        if (name == info.name) return &info;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Errors

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownTokenError : ExprError {
    using ExprError::ExprError;
};
struct ArityUnderflowError : ExprError {
    using ExprError::ExprError;
};
struct TrailingTokensError : ExprError {
    using ExprError::ExprError;
};
struct InfixSyntaxError : ExprError {
    using ExprError::ExprError;
};

// ---------------------------------------------------------------------------
// Expression tree

/// Immutable-by-convention expression tree. A node is either an integer leaf
/// (arbitrary precision) or an operator with exactly arity children.
class Expr {
public:
    static Expr leaf(BigInt v) {
        Expr e;
        e.value_ = std::move(v);
        return e;
    }
    static Expr leaf(long long v) { return leaf(BigInt(v)); }

    static Expr node(Op op, std::vector<Expr> children) {
        if (static_cast<int>(children.size()) != op_info(op).arity)
            throw std::invalid_argument(std::string("Expr: arity mismatch for ") +
                                        op_info(op).name);
        Expr e;
        e.op_ = op;
        e.children_ = std::move(children);
        return e;
    }

    static Expr unary(Op op, Expr child) {
        std::vector<Expr> kids;
        kids.push_back(std::move(child));
        return node(op, std::move(kids));
    }

    static Expr binary(Op op, Expr lhs, Expr rhs) {
        std::vector<Expr> kids;
        kids.push_back(std::move(lhs));
        kids.push_back(std::move(rhs));
        return node(op, std::move(kids));
    }

    bool is_leaf() const { return !op_.has_value(); }

    const BigInt& value() const {
        if (!is_leaf()) throw std::logic_error("Expr: value() on operator node");
        return value_;
    }

    Op op() const {
        if (is_leaf()) throw std::logic_error("Expr: op() on leaf");
        return *op_;
    }

    const std::vector<Expr>& children() const { return children_; }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (const auto& c : children_) n += c.node_count();
        return n;
    }

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.is_leaf() != b.is_leaf()) return false;
        if (a.is_leaf()) return a.value_ == b.value_;
        if (*a.op_ != *b.op_) return false;
        for (std::size_t i = 0; i < a.children_.size(); ++i)
            if (!(a.children_[i] == b.children_[i])) return false;
        return true;
    }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    Expr() = default;
    std::optional<Op> op_;
    BigInt value_;
    std::vector<Expr> children_;
};

// ---------------------------------------------------------------------------
// Polish prefix notation

namespace detail {

inline bool is_integer_token(std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
    return true;
}

inline Expr parse_prefix_at(const std::vector<std::string>& tokens, std::size_t& pos) {
    if (pos >= tokens.size())
        throw ArityUnderflowError("prefix: ran out of tokens at position " +
                                  std::to_string(pos));
    const std::string& t = tokens[pos++];
    if (const OpInfo* info = op_info_by_name(t)) {
        std::vector<Expr> kids;
        kids.reserve(info->arity);
        for (int i = 0; i < info->arity; ++i) kids.push_back(parse_prefix_at(tokens, pos));
        return Expr::node(info->op, std::move(kids));
    }
    if (is_integer_token(t)) return Expr::leaf(BigInt::from_string(t));
    throw UnknownTokenError("prefix: unknown token \"" + t + "\"");
}

}  // namespace detail

inline Expr parse_prefix(const std::vector<std::string>& tokens) {
    std::size_t pos = 0;
    Expr e = detail::parse_prefix_at(tokens, pos);
    if (pos != tokens.size())
        throw TrailingTokensError("prefix: " + std::to_string(tokens.size() - pos) +
                                  " trailing token(s)");
    return e;
}

inline void render_prefix_into(const Expr& e, std::vector<std::string>& out) {
    if (e.is_leaf()) {
        out.push_back(e.value().to_string());
        return;
    }
    out.push_back(op_info(e.op()).name);
    for (const auto& c : e.children()) render_prefix_into(c, out);
}

inline std::vector<std::string> render_prefix(const Expr& e) {
    std::vector<std::string> out;
    render_prefix_into(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// ASCII infix notation
//
// Precedence: + - < * / < unary minus < ^. Subtraction and division render
// left-associative, ^ right-associative. Same-precedence children are
// parenthesized unless the nesting direction matches the operator's
// associativity and the child is the same operator, which keeps every
// unparenthesized run homogeneous and makes the reparse below structurally
// exact.

namespace detail {

inline int infix_prec(Op op) {
    switch (op) {
        case Op::add:
        case Op::sub:
            return 1;
        case Op::mul:
        case Op::div:
            return 2;
        case Op::neg:
            return 3;
        case Op::pow:
            return 4;
        default:
            return 5;  // function-call syntax, self-delimiting
    }
}

inline const char* infix_symbol(Op op) {
    switch (op) {
        case Op::add:
            return " + ";
        case Op::sub:
            return " - ";
        case Op::mul:
            return " * ";
        case Op::div:
            return " / ";
        case Op::pow:
            return "^";
        default:
            return "";
    }
}

inline bool flat_allowed(Op parent, Op child, bool left_side) {
    if (parent == Op::add && child == Op::add) return !left_side;
    if (parent == Op::sub && child == Op::sub) return left_side;
    if (parent == Op::mul && child == Op::mul) return !left_side;
    if (parent == Op::div && child == Op::div) return left_side;
    if (parent == Op::pow && child == Op::pow) return !left_side;
    return false;
}

inline void render_infix_into(const Expr& e, std::string& out);

inline void render_infix_child(const Expr& child, Op parent, bool left_side,
                               std::string& out) {
    bool parens = false;
    if (child.is_leaf()) {
        // A signed literal that starts the left side of ^ would rebind to the
        // whole power; everywhere else it reads unambiguously.
        parens = child.value().is_negative() && parent == Op::pow && left_side;
    } else {
        int cp = infix_prec(child.op());
        int pp = infix_prec(parent);
        if (cp < pp) {
            parens = true;
        } else if (cp == pp && op_info(child.op()).arity == 2) {
            parens = !flat_allowed(parent, child.op(), left_side);
        }
    }
    if (parens) out.push_back('(');
    render_infix_into(child, out);
    if (parens) out.push_back(')');
}

inline void render_infix_into(const Expr& e, std::string& out) {
    if (e.is_leaf()) {
        out += e.value().to_string();
        return;
    }
    Op op = e.op();
    const auto& kids = e.children();
    switch (op) {
        case Op::neg: {
            out.push_back('-');
            const Expr& c = kids[0];
            bool parens = !c.is_leaf() || c.value().is_negative();
            if (parens) out.push_back('(');
            render_infix_into(c, out);
            if (parens) out.push_back(')');
            return;
        }
        case Op::abs:
        case Op::sqrt:
        case Op::exp:
        case Op::ln:
        case Op::sin:
        case Op::cos:
        case Op::tan:
            out += op_info(op).name;
            out.push_back('(');
            render_infix_into(kids[0], out);
            out.push_back(')');
            return;
        default:
            render_infix_child(kids[0], op, /*left_side=*/true, out);
            out += infix_symbol(op);
            render_infix_child(kids[1], op, /*left_side=*/false, out);
            return;
    }
}

}  // namespace detail

inline std::string render_infix(const Expr& e) {
    std::string out;
    detail::render_infix_into(e, out);
    return out;
}

namespace detail {

struct InfixToken {
    enum Kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
    Kind kind;
    std::string text;
};

class InfixLexer {
public:
    explicit InfixLexer(std::string_view s) : s_(s) { advance(); }

    const InfixToken& peek() const { return cur_; }

    InfixToken take() {
        InfixToken t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
        if (pos_ >= s_.size()) {
            cur_ = {InfixToken::end, ""};
            return;
        }
        char c = s_[pos_];
        if (c >= '0' && c <= '9') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
            cur_ = {InfixToken::number, std::string(s_.substr(start, pos_ - start))};
            return;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && ((s_[pos_] >= 'a' && s_[pos_] <= 'z') ||
                                        (s_[pos_] >= 'A' && s_[pos_] <= 'Z')))
                ++pos_;
            cur_ = {InfixToken::ident, std::string(s_.substr(start, pos_ - start))};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': cur_ = {InfixToken::plus, "+"}; return;
            case '-': cur_ = {InfixToken::minus, "-"}; return;
            case '*': cur_ = {InfixToken::star, "*"}; return;
            case '/': cur_ = {InfixToken::slash, "/"}; return;
            case '^': cur_ = {InfixToken::caret, "^"}; return;
            case '(': cur_ = {InfixToken::lparen, "("}; return;
            case ')': cur_ = {InfixToken::rparen, ")"}; return;
            default:
                throw InfixSyntaxError(std::string("infix: unexpected character '") + c +
                                       "'");
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    InfixToken cur_{InfixToken::end, ""};
};

class InfixParser {
public:
    explicit InfixParser(std::string_view s) : lex_(s) {}

    Expr parse() {
        Expr e = additive();
        if (lex_.peek().kind != InfixToken::end)
            throw InfixSyntaxError("infix: trailing input after expression");
        return e;
    }

private:
    // A run of + and - at one level folds right when it is purely additions
    // (matching the renderer's flattened right spines) and left otherwise.
    Expr additive() {
        std::vector<Expr> terms;
        std::vector<InfixToken::Kind> ops;
        terms.push_back(multiplicative());
        while (lex_.peek().kind == InfixToken::plus ||
               lex_.peek().kind == InfixToken::minus) {
            ops.push_back(lex_.take().kind);
            terms.push_back(multiplicative());
        }
        return fold(terms, ops, InfixToken::plus, Op::add, Op::sub);
    }

    Expr multiplicative() {
        std::vector<Expr> terms;
        std::vector<InfixToken::Kind> ops;
        terms.push_back(unary());
        while (lex_.peek().kind == InfixToken::star ||
               lex_.peek().kind == InfixToken::slash) {
            ops.push_back(lex_.take().kind);
            terms.push_back(unary());
        }
        return fold(terms, ops, InfixToken::star, Op::mul, Op::div);
    }

    static Expr fold(std::vector<Expr>& terms, const std::vector<InfixToken::Kind>& ops,
                     InfixToken::Kind pure_kind, Op pure_op, Op other_op) {
        if (ops.empty()) return std::move(terms[0]);
        bool pure = true;
        for (auto k : ops)
            if (k != pure_kind) pure = false;
        if (pure) {
            Expr acc = std::move(terms.back());
            for (std::size_t i = terms.size() - 1; i-- > 0;)
                acc = Expr::binary(pure_op, std::move(terms[i]), std::move(acc));
            return acc;
        }
        Expr acc = std::move(terms[0]);
        for (std::size_t i = 0; i < ops.size(); ++i) {
            Op op = ops[i] == pure_kind ? pure_op : other_op;
            acc = Expr::binary(op, std::move(acc), std::move(terms[i + 1]));
        }
        return acc;
    }

    Expr unary() {
        if (lex_.peek().kind == InfixToken::minus) {
            lex_.take();
            return Expr::unary(Op::neg, unary());
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (lex_.peek().kind == InfixToken::caret) {
            lex_.take();
            return Expr::binary(Op::pow, std::move(base), unary());
        }
        return base;
    }

    Expr atom() {
        InfixToken t = lex_.take();
        switch (t.kind) {
            case InfixToken::number:
                return Expr::leaf(BigInt::from_string(t.text));
            case InfixToken::ident: {
                const OpInfo* info = op_info_by_name(t.text);
                if (info == nullptr || info->arity != 1 || info->op == Op::neg)
                    throw InfixSyntaxError("infix: unknown function \"" + t.text + "\"");
                expect(InfixToken::lparen, "(");
                Expr arg = additive();
                expect(InfixToken::rparen, ")");
                return Expr::unary(info->op, std::move(arg));
            }
            case InfixToken::lparen: {
                Expr e = additive();
                expect(InfixToken::rparen, ")");
                return e;
            }
            default:
                throw InfixSyntaxError("infix: unexpected token \"" + t.text + "\"");
        }
    }

    void expect(InfixToken::Kind kind, const char* what) {
        InfixToken t = lex_.take();
        if (t.kind != kind)
            throw InfixSyntaxError(std::string("infix: expected \"") + what + "\", got \"" +
                                   t.text + "\"");
    }

    InfixLexer lex_;
};

}  // namespace detail

/// Inverse of render_infix. A leading minus on a bare literal parses as the
/// neg operator, so negative leaves are outside this parser's image; the
/// prefix notation round-trips those instead.
inline Expr parse_infix(std::string_view s) {
    detail::InfixParser p(s);
    return p.parse();
}

// ---------------------------------------------------------------------------
// Structural metrics

struct Metrics {
    std::int64_t token_count = 0;
    std::int64_t depth = 0;
    std::int64_t max_sigma = 0;
    std::int64_t parallel_branches = 0;
    std::int64_t ops_per_branch = 0;
    std::int64_t chain_length = 0;
    std::int64_t max_digits = 0;
    std::int64_t repeated_operand_count = 0;

    friend bool operator==(const Metrics& a, const Metrics& b) {
        return a.token_count == b.token_count && a.depth == b.depth &&
               a.max_sigma == b.max_sigma && a.parallel_branches == b.parallel_branches &&
               a.ops_per_branch == b.ops_per_branch && a.chain_length == b.chain_length &&
               a.max_digits == b.max_digits &&
               a.repeated_operand_count == b.repeated_operand_count;
    }
};

namespace detail {

inline void collect_addends(const Expr& e, std::vector<const Expr*>& out) {
    if (!e.is_leaf() && e.op() == Op::add) {
        collect_addends(e.children()[0], out);
        collect_addends(e.children()[1], out);
        return;
    }
    out.push_back(&e);
}

inline std::int64_t metric_depth(const Expr& e) {
    if (e.is_leaf()) return 0;
    std::int64_t best = 0;
    for (const auto& c : e.children()) best = std::max(best, metric_depth(c));
    return 1 + best;
}

inline std::int64_t metric_max_sigma(const Expr& e) {
    if (e.is_leaf()) return 0;
    std::int64_t best = op_info(e.op()).sigma;
    for (const auto& c : e.children()) best = std::max(best, metric_max_sigma(c));
    return best;
}

inline std::int64_t op_count(const Expr& e) {
    if (e.is_leaf()) return 0;
    std::int64_t n = 1;
    for (const auto& c : e.children()) n += op_count(c);
    return n;
}

// Longest run of operator nodes linked through first children, starting
// anywhere in the tree. A left-spine evaluation chain scores its step count.
inline std::int64_t left_spine(const Expr& e) {
    if (e.is_leaf()) return 0;
    return 1 + left_spine(e.children()[0]);
}

inline std::int64_t metric_chain(const Expr& e) {
    if (e.is_leaf()) return 0;
    std::int64_t best = left_spine(e);
    for (const auto& c : e.children()) best = std::max(best, metric_chain(c));
    return best;
}

inline std::int64_t metric_max_digits(const Expr& e) {
    if (e.is_leaf()) return static_cast<std::int64_t>(e.value().digit_count());
    std::int64_t best = 0;
    for (const auto& c : e.children()) best = std::max(best, metric_max_digits(c));
    return best;
}

}  // namespace detail

inline Metrics compute_metrics(const Expr& e) {
    Metrics m;
    m.token_count = static_cast<std::int64_t>(e.node_count());
    m.depth = detail::metric_depth(e);
    m.max_sigma = detail::metric_max_sigma(e);

    std::vector<const Expr*> addends;
    detail::collect_addends(e, addends);
    bool root_is_chain = !e.is_leaf() && e.op() == Op::add;
    m.parallel_branches = root_is_chain ? static_cast<std::int64_t>(addends.size()) : 1;

    std::int64_t ops = 0;
    for (const Expr* a : addends) ops = std::max(ops, detail::op_count(*a));
    m.ops_per_branch = ops;

    m.chain_length = detail::metric_chain(e);
    m.max_digits = detail::metric_max_digits(e);

    std::map<std::string, std::int64_t> leaf_addends;
    for (const Expr* a : addends)
        if (a->is_leaf()) ++leaf_addends[a->value().to_string()];
    std::int64_t repeats = 0;
    for (const auto& [_, n] : leaf_addends) repeats = std::max(repeats, n);
    m.repeated_operand_count = repeats;
    return m;
}

}  // namespace algebench

#endif  // ALGEBENCH_EXPR_HPP
