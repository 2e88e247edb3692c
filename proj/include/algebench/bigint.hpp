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

#ifndef ALGEBENCH_BIGINT_HPP
#define ALGEBENCH_BIGINT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace algebench {

/// Arbitrary-precision signed integer.
///
/// Sign-magnitude with base-1e9 limbs (little-endian). Base 1e9 keeps
/// decimal conversion and digit counting cheap, which the rest of the
/// pipeline leans on (digit caps, operand-size schedules).
class BigInt {
public:
    static constexpr std::uint32_t kBase = 1'000'000'000u;
    static constexpr int kBaseDigits = 9;

    BigInt() = default;

    BigInt(long long v) {  // NOLINT: implicit by design, mirrors int literals
        if (v < 0) {
            negative_ = true;
            // Avoid overflow on LLONG_MIN.
            unsigned long long m = static_cast<unsigned long long>(-(v + 1)) + 1ull;
            while (m != 0) {
                limbs_.push_back(static_cast<std::uint32_t>(m % kBase));
                m /= kBase;
            }
        } else {
            unsigned long long m = static_cast<unsigned long long>(v);
            while (m != 0) {
                limbs_.push_back(static_cast<std::uint32_t>(m % kBase));
                m /= kBase;
            }
        }
    }

    static BigInt from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigInt: empty string");
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '+' || s[0] == '-') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: sign only");
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9')
                throw std::invalid_argument("BigInt: bad digit in \"" + std::string(s) + "\"");
        BigInt r;
        // Consume 9 decimal digits per limb, from the least significant end.
        std::size_t n = s.size();
        for (std::size_t end = n; end > i;) {
            std::size_t begin = end >= i + kBaseDigits ? end - kBaseDigits : i;
            std::uint32_t limb = 0;
            for (std::size_t k = begin; k < end; ++k)
                limb = limb * 10 + static_cast<std::uint32_t>(s[k] - '0');
            r.limbs_.push_back(limb);
            end = begin;
        }
        r.trim();
        r.negative_ = neg && !r.is_zero();
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        if (negative_) out.push_back('-');
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%u", limbs_.back());
        out += buf;
        for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
            std::snprintf(buf, sizeof(buf), "%09u", limbs_[i]);
            out += buf;
        }
        return out;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int signum() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    /// Decimal digits of |x|; 0 counts as one digit.
    std::size_t digit_count() const {
        if (is_zero()) return 1;
        std::size_t d = (limbs_.size() - 1) * kBaseDigits;
        std::uint32_t top = limbs_.back();
        while (top != 0) {
            ++d;
            top /= 10;
        }
        return d;
    }

    bool fits_int64() const {
        static const BigInt kMin(std::int64_t(INT64_MIN));
        static const BigInt kMax(std::int64_t(INT64_MAX));
        return cmp(*this, kMin) >= 0 && cmp(*this, kMax) <= 0;
    }

    std::int64_t to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt: does not fit in int64");
        std::int64_t v = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = v * kBase + limbs_[i];
        return negative_ ? -v : v;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.negative_ = !r.negative_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        r.negative_ = false;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.negative_ == b.negative_) {
            BigInt r;
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.negative_ = a.negative_ && !r.limbs_.empty();
            return r;
        }
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        BigInt r;
        if (c > 0) {
            r.limbs_ = sub_mag(a.limbs_, b.limbs_);
            r.negative_ = a.negative_;
        } else {
            r.limbs_ = sub_mag(b.limbs_, a.limbs_);
            r.negative_ = b.negative_;
        }
        if (r.limbs_.empty()) r.negative_ = false;
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt r;
        r.limbs_ = mul_mag(a.limbs_, b.limbs_);
        r.negative_ = a.negative_ != b.negative_;
        return r;
    }

    /// Truncated division: quotient rounds toward zero, remainder takes the
    /// dividend's sign, |r| < |b|. Matches C++ builtin semantics.
    struct DivResult;
    static DivResult divmod(const BigInt& a, const BigInt& b);

    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }
    BigInt& operator/=(const BigInt& o) { return *this = *this / o; }

    static BigInt gcd(BigInt a, BigInt b) {
        a.negative_ = false;
        b.negative_ = false;
        while (!b.is_zero()) {
            BigInt r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    static BigInt pow(const BigInt& base, std::uint64_t exp) {
        BigInt result(1);
        BigInt acc = base;
        while (exp != 0) {
            if (exp & 1u) result *= acc;
            exp >>= 1u;
            if (exp != 0) acc *= acc;
        }
        return result;
    }

    /// Floor of sqrt(x); x must be nonnegative.
    static BigInt isqrt(const BigInt& x) {
        if (x.is_negative()) throw std::domain_error("BigInt: isqrt of negative");
        if (x.is_zero()) return BigInt();
        if (x.fits_int64() && x.to_int64() < (1ll << 52)) {
            // Fast path through doubles, corrected below.
            auto v = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x.to_int64())));
            BigInt g(v);
            while (g * g > x) g -= BigInt(1);
            while ((g + BigInt(1)) * (g + BigInt(1)) <= x) g += BigInt(1);
            return g;
        }
        // Newton iteration from a one-sided initial guess 10^ceil(d/2).
        BigInt g = pow(BigInt(10), (x.digit_count() + 1) / 2);
        while (true) {
            BigInt next = (g + x / g) / BigInt(2);
            if (next >= g) break;
            g = std::move(next);
        }
        while (g * g > x) g -= BigInt(1);
        return g;
    }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.negative_ != b.negative_) return a.negative_ ? -1 : 1;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.negative_ ? -c : c;
    }

private:
    using Limbs = std::vector<std::uint32_t>;

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) negative_ = false;
    }

    static int cmp_mag(const Limbs& a, const Limbs& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static Limbs add_mag(const Limbs& a, const Limbs& b) {
        const Limbs& lo = a.size() >= b.size() ? b : a;
        const Limbs& hi = a.size() >= b.size() ? a : b;
        Limbs r(hi.size() + 1, 0);
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            std::uint32_t s = hi[i] + carry;
            if (i < lo.size()) s += lo[i];
            carry = s >= kBase ? 1u : 0u;
            r[i] = carry ? s - kBase : s;
        }
        r[hi.size()] = carry;
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Requires |a| >= |b|.
    static Limbs sub_mag(const Limbs& a, const Limbs& b) {
        Limbs r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                               (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            if (cur < 0) {
                cur += kBase;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static Limbs mul_mag(const Limbs& a, const Limbs& b) {
        Limbs r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                // Max: (1e9-1)^2 + 1e9 + carry < 2^63, safe in u64.
                std::uint64_t cur = r[i + j] +
                                    static_cast<std::uint64_t>(a[i]) * b[j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
            }
            std::size_t k = i + b.size();
            while (carry != 0) {
                std::uint64_t cur = r[k] + carry;
                r[k] = static_cast<std::uint32_t>(cur % kBase);
                carry = cur / kBase;
                ++k;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::pair<Limbs, std::uint32_t> div_mag_small(const Limbs& a, std::uint32_t d) {
        Limbs q(a.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            std::uint64_t cur = rem * kBase + a[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        return {std::move(q), static_cast<std::uint32_t>(rem)};
    }

    // Knuth algorithm D on base-1e9 limbs. The divisor is scaled so its top
    // limb is >= kBase/2, which bounds the quotient-digit correction loop.
    static std::pair<Limbs, Limbs> div_mag(const Limbs& a, const Limbs& b) {
        const std::uint32_t scale = kBase / (b.back() + 1);
        Limbs u = scale == 1 ? a : mul_mag(a, Limbs{scale});
        Limbs v = scale == 1 ? b : mul_mag(b, Limbs{scale});
        const std::size_t n = v.size();
        const std::size_t m = u.size() >= n ? u.size() - n : 0;
        u.resize(u.size() + 1, 0);

        Limbs q(m + 1, 0);
        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t top = static_cast<std::uint64_t>(u[j + n]) * kBase + u[j + n - 1];
            std::uint64_t qhat = top / v[n - 1];
            std::uint64_t rhat = top % v[n - 1];
            while (qhat >= kBase ||
                   (n >= 2 && qhat * v[n - 2] > rhat * kBase + u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= kBase) break;
            }
            // u[j..j+n] -= qhat * v
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * v[i] + carry;
                carry = p / kBase;
                std::int64_t cur = static_cast<std::int64_t>(u[i + j]) -
                                   static_cast<std::int64_t>(p % kBase) - borrow;
                if (cur < 0) {
                    cur += kBase;
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[i + j] = static_cast<std::uint32_t>(cur);
            }
            std::int64_t cur = static_cast<std::int64_t>(u[j + n]) -
                               static_cast<std::int64_t>(carry) - borrow;
            if (cur < 0) {
                // qhat was one too large; add v back once.
                cur += kBase;
                --qhat;
                std::uint32_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                    c2 = s >= kBase ? 1u : 0u;
                    u[i + j] = static_cast<std::uint32_t>(c2 ? s - kBase : s);
                }
                cur += c2;
                if (cur >= static_cast<std::int64_t>(kBase)) cur -= kBase;
            }
            u[j + n] = static_cast<std::uint32_t>(cur);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        u.resize(n);
        while (!u.empty() && u.back() == 0) u.pop_back();
        while (!q.empty() && q.back() == 0) q.pop_back();
        if (scale != 1) {
            auto [r, leftover] = div_mag_small(u, scale);
            (void)leftover;  // exact by construction
            u = std::move(r);
        }
        return {std::move(q), std::move(u)};
    }

    Limbs limbs_;
    bool negative_ = false;
};

struct BigInt::DivResult {
    BigInt quot;
    BigInt rem;
};

inline BigInt::DivResult BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c < 0) return {BigInt(), a};
    DivResult dr;
    if (b.limbs_.size() == 1) {
        auto [q, r] = div_mag_small(a.limbs_, b.limbs_[0]);
        dr.quot.limbs_ = std::move(q);
        dr.rem = BigInt(static_cast<long long>(r));
    } else {
        auto [q, r] = div_mag(a.limbs_, b.limbs_);
        dr.quot.limbs_ = std::move(q);
        dr.rem.limbs_ = std::move(r);
    }
    dr.quot.trim();
    dr.rem.trim();
    dr.quot.negative_ = (a.negative_ != b.negative_) && !dr.quot.is_zero();
    dr.rem.negative_ = a.negative_ && !dr.rem.is_zero();
    return dr;
}

inline BigInt operator/(const BigInt& a, const BigInt& b) {
    return BigInt::divmod(a, b).quot;
}
inline BigInt operator%(const BigInt& a, const BigInt& b) {
    return BigInt::divmod(a, b).rem;
}

}  // namespace algebench

#endif  // ALGEBENCH_BIGINT_HPP
