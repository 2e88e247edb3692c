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

#ifndef ALGEBENCH_RATIONAL_HPP
#define ALGEBENCH_RATIONAL_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "algebench/bigint.hpp"

namespace algebench {

/// Exact rational number. Always reduced, denominator always positive.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        normalize();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    bool is_negative() const { return num_.is_negative(); }
    int signum() const { return num_.signum(); }

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

    Rational abs() const { return Rational(unchecked{}, num_.abs(), den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// x^e with integer exponent; negative e inverts. 0^0 is defined as 1,
    /// 0^negative raises.
    static Rational pow(const Rational& base, long long e) {
        if (e == 0) return Rational(1);
        if (base.is_zero()) {
            if (e < 0) throw std::domain_error("Rational: zero to negative power");
            return Rational(0);
        }
        unsigned long long mag =
            e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                  : static_cast<unsigned long long>(e);
        Rational r(unchecked{}, BigInt::pow(base.num_, mag), BigInt::pow(base.den_, mag));
        if (e < 0) {
            if (r.num_.is_negative()) return Rational(unchecked{}, -r.den_, r.num_.abs());
            return Rational(unchecked{}, r.den_, r.num_);
        }
        return r;
    }

    /// "p/q" when non-integer, plain digits otherwise.
    std::string to_fraction_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    /// Decimal rendering. Integers print exactly; other values print with up
    /// to `sig_digits` significant digits (shorter when the expansion
    /// terminates early), round-half-away-from-zero.
    std::string to_decimal_string(int sig_digits = 30) const {
        if (is_integer()) return num_.to_string();
        bool neg = num_.is_negative();
        BigInt n = num_.abs();
        BigInt ipart = n / den_;
        BigInt rem = n % den_;
        std::string out = ipart.to_string();
        std::size_t int_digits = ipart.is_zero() ? 0 : out.size();
        int frac_budget;
        if (int_digits >= static_cast<std::size_t>(sig_digits)) {
            frac_budget = 1;  // keep at least one place so the value reads non-integer
        } else {
            frac_budget = sig_digits - static_cast<int>(int_digits);
        }
        // For values < 1, leading fractional zeros do not count as significant.
        if (ipart.is_zero()) {
            BigInt probe = rem;
            while (!probe.is_zero() && probe * BigInt(10) < den_) {
                probe = probe * BigInt(10);
                ++frac_budget;
            }
        }
        std::string frac;
        BigInt r = rem;
        for (int i = 0; i < frac_budget && !r.is_zero(); ++i) {
            r = r * BigInt(10);
            BigInt d = r / den_;
            frac.push_back(static_cast<char>('0' + d.to_int64()));
            r = r % den_;
        }
        if (!r.is_zero()) {
            // Round half away from zero on the next digit.
            BigInt next = (r * BigInt(10)) / den_;
            if (next.to_int64() >= 5) {
                int i = static_cast<int>(frac.size()) - 1;
                for (; i >= 0; --i) {
                    if (frac[i] != '9') {
                        ++frac[i];
                        break;
                    }
                    frac[i] = '0';
                }
                if (i < 0) {
                    out = (ipart + BigInt(1)).to_string();
                    // All-nines fraction rolled over into the integer part.
                }
            }
        }
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        return (neg ? "-" : "") + out;
    }

    /// Parses integers, plain decimals, scientific notation, and "p/q".
    static Rational from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            Rational p = from_decimal(s.substr(0, slash));
            Rational q = from_decimal(s.substr(slash + 1));
            return p / q;
        }
        return from_decimal(s);
    }

private:
    struct unchecked {};
    Rational(unchecked, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    static Rational from_decimal(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty number");
        long long exp10 = 0;
        auto epos = s.find_first_of("eE");
        if (epos != std::string_view::npos) {
            std::string estr(s.substr(epos + 1));
            if (estr.empty()) throw std::invalid_argument("Rational: bad exponent");
            std::size_t used = 0;
            exp10 = std::stoll(estr, &used);
            if (used != estr.size()) throw std::invalid_argument("Rational: bad exponent");
            s = s.substr(0, epos);
        }
        std::string digits;
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        long long frac_len = 0;
        bool seen_dot = false, seen_digit = false;
        for (; i < s.size(); ++i) {
            if (s[i] == '.') {
                if (seen_dot) throw std::invalid_argument("Rational: two dots");
                seen_dot = true;
            } else if (s[i] >= '0' && s[i] <= '9') {
                digits.push_back(s[i]);
                seen_digit = true;
                if (seen_dot) ++frac_len;
            } else {
                throw std::invalid_argument("Rational: bad character");
            }
        }
        if (!seen_digit) throw std::invalid_argument("Rational: no digits");
        BigInt n = BigInt::from_string(digits.empty() ? "0" : digits);
        if (neg) n = -n;
        long long net = exp10 - frac_len;
        if (net >= 0) return Rational(n * BigInt::pow(BigInt(10), static_cast<std::uint64_t>(net)));
        return Rational(n, BigInt::pow(BigInt(10), static_cast<std::uint64_t>(-net)));
    }

    void normalize() {
        if (den_.is_negative()) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    BigInt num_;
    BigInt den_;
};

}  // namespace algebench

#endif  // ALGEBENCH_RATIONAL_HPP
