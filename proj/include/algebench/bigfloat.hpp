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

#ifndef ALGEBENCH_BIGFLOAT_HPP
#define ALGEBENCH_BIGFLOAT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "algebench/bigint.hpp"
#include "algebench/rational.hpp"

namespace algebench {

/// Decimal fixed-point number: value = mant / 10^scale.
///
/// The integer part is unbounded; `scale` fixes the count of fractional
/// decimal digits carried. Binary operations require both operands at the
/// same scale and return that scale, so precision is explicit at every
/// step. All roundings are half-away-from-zero.
class BigFloat {
public:
    BigFloat() : mant_(0), scale_(0) {}
    BigFloat(BigInt mant, int scale) : mant_(std::move(mant)), scale_(scale) {
        if (scale < 0) throw std::invalid_argument("BigFloat: negative scale");
    }

    static BigFloat from_integer(const BigInt& v, int scale) {
        return BigFloat(v * pow10(scale), scale);
    }

    static BigFloat from_rational(const Rational& r, int scale) {
        return BigFloat(div_round(r.num() * pow10(scale), r.den()), scale);
    }

    const BigInt& mant() const { return mant_; }
    int scale() const { return scale_; }
    bool is_zero() const { return mant_.is_zero(); }
    int signum() const { return mant_.signum(); }

    /// Exact rational value of the stored approximation.
    Rational to_rational() const { return Rational(mant_, pow10(scale_)); }

    std::string to_decimal_string(int sig_digits = 30) const {
        return to_rational().to_decimal_string(sig_digits);
    }

    /// Decimal digits in the integer part (0 for |x| < 1).
    std::size_t int_digit_count() const {
        std::size_t d = mant_.digit_count();
        return d > static_cast<std::size_t>(scale_) ? d - scale_ : 0;
    }

    BigFloat rescaled(int new_scale) const {
        if (new_scale == scale_) return *this;
        if (new_scale > scale_) return BigFloat(mant_ * pow10(new_scale - scale_), new_scale);
        return BigFloat(div_round(mant_, pow10(scale_ - new_scale)), new_scale);
    }

    BigFloat operator-() const { return BigFloat(-mant_, scale_); }
    BigFloat abs() const { return BigFloat(mant_.abs(), scale_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        check_scales(a, b);
        return BigFloat(a.mant_ + b.mant_, a.scale_);
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        check_scales(a, b);
        return BigFloat(a.mant_ - b.mant_, a.scale_);
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        check_scales(a, b);
        return BigFloat(div_round(a.mant_ * b.mant_, pow10(a.scale_)), a.scale_);
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        check_scales(a, b);
        if (b.is_zero()) throw std::domain_error("BigFloat: division by zero");
        return BigFloat(div_round(a.mant_ * pow10(a.scale_), b.mant_), a.scale_);
    }

    BigFloat div_small(std::int64_t d) const {
        if (d == 0) throw std::domain_error("BigFloat: division by zero");
        return BigFloat(div_round(mant_, BigInt(d)), scale_);
    }

    friend bool operator==(const BigFloat& a, const BigFloat& b) {
        check_scales(a, b);
        return a.mant_ == b.mant_;
    }
    friend bool operator<(const BigFloat& a, const BigFloat& b) {
        check_scales(a, b);
        return a.mant_ < b.mant_;
    }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a < b || a == b; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }

    static BigInt pow10(int k) { return BigInt::pow(BigInt(10), static_cast<std::uint64_t>(k)); }

    /// b must be nonzero; rounds the quotient half away from zero.
    static BigInt div_round(const BigInt& a, const BigInt& b) {
        BigInt bb = b.abs();
        BigInt aa = a.abs();
        auto dr = BigInt::divmod(aa, bb);
        BigInt q = dr.quot;
        if (dr.rem * BigInt(2) >= bb) q += BigInt(1);
        bool neg = a.is_negative() != b.is_negative();
        return neg ? -q : q;
    }

private:
    static void check_scales(const BigFloat& a, const BigFloat& b) {
        if (a.scale_ != b.scale_)
            throw std::logic_error("BigFloat: mixed scales in arithmetic");
    }

    BigInt mant_;
    int scale_;
};

namespace hp {

// High-precision elementary functions on BigFloat.
//
// Each function accepts an argument at the caller's scale S, computes
// internally at S plus guard digits (sized to the reduction it performs),
// and returns a value rounded back to S. The per-call error is a few units
// in the last place of S; callers pick S with their own headroom.

inline constexpr int kGuardDigits = 20;

inline BigFloat sqrt(const BigFloat& x) {
    if (x.signum() < 0) throw std::domain_error("sqrt of negative value");
    const int s = x.scale();
    // sqrt(m/10^s) = isqrt(m * 10^(s + 2g)) / 10^(s + g), then round to s.
    const int g = kGuardDigits;
    BigInt wide = x.mant() * BigFloat::pow10(s + 2 * g);
    return BigFloat(BigInt::isqrt(wide), s + g).rescaled(s);
}

/// atan(1/m) by Taylor series; exact small-integer divisions each term.
inline BigFloat arctan_inv(std::int64_t m, int scale) {
    BigFloat power = BigFloat::from_rational(Rational(BigInt(1), BigInt(m)), scale);
    BigFloat sum = power;
    const std::int64_t m2 = m * m;
    bool add = false;
    for (std::int64_t k = 3; !power.is_zero(); k += 2, add = !add) {
        power = power.div_small(m2);
        BigFloat term = power.div_small(k);
        if (term.is_zero()) break;
        sum = add ? sum + term : sum - term;
    }
    return sum;
}

inline BigFloat pi(int scale) {
    const int w = scale + kGuardDigits;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239).
    BigFloat a = arctan_inv(5, w);
    BigFloat b = arctan_inv(239, w);
    BigFloat sixteen = BigFloat::from_integer(BigInt(16), w);
    BigFloat four = BigFloat::from_integer(BigInt(4), w);
    return (sixteen * a - four * b).rescaled(scale);
}

/// ln(y) for y in [1, 2) via 2*atanh((y-1)/(y+1)); argument z <= 1/3.
inline BigFloat ln_core(const BigFloat& y) {
    const int w = y.scale();
    BigFloat one = BigFloat::from_integer(BigInt(1), w);
    BigFloat z = (y - one) / (y + one);
    BigFloat z2 = z * z;
    BigFloat power = z;
    BigFloat sum = z;
    for (std::int64_t k = 3; !power.is_zero(); k += 2) {
        power = power * z2;
        BigFloat term = power.div_small(k);
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return sum + sum;
}

inline BigFloat ln2(int scale) {
    const int w = scale + kGuardDigits;
    return ln_core(BigFloat::from_integer(BigInt(2), w)).rescaled(scale);
}

inline BigFloat ln10(int scale) {
    const int w = scale + kGuardDigits;
    // ln 10 = ln(10/8) + 3 ln 2, with 10/8 inside ln_core's domain.
    BigFloat five_fourths = BigFloat::from_rational(Rational(BigInt(5), BigInt(4)), w);
    BigFloat three = BigFloat::from_integer(BigInt(3), w);
    return (ln_core(five_fourths) + three * ln2(w)).rescaled(scale);
}

inline BigFloat ln(const BigFloat& x) {
    if (x.signum() <= 0) throw std::domain_error("ln of non-positive value");
    const int s = x.scale();
    const int w = s + kGuardDigits;
    BigFloat y = x.rescaled(w);

    // Decimal pre-reduction keeps the binary normalization loop short for
    // very large or very small inputs.
    long long e10 = 0;
    std::size_t idig = y.int_digit_count();
    if (idig > 1) {
        e10 = static_cast<long long>(idig - 1);
        y = BigFloat(y.mant(), w + static_cast<int>(e10)).rescaled(w);
    } else if (idig == 0) {
        long long zeros = 0;
        BigInt m = y.mant().abs();
        while (m.digit_count() + static_cast<std::size_t>(zeros) < static_cast<std::size_t>(w) + 1)
            ++zeros;
        e10 = -zeros;
        y = BigFloat(y.mant() * BigFloat::pow10(static_cast<int>(zeros)), w);
    }

    BigFloat one = BigFloat::from_integer(BigInt(1), w);
    BigFloat two = BigFloat::from_integer(BigInt(2), w);
    long long k2 = 0;
    while (y >= two) {
        y = y.div_small(2);
        ++k2;
    }
    while (y < one) {
        y = y + y;
        --k2;
    }

    BigFloat result = ln_core(y);
    if (k2 != 0) {
        BigFloat l2 = ln2(w);
        BigFloat kf = BigFloat::from_integer(BigInt(k2), w);
        result = result + kf * l2;
    }
    if (e10 != 0) {
        BigFloat l10 = ln10(w);
        BigFloat ef = BigFloat::from_integer(BigInt(e10), w);
        result = result + ef * l10;
    }
    return result.rescaled(s);
}

inline BigFloat exp(const BigFloat& x, std::size_t max_result_int_digits = 2'000'000) {
    const int s = x.scale();
    if (x.is_zero()) return BigFloat::from_integer(BigInt(1), s);

    // Halve until |y| < 1/2, run the Taylor series, square back up.
    // Each squaring can double the relative error, so the guard grows
    // with the halving count.
    int halvings = 0;
    {
        BigFloat y = x.abs();
        BigFloat limit = BigFloat(BigFloat::pow10(s) / BigInt(2), s);
        while (y >= limit) {
            y = y.div_small(2);
            ++halvings;
        }
    }
    const int w = s + kGuardDigits + halvings / 3 + 5;
    BigFloat y = x.rescaled(w);
    for (int i = 0; i < halvings; ++i) y = y.div_small(2);

    BigFloat term = BigFloat::from_integer(BigInt(1), w);
    BigFloat sum = term;
    for (std::int64_t n = 1; !term.is_zero(); ++n) {
        term = (term * y).div_small(n);
        if (term.is_zero()) break;
        sum = sum + term;
    }
    for (int i = 0; i < halvings; ++i) {
        sum = sum * sum;
        if (sum.int_digit_count() > max_result_int_digits)
            throw std::overflow_error("exp result exceeds digit bound");
    }
    return sum.rescaled(s);
}

namespace detail {

/// Reduces x to r in [-pi, pi] with r = x - 2*pi*n.
inline BigFloat trig_reduce(const BigFloat& x, int w) {
    BigFloat y = x.rescaled(w + static_cast<int>(x.int_digit_count()) + 5);
    const int we = y.scale();
    BigFloat two_pi = pi(we) + pi(we);
    BigFloat q = y / two_pi;
    // Round the turn count to nearest.
    BigInt n = BigFloat::div_round(q.mant(), BigFloat::pow10(we));
    BigFloat nf = BigFloat::from_integer(n, we);
    return (y - nf * two_pi).rescaled(w);
}

}  // namespace detail

inline BigFloat sin(const BigFloat& x) {
    const int s = x.scale();
    const int w = s + kGuardDigits;
    BigFloat r = detail::trig_reduce(x, w);
    BigFloat r2 = r * r;
    BigFloat term = r;
    BigFloat sum = r;
    for (std::int64_t k = 1; !term.is_zero(); ++k) {
        term = (term * r2).div_small(2 * k).div_small(2 * k + 1);
        if (term.is_zero()) break;
        sum = (k % 2 == 1) ? sum - term : sum + term;
    }
    return sum.rescaled(s);
}

inline BigFloat cos(const BigFloat& x) {
    const int s = x.scale();
    const int w = s + kGuardDigits;
    BigFloat r = detail::trig_reduce(x, w);
    BigFloat r2 = r * r;
    BigFloat term = BigFloat::from_integer(BigInt(1), w);
    BigFloat sum = term;
    for (std::int64_t k = 1; !term.is_zero(); ++k) {
        term = (term * r2).div_small(2 * k - 1).div_small(2 * k);
        if (term.is_zero()) break;
        sum = (k % 2 == 1) ? sum - term : sum + term;
    }
    return sum.rescaled(s);
}

inline BigFloat tan(const BigFloat& x) {
    const int s = x.scale();
    const int w = s + kGuardDigits;
    BigFloat xs = x.rescaled(w);
    BigFloat c = cos(xs);
    if (c.is_zero()) throw std::domain_error("tan at a zero of cos");
    return (sin(xs) / c).rescaled(s);
}

/// x^e for integer e; handles negative bases and exponents exactly in sign.
inline BigFloat pow_int(const BigFloat& x, long long e) {
    const int s = x.scale();
    if (e == 0) return BigFloat::from_integer(BigInt(1), s);
    bool invert = e < 0;
    unsigned long long mag =
        invert ? static_cast<unsigned long long>(-(e + 1)) + 1ull
               : static_cast<unsigned long long>(e);
    int steps = 0;
    for (unsigned long long t = mag; t > 1; t >>= 1u) ++steps;
    const int w = s + kGuardDigits + steps + 5;
    BigFloat acc = x.rescaled(w);
    BigFloat result = BigFloat::from_integer(BigInt(1), w);
    while (mag != 0) {
        if (mag & 1ull) result = result * acc;
        mag >>= 1ull;
        if (mag != 0) acc = acc * acc;
    }
    if (invert) {
        if (result.is_zero()) throw std::domain_error("BigFloat: zero to negative power");
        result = BigFloat::from_integer(BigInt(1), w) / result;
    }
    return result.rescaled(s);
}

/// x^y for real exponent; requires x > 0.
inline BigFloat pow_real(const BigFloat& x, const BigFloat& y) {
    if (x.signum() <= 0)
        throw std::domain_error("pow with non-integer exponent needs positive base");
    const int s = x.scale();
    const int w = s + kGuardDigits;
    BigFloat product = ln(x.rescaled(w)) * y.rescaled(w);
    return exp(product).rescaled(s);
}

}  // namespace hp
}  // namespace algebench

#endif  // ALGEBENCH_BIGFLOAT_HPP
