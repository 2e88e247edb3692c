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

#include <cstdint>

#include "algebench/bigfloat.hpp"
#include "algebench/bigint.hpp"
#include "algebench/rational.hpp"
#include "algebench/rng.hpp"

using namespace algebench;

TEST_CASE("bigint string round trip") {
    for (const char* s : {"0", "1", "-1", "999999999", "1000000000", "-1000000000",
                          "123456789012345678901234567890",
                          "-999999999999999999999999999999999999"}) {
        CHECK(BigInt::from_string(s).to_string() == s);
    }
    CHECK(BigInt::from_string("+17").to_string() == "17");
    CHECK(BigInt::from_string("0000123").to_string() == "123");
    CHECK(BigInt::from_string("-0").to_string() == "0");
    CHECK_THROWS_AS(BigInt::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_string("12a"), std::invalid_argument);
    CHECK_THROWS_AS(BigInt::from_string("-"), std::invalid_argument);
}

TEST_CASE("bigint arithmetic agrees with int64 on random operands") {
    KeyedRng rng{2024, 1};
    for (int i = 0; i < 4000; ++i) {
        std::int64_t a = rng.uniform_int(-1'000'000'000LL, 1'000'000'000LL);
        std::int64_t b = rng.uniform_int(-1'000'000'000LL, 1'000'000'000LL);
        BigInt A(a), B(b);
        CHECK((A + B).to_int64() == a + b);
        CHECK((A - B).to_int64() == a - b);
        CHECK((A * B).to_int64() == static_cast<std::int64_t>(__int128(a) * b));
        if (b != 0) {
            CHECK((A / B).to_int64() == a / b);
            CHECK((A % B).to_int64() == a % b);
        }
        CHECK((A < B) == (a < b));
    }
}

TEST_CASE("bigint divmod reconstruction on large random operands") {
    KeyedRng rng{7, 7};
    auto random_big = [&rng](int max_digits) {
        std::string s;
        if (rng.coin()) s.push_back('-');
        int len = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(max_digits))) + 1;
        for (int k = 0; k < len; ++k)
            s.push_back(static_cast<char>('0' + rng.uniform(10)));
        return BigInt::from_string(s);
    };
    for (int i = 0; i < 1500; ++i) {
        BigInt a = random_big(60);
        BigInt b = random_big(30);
        if (b.is_zero()) continue;
        auto dr = BigInt::divmod(a, b);
        CHECK(dr.quot * b + dr.rem == a);
        CHECK(dr.rem.abs() < b.abs());
        if (!dr.rem.is_zero()) CHECK(dr.rem.is_negative() == a.is_negative());
    }
}

namespace {

/// Division reference that never divides: binary search on q with
/// multiplication-only probes. Slow but entirely independent of the
/// production long-division code.
BigInt bisect_quotient(const BigInt& a, const BigInt& b) {
    BigInt lo(0);
    BigInt hi(1);
    while (hi * b <= a) hi = hi * BigInt(2);
    // Invariant: lo*b <= a < hi*b.
    while (lo + BigInt(1) < hi) {
        BigInt mid = (lo + hi) / BigInt(2);  // halving only exercises the small path
        if (mid * b <= a)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// Limb patterns that maximize quotient-digit overestimation in Knuth
/// division (top limbs near the base, zeros in the middle).
BigInt adversarial_big(KeyedRng& rng, int limbs) {
    std::string s;
    for (int i = 0; i < limbs; ++i) {
        switch (rng.uniform(4)) {
            case 0: s += "999999999"; break;
            case 1: s += "000000001"; break;
            case 2: s += "000000000"; break;
            default: {
                char buf[16];
                std::snprintf(buf, sizeof(buf), "%09llu",
                              static_cast<unsigned long long>(rng.uniform(1'000'000'000ull)));
                s += buf;
            }
        }
    }
    std::size_t first = s.find_first_not_of('0');
    if (first == std::string::npos) return BigInt(0);
    return BigInt::from_string(s.substr(first));
}

}  // namespace

TEST_CASE("bigint division agrees with a multiplication-only reference") {
    KeyedRng rng{40804, 2};
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        BigInt a = adversarial_big(rng, 2 + static_cast<int>(rng.uniform(6)));
        BigInt b = adversarial_big(rng, 1 + static_cast<int>(rng.uniform(3)));
        if (b.is_zero()) continue;
        BigInt q = a / b;
        CHECK(q == bisect_quotient(a, b));
        CHECK(a % b == a - q * b);
        ++checked;
    }
    CHECK(checked > 300);

    // Hand-picked shapes around quotient-digit boundaries.
    BigInt base_sq = BigInt::from_string("1000000000000000000");  // kBase^2
    for (const auto& [num, den] : std::vector<std::pair<BigInt, BigInt>>{
             {base_sq - BigInt(1), BigInt::from_string("999999999")},
             {base_sq, BigInt::from_string("1000000001")},
             {BigInt::from_string("999999999999999999999999999"),
              BigInt::from_string("999999999000000001")},
             {BigInt::from_string("100000000000000000000000000000000000"),
              BigInt::from_string("999999999999999999")}}) {
        BigInt q = num / den;
        CHECK(q == bisect_quotient(num, den));
        CHECK(q * den + num % den == num);
    }
}

TEST_CASE("bigint pow, gcd, isqrt") {
    CHECK(BigInt::pow(BigInt(2), 10).to_int64() == 1024);
    CHECK(BigInt::pow(BigInt(10), 30).to_string() == "1" + std::string(30, '0'));
    CHECK(BigInt::pow(BigInt(-3), 3).to_int64() == -27);
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)).to_int64() == 6);
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)).to_int64() == 6);
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)).to_int64() == 5);

    KeyedRng rng{13, 1};
    for (int i = 0; i < 500; ++i) {
        std::int64_t v = rng.uniform_int(0, 4'000'000'000LL);
        BigInt root = BigInt::isqrt(BigInt(v));
        CHECK(root * root <= BigInt(v));
        CHECK((root + BigInt(1)) * (root + BigInt(1)) > BigInt(v));
    }
    BigInt big = BigInt::pow(BigInt(123456789), 8);
    CHECK(BigInt::isqrt(big * big) == big);
    CHECK(BigInt::isqrt(big * big + BigInt(1)) == big);
    CHECK(BigInt::isqrt(big * big - BigInt(1)) == big - BigInt(1));
}

TEST_CASE("bigint digit count") {
    CHECK(BigInt(0).digit_count() == 1);
    CHECK(BigInt(9).digit_count() == 1);
    CHECK(BigInt(10).digit_count() == 2);
    CHECK(BigInt(-999999999).digit_count() == 9);
    CHECK(BigInt::from_string("1000000000").digit_count() == 10);
    CHECK(BigInt::pow(BigInt(10), 100).digit_count() == 101);
}

TEST_CASE("rational normalization and arithmetic") {
    Rational r(BigInt(6), BigInt(-8));
    CHECK(r.num().to_int64() == -3);
    CHECK(r.den().to_int64() == 4);
    CHECK((Rational(1) / Rational(3) + Rational(1) / Rational(6)) ==
          Rational(BigInt(1), BigInt(2)));
    CHECK(Rational(BigInt(0), BigInt(7)) == Rational(0));
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
    CHECK_THROWS_AS(Rational(3) / Rational(0), std::domain_error);
    CHECK(Rational::pow(Rational(BigInt(2), BigInt(3)), -2) ==
          Rational(BigInt(9), BigInt(4)));
    CHECK(Rational::pow(Rational(BigInt(-2), BigInt(3)), -1) ==
          Rational(BigInt(-3), BigInt(2)));
    CHECK(Rational::pow(Rational(0), 0) == Rational(1));
    CHECK_THROWS_AS(Rational::pow(Rational(0), -1), std::domain_error);
}

TEST_CASE("rational decimal rendering") {
    CHECK(Rational(35).to_decimal_string() == "35");
    CHECK(Rational(BigInt(7), BigInt(2)).to_decimal_string() == "3.5");
    CHECK(Rational(BigInt(-7), BigInt(2)).to_decimal_string() == "-3.5");
    CHECK(Rational(BigInt(1), BigInt(3)).to_decimal_string(5) == "0.33333");
    CHECK(Rational(BigInt(2), BigInt(3)).to_decimal_string(5) == "0.66667");
    CHECK(Rational(BigInt(1), BigInt(300)).to_decimal_string(5) == "0.0033333");
    CHECK(Rational(BigInt(999999), BigInt(1000)).to_decimal_string(4) == "1000");
}

TEST_CASE("rational parses decimals, scientific notation and fractions") {
    CHECK(Rational::from_string("35") == Rational(35));
    CHECK(Rational::from_string("-35") == Rational(-35));
    CHECK(Rational::from_string("3.5") == Rational(BigInt(7), BigInt(2)));
    CHECK(Rational::from_string("1e3") == Rational(1000));
    CHECK(Rational::from_string("2.5e-2") == Rational(BigInt(1), BigInt(40)));
    CHECK(Rational::from_string("7/2") == Rational(BigInt(7), BigInt(2)));
    CHECK(Rational::from_string("-1/4") == Rational(BigInt(-1), BigInt(4)));
    CHECK(Rational::from_string(".5") == Rational(BigInt(1), BigInt(2)));
    CHECK_THROWS_AS(Rational::from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::from_string("1.2.3"), std::invalid_argument);
}

TEST_CASE("rational string round trip on random values") {
    KeyedRng rng{99, 3};
    for (int i = 0; i < 800; ++i) {
        Rational r(BigInt(rng.uniform_int(-100000, 100000)),
                   BigInt(rng.uniform_int(1, 9999)));
        CHECK(Rational::from_string(r.to_fraction_string()) == r);
    }
}

// --- BigFloat and the high-precision functions -----------------------------

namespace {

/// |a - b| <= 10^-digits, both at the same scale.
bool agree_to(const BigFloat& a, const BigFloat& b, int digits) {
    return (a - b).abs().to_rational() <= Rational(BigInt(1), BigFloat::pow10(digits));
}

}  // namespace

TEST_CASE("bigfloat basics") {
    BigFloat a = BigFloat::from_rational(Rational(BigInt(1), BigInt(3)), 40);
    BigFloat b = BigFloat::from_rational(Rational(BigInt(1), BigInt(6)), 40);
    BigFloat sum = a + b;
    CHECK(sum.to_decimal_string(10) == "0.5");
    CHECK((a * BigFloat::from_integer(BigInt(3), 40)).to_decimal_string(10) == "1");
    CHECK_THROWS_AS(a / BigFloat(BigInt(0), 40), std::domain_error);
}

TEST_CASE("pi, ln2 and e match published digits") {
    // 50 significant digits each.
    CHECK(hp::pi(60).to_decimal_string(50) ==
          "3.1415926535897932384626433832795028841971693993751");
    CHECK(hp::ln2(60).to_decimal_string(50) ==
          "0.69314718055994530941723212145817656807550013436026");
    BigFloat one = BigFloat::from_integer(BigInt(1), 60);
    CHECK(hp::exp(one).to_decimal_string(50) ==
          "2.7182818284590452353602874713526624977572470937");
}

TEST_CASE("transcendental identities hold to 45+ digits at scale 60") {
    const int s = 60;
    KeyedRng rng{11, 5};
    for (int i = 0; i < 25; ++i) {
        std::int64_t k = rng.uniform_int(1, 9);
        BigFloat x = BigFloat::from_integer(BigInt(k), s);
        BigFloat sx = hp::sin(x), cx = hp::cos(x);
        BigFloat one = BigFloat::from_integer(BigInt(1), s);
        CHECK(agree_to(sx * sx + cx * cx, one, 45));
        CHECK(agree_to(hp::ln(hp::exp(x)), x, 45));
        BigFloat sq = hp::sqrt(x);
        CHECK(agree_to(sq * sq, x, 45));
    }
}

TEST_CASE("transcendentals agree with long double at coarse tolerance") {
    const int s = 40;
    for (int k = 1; k <= 9; ++k) {
        BigFloat x = BigFloat::from_integer(BigInt(k), s);
        auto close = [](const BigFloat& got, long double want) {
            double g = std::stod(got.to_decimal_string(18));
            return std::abs(g - static_cast<double>(want)) <=
                   1e-12 * std::max(1.0, std::abs(static_cast<double>(want)));
        };
        CHECK(close(hp::sin(x), sinl(static_cast<long double>(k))));
        CHECK(close(hp::cos(x), cosl(static_cast<long double>(k))));
        CHECK(close(hp::tan(x), tanl(static_cast<long double>(k))));
        CHECK(close(hp::exp(x), expl(static_cast<long double>(k))));
        CHECK(close(hp::ln(x), logl(static_cast<long double>(k))));
        CHECK(close(hp::sqrt(x), sqrtl(static_cast<long double>(k))));
    }
}

TEST_CASE("argument reduction handles large trig arguments") {
    const int s = 60;
    // sin(1000000) via reduction must match long double loosely.
    BigFloat x = BigFloat::from_integer(BigInt(1000000), s);
    double got = std::stod(hp::sin(x).to_decimal_string(18));
    CHECK(std::abs(got - std::sin(1000000.0)) < 1e-9);
}

TEST_CASE("negative and fractional arguments across the function set") {
    const int s = 50;
    auto close = [](const BigFloat& got, double want) {
        return std::abs(std::stod(got.to_decimal_string(18)) - want) <=
               1e-12 * std::max(1.0, std::abs(want));
    };
    for (int k : {-9, -5, -2, -1}) {
        BigFloat x = BigFloat::from_integer(BigInt(k), s);
        CHECK(close(hp::sin(x), std::sin(k)));
        CHECK(close(hp::cos(x), std::cos(k)));
        CHECK(close(hp::exp(x), std::exp(k)));
    }
    for (auto [num, den] : {std::pair<int, int>{1, 3}, {7, 2}, {1, 1000}}) {
        BigFloat x = BigFloat::from_rational(Rational(BigInt(num), BigInt(den)), s);
        double v = static_cast<double>(num) / den;
        CHECK(close(hp::ln(x), std::log(v)));
        CHECK(close(hp::sqrt(x), std::sqrt(v)));
        CHECK(close(hp::exp(x), std::exp(v)));
    }
}

TEST_CASE("ln decimal pre-reduction for very large and very small inputs") {
    const int s = 60;
    BigFloat million = BigFloat::from_integer(BigInt(1000000), s);
    BigFloat six = BigFloat::from_integer(BigInt(6), s);
    BigFloat diff = (hp::ln(million) - six * hp::ln10(s)).abs();
    CHECK(diff.to_rational() <= Rational(BigInt(1), BigFloat::pow10(45)));

    BigFloat micro = BigFloat::from_rational(Rational(BigInt(1), BigInt(1000000)), s);
    BigFloat diff2 = (hp::ln(micro) + six * hp::ln10(s)).abs();
    CHECK(diff2.to_rational() <= Rational(BigInt(1), BigFloat::pow10(45)));

    // ln10 is consistent with exp: exp(ln 10) == 10.
    BigFloat ten = BigFloat::from_integer(BigInt(10), s);
    BigFloat diff3 = (hp::exp(hp::ln10(s)) - ten).abs();
    CHECK(diff3.to_rational() <= Rational(BigInt(1), BigFloat::pow10(45)));
}

TEST_CASE("pow paths") {
    const int s = 50;
    BigFloat two = BigFloat::from_integer(BigInt(2), s);
    CHECK(hp::pow_int(two, 10).to_decimal_string(10) == "1024");
    CHECK(hp::pow_int(two, -2).to_decimal_string(10) == "0.25");
    BigFloat neg3 = BigFloat::from_integer(BigInt(-3), s);
    CHECK(hp::pow_int(neg3, 3).to_decimal_string(10) == "-27");
    // 2^0.5 == sqrt(2)
    BigFloat half = BigFloat::from_rational(Rational(BigInt(1), BigInt(2)), s);
    CHECK(agree_to(hp::pow_real(two, half), hp::sqrt(two), 40));
    CHECK_THROWS_AS(hp::pow_real(neg3, half), std::domain_error);
}

TEST_CASE("precision contract: scale p and 2p agree to 30+ digits") {
    for (int k = 1; k <= 6; ++k) {
        BigFloat lo = BigFloat::from_integer(BigInt(k), 50);
        BigFloat hi = BigFloat::from_integer(BigInt(k), 100);
        for (auto f : {+[](const BigFloat& x) { return hp::sin(x); },
                       +[](const BigFloat& x) { return hp::cos(x); },
                       +[](const BigFloat& x) { return hp::exp(x); },
                       +[](const BigFloat& x) { return hp::ln(x); },
                       +[](const BigFloat& x) { return hp::sqrt(x); }}) {
            BigFloat a = f(lo);
            BigFloat b = f(hi).rescaled(50);
            CHECK((a - b).abs().to_rational() <=
                  Rational(BigInt(1), BigFloat::pow10(40)));
        }
    }
}
