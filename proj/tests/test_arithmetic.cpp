// Copyright 2026 The divsum Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "divsum/arithmetic.hpp"
#include "divsum/rng.hpp"

using namespace divsum;

namespace {

// trial-division oracle
std::uint32_t divisors_brute(long long n) {
    std::uint32_t c = 0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d == 0) c += (d * d == n) ? 1 : 2;
    }
    return c;
}

}  // namespace

TEST_CASE("divisor_sieve basic values") {
    CHECK(divisor_sieve(1, 1).at(1) == 1);
    CHECK(divisor_sieve(6, 6).at(6) == 4);
    auto t = divisor_sieve(1, 100);
    long long total = 0;
    long long expect = 0;
    for (long long n = 1; n <= 100; ++n) {
        total += t.at(n);
        expect += divisors_brute(n);
    }
    CHECK(total == expect);
}

TEST_CASE("divisor_sieve matches trial division up to 1e4") {
    auto t = divisor_sieve(1, 10000);
    for (long long n = 1; n <= 10000; ++n) {
        REQUIRE(t.at(n) == divisors_brute(n));
    }
}

TEST_CASE("divisor_sieve segmented window at large start") {
    auto t = divisor_sieve(999983, 1000100);
    for (long long n : {999983ll, 1000000ll, 1000100ll}) {
        CHECK(t.at(n) == divisors_brute(n));
    }
}

TEST_CASE("divisor_sieve rejects bad ranges") {
    CHECK_THROWS_AS(divisor_sieve(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(divisor_sieve(10, 5), std::invalid_argument);
    CHECK_THROWS_AS(divisor_sieve(1, (1ll << 27) + 2), std::invalid_argument);
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(1, 2) == 1);
    CHECK(mod_inverse(3, 7) == 5);  // exhaustive: 3*5=15=2*7+1
    CHECK(mod_inverse(10, 1) == 0);
    CHECK_THROWS_AS(mod_inverse(2, 4), std::invalid_argument);

    for (int i = 0; i < 10000; ++i) {
        long long k = 2 + (long long)counter_rng_below(7, i * 2, 99999);
        long long h = 1 + (long long)counter_rng_below(7, i * 2 + 1, (std::uint64_t)k - 1);
        if (std::gcd(h, k) != 1) continue;
        long long hb = mod_inverse(h, k);
        REQUIRE(hb >= 0);
        REQUIRE(hb < k);
        REQUIRE((__int128)h * hb % k == 1);
    }
}

TEST_CASE("e_phase basics") {
    CHECK(std::abs(e_phase(0.0) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(e_phase(0.5) - cplx{-1.0, 0.0}) < 1e-15);
    double s = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(e_phase(0.125) - cplx{s, s}) < 1e-15);
    CHECK(std::abs(e_phase(12345678.125) - cplx{s, s}) < 1e-12);
    CHECK_THROWS_AS(e_phase(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(e_phase(INFINITY), std::invalid_argument);
}

TEST_CASE("term_phase trivial cases") {
    auto s0 = make_alpha_split(0, 1, 0.0);
    CHECK(std::abs(term_phase(123456, s0) - cplx{1.0, 0.0}) < 1e-14);
    auto s1 = make_alpha_split(3, 7, 0.0);
    CHECK(std::abs(term_phase(7, s1) - cplx{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(term_phase(14, s1) - cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("term_phase against high-precision oracle") {
    // n = 1e6, alpha = 1/3 + 1e-7; reference computed with 50-digit arithmetic
    auto s = make_alpha_split(1, 3, 1e-7);
    cplx v = term_phase(1000000, s);
    CHECK(std::abs(v.real() - (-9.13545457642600866599e-01)) < 1e-13);
    CHECK(std::abs(v.imag() - (4.06736643075800208269e-01)) < 1e-13);
}

TEST_CASE("term_phase unit modulus and conjugation under negation") {
    auto split = make_alpha_split(5, 17, 3.5e-5);
    auto negated = split.negated();
    for (int i = 0; i < 2000; ++i) {
        long long n = 1 + (long long)counter_rng_below(11, i, 1000000000ull);
        cplx a = term_phase(n, split);
        REQUIRE(std::abs(std::abs(a) - 1.0) < 1e-14);
        cplx b = term_phase(n, negated);
        REQUIRE(std::abs(b - std::conj(a)) < 1e-11);
    }
}

TEST_CASE("alpha split reconstruction") {
    auto s = make_alpha_split(3, 10, 2e-4);
    CHECK(s.frac.h == 3);
    CHECK(s.frac.k == 10);
    CHECK(s.h_bar == 7);
    CHECK(std::abs(s.alpha() - (0.3 + 2e-4)) < 1e-15);
    CHECK(std::abs(s.eta) <= 1.0 / (double(s.frac.k) * double(s.order)) * (1.0 + 1e-12));
}

TEST_CASE("dd log agrees with std log") {
    for (double x : {0.3, 1.0, 2.0, 8.5, 1234.5, 1e8}) {
        CHECK(std::abs(dd_log(x).to_double() - std::log(x)) < 4e-16 * (1.0 + std::abs(std::log(x))));
    }
}
