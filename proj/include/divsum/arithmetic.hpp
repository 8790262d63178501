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

#ifndef DIVSUM_ARITHMETIC_HPP
#define DIVSUM_ARITHMETIC_HPP

// Exact integer/rational plumbing for exponential sums: divisor sieving,
// modular inverses, and precision-safe evaluation of e(alpha*n).
//
// e(n*(h/k + eta)) is evaluated as e((n*h mod k)/k) * e(frac(n*eta)): the
// rational part in exact integer arithmetic, the offset part with an exact
// two_prod split. A naive e(n*alpha) at n*alpha ~ 1e16 has no correct bits
// left; this path keeps the phase angle good to well under 1e-12.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "divsum/dd.hpp"

namespace divsum {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Domain types

// Reduced fraction h/k, gcd(h,k)=1, k >= 1. Represents a point of [0,1]
// when 0 <= h <= k.
struct FareyFraction {
    long long h = 0;
    long long k = 1;

    double value() const { return double(h) / double(k); }
};

inline FareyFraction make_farey_fraction(long long h, long long k) {
    if (k <= 0) throw std::invalid_argument("FareyFraction: k must be positive");
    long long g = std::gcd(h < 0 ? -h : h, k);
    if (g == 0) g = 1;
    return {h / g, k / g};
}

inline long long mod_inverse(long long h, long long k);

// alpha = h/k + eta with |eta| <= 1/(k*order); h_bar is the inverse of h mod k.
struct AlphaSplit {
    FareyFraction frac;
    double eta = 0.0;
    long long order = 1;
    long long h_bar = 0;

    double alpha() const { return frac.value() + eta; }

    // Split representing -alpha mod 1 (h -> k-h, eta -> -eta).
    AlphaSplit negated() const {
        AlphaSplit s;
        s.frac = {frac.k - (frac.h % frac.k + frac.k) % frac.k, frac.k};
        if (s.frac.h == s.frac.k) s.frac.h = 0;
        s.eta = -eta;
        s.order = order;
        s.h_bar = s.frac.k == 1 ? 0 : mod_inverse(s.frac.h, s.frac.k);
        return s;
    }
};

// order = 0 picks the largest order consistent with |eta| <= 1/(k*order).
inline AlphaSplit make_alpha_split(long long h, long long k, double eta,
                                   long long order = 0) {
    AlphaSplit s;
    s.frac = make_farey_fraction((h % k + k) % k, k);
    s.eta = eta;
    if (order > 0) {
        s.order = order;
    } else {
        double q = eta == 0.0 ? double(s.frac.k)
                              : 1.0 / (double(s.frac.k) * std::abs(eta));
        s.order = q < 1.0 ? 1 : (q > 9e18 ? (long long)9e18 : (long long)q);
    }
    s.h_bar = s.frac.k == 1 ? 0 : mod_inverse(s.frac.h, s.frac.k);
    return s;
}

// d(n) for n in [start, start + values.size()).
struct DivisorTable {
    long long start = 1;
    std::vector<std::uint32_t> values;

    long long end() const { return start + (long long)values.size() - 1; }
    std::uint32_t at(long long n) const { return values[std::size_t(n - start)]; }
};

// ---------------------------------------------------------------------------
// Operations

inline long long mod_inverse(long long h, long long k) {
    if (k <= 0) throw std::invalid_argument("mod_inverse: k must be positive");
    if (k == 1) return 0;
    long long a = (h % k + k) % k;
    long long r0 = k, r1 = a;
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        long long t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1)
        throw std::invalid_argument("mod_inverse: " + std::to_string(h) + " not invertible mod " +
                                    std::to_string(k));
    return (t0 % k + k) % k;
}

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)a * b % m);
}

// e(x) = exp(2 pi i x), argument reduced mod 1 first.
inline cplx e_phase(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("e_phase: non-finite argument");
    double r = std::remainder(x, 1.0);  // r in [-1/2, 1/2]
    double t = 6.283185307179586476925286766559 * r;
    return {std::cos(t), std::sin(t)};
}

// e(t) for t already reduced; skips the remainder.
inline cplx unit_phase(double t) {
    double u = 6.283185307179586476925286766559 * t;
    return {std::cos(u), std::sin(u)};
}

// e(n * (h/k + eta)) for integer n >= 1.
inline cplx term_phase(long long n, const AlphaSplit& split) {
    if (n < 1) throw std::invalid_argument("term_phase: n must be >= 1");
    if (n > (1ll << 53)) throw std::invalid_argument("term_phase: n exceeds exact double range");
    long long k = split.frac.k;
    long long hn = (long long)mul_mod_u64(std::uint64_t(n % k), std::uint64_t(split.frac.h), std::uint64_t(k));
    DD t = dd_frac(dd_prod(double(n), split.eta));
    double frac_part = t.hi + (double(hn) / double(k) + t.lo);
    frac_part -= std::floor(frac_part);
    return unit_phase(frac_part);
}

// Phase of e(n * x) with x given in double-double (used for the dual sum,
// where beta = -hbar/k - 1/(k^2 eta) needs the extra precision).
inline cplx term_phase_dd(long long n, DD x) {
    DD t = dd_frac(dd_mul(x, double(n)));
    return unit_phase(t.to_double());
}

namespace sieve_detail {

inline std::vector<std::uint32_t> primes_upto(std::uint64_t n) {
    std::vector<std::uint32_t> primes;
    if (n < 2) return primes;
    std::vector<bool> comp(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!comp[i]) {
            primes.push_back(std::uint32_t(i));
            for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return primes;
}

}  // namespace sieve_detail

// Exact divisor counts on [m1, m2]. Segmented: factors out primes up to
// sqrt(m2) per segment, so m1 can start anywhere.
inline DivisorTable divisor_sieve(long long m1, long long m2) {
    if (m1 < 1 || m2 < m1)
        throw std::invalid_argument("divisor_sieve: need 1 <= M1 <= M2");
    if (m2 - m1 + 1 > (1ll << 27))
        throw std::invalid_argument("divisor_sieve: range of " + std::to_string(m2 - m1 + 1) +
                                    " values exceeds the memory budget (2^27)");

    std::uint64_t root = (std::uint64_t)std::sqrt(double(m2));
    while (root * root > std::uint64_t(m2)) --root;
    while ((root + 1) * (root + 1) <= std::uint64_t(m2)) ++root;
    auto primes = sieve_detail::primes_upto(root);

    DivisorTable table;
    table.start = m1;
    table.values.assign(std::size_t(m2 - m1 + 1), 1);

    constexpr long long kSegment = 1 << 20;
    std::vector<std::uint64_t> rem(std::size_t(std::min(kSegment, m2 - m1 + 1)));
    for (long long lo = m1; lo <= m2; lo += kSegment) {
        long long hi = std::min(m2, lo + kSegment - 1);
        std::size_t len = std::size_t(hi - lo + 1);
        for (std::size_t i = 0; i < len; ++i) rem[i] = std::uint64_t(lo + (long long)i);
        for (std::uint32_t p : primes) {
            std::uint64_t p64 = p;
            if (p64 * p64 > std::uint64_t(hi)) break;
            long long first = ((lo + p64 - 1) / p64) * p64;
            for (long long n = first; n <= hi; n += p64) {
                std::size_t i = std::size_t(n - lo);
                std::uint32_t e = 0;
                while (rem[i] % p64 == 0) {
                    rem[i] /= p64;
                    ++e;
                }
                table.values[std::size_t(n - m1)] *= (e + 1);
            }
        }
        for (std::size_t i = 0; i < len; ++i)
            if (rem[i] > 1) table.values[std::size_t(lo + (long long)i - m1)] *= 2;
    }
    return table;
}

}  // namespace divsum

#endif  // DIVSUM_ARITHMETIC_HPP
