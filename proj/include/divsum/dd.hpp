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

#ifndef DIVSUM_DD_HPP
#define DIVSUM_DD_HPP

// Double-double arithmetic (Dekker/Shewchuk error-free transformations).
// Used wherever a phase or interval endpoint would lose precision in a
// single double: n*eta mod 1 for n ~ 1e9, beta = -hbar/k - 1/(k^2 eta),
// and the cancellation-prone Bessel power series.

#include <cmath>
#include <cstdint>
#include <limits>

namespace divsum {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
    explicit operator double() const { return to_double(); }
};

namespace dd_detail {

// |a| >= |b| assumed.
inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DD dd_add(DD a, DD b) {
    DD s = dd_detail::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) { return dd_add(a, DD(b)); }

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
    DD p = dd_detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) { return dd_mul(a, DD(b)); }

// Exact product of two doubles as a DD.
inline DD dd_prod(double a, double b) { return dd_detail::two_prod(a, b); }

inline DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    DD q = dd_detail::quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline DD dd_div(double a, double b) { return dd_div(DD(a), DD(b)); }

inline bool dd_less(DD a, DD b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline DD dd_abs(DD a) { return a.hi < 0 || (a.hi == 0 && a.lo < 0) ? dd_neg(a) : a; }

// Fractional part in [0, 1). hi parts below 2^53 keep this exact.
inline DD dd_frac(DD a) {
    double f = std::floor(a.hi);
    DD r = dd_add(DD(a.hi - f), DD(a.lo));  // a.hi - f exact (Sterbenz)
    // lo may push the result across an integer boundary
    double g = std::floor(r.hi + r.lo);
    if (g != 0.0) r = dd_add(r, -g);
    if (r.hi < 0.0) r = dd_add(r, 1.0);
    if (r.hi >= 1.0) r = dd_add(r, -1.0);
    return r;
}

namespace dd_const {
inline constexpr DD two_pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr DD pi{3.141592653589793, 1.2246467991473532e-16};
inline constexpr DD euler_gamma{0.5772156649015329, -4.942915152430645e-18};
inline constexpr DD ln2{0.6931471805599453, 2.3190468138462996e-17};
}  // namespace dd_const

// Natural log of a positive double, ~31 correct digits.
// frexp reduction to m in [sqrt(1/2), sqrt(2)), then 2*atanh((m-1)/(m+1)).
inline DD dd_log(double x) {
    int e = 0;
    double m = std::frexp(x, &e);  // m in [0.5, 1)
    if (m < 0.70710678118654752) {
        m *= 2.0;
        e -= 1;
    }
    DD t = dd_div(dd_add(DD(m), -1.0), dd_add(DD(m), 1.0));
    DD t2 = dd_mul(t, t);
    DD term = t;
    DD sum = t;
    for (int k = 3; k < 60; k += 2) {
        term = dd_mul(term, t2);
        DD add = dd_div(term, DD(double(k)));
        sum = dd_add(sum, add);
        if (std::abs(add.hi) < 1e-34 * std::abs(sum.hi)) break;
    }
    sum = dd_mul(sum, 2.0);
    return dd_add(sum, dd_mul(dd_const::ln2, double(e)));
}

}  // namespace divsum

#endif  // DIVSUM_DD_HPP
