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

#ifndef DIVSUM_BESSEL_HPP
#define DIVSUM_BESSEL_HPP

// Y0 and K0 to ~1e-13 absolute for z <= 1e3.
//
// Small z: ascending power series. The alternating J0/Y0 sums and the
// (log I0 - series) cancellation in K0 lose up to 15 digits near the
// crossover, so the series are accumulated in double-double.
// Large z: Hankel-type asymptotic series summed to optimal truncation,
// which at the crossovers below leaves errors ~e^{-2z} (Y0) and ~e^{-2z}
// relative (K0), far below the budget.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "divsum/dd.hpp"

namespace divsum {

// Crossovers between power series and asymptotic expansion.
inline constexpr double kBesselY0SeriesCut = 17.0;
inline constexpr double kBesselK0SeriesCut = 15.0;

namespace bessel_detail {

// J0 and the Y0 harmonic-sum companion series, both in double-double:
//   J0(z)  = sum (-1)^m q^m / (m!)^2,          q = z^2/4
//   S(z)   = sum_{m>=1} (-1)^{m+1} H_m q^m / (m!)^2
struct Y0Series {
    double j0;
    double companion;
};

inline Y0Series y0_series_parts(double z) {
    DD q = dd_mul(dd_prod(z, z), 0.25);
    DD term(1.0);   // q^m / (m!)^2
    DD j0(1.0);
    DD comp(0.0);
    DD harmonic(0.0);
    double sign = -1.0;
    for (int m = 1; m < 200; ++m) {
        term = dd_div(dd_mul(term, q), DD(double(m) * double(m)));
        harmonic = dd_add(harmonic, dd_div(DD(1.0), DD(double(m))));
        j0 = dd_add(j0, dd_mul(term, sign));
        comp = dd_add(comp, dd_mul(dd_mul(term, harmonic), -sign));
        if (term.hi < 1e-40 * (std::abs(j0.hi) + 1.0)) break;
        sign = -sign;
    }
    return {j0.to_double(), comp.to_double()};
}

// Hankel coefficients c_m = prod_{j<=m} (2j-1)^2 / (m! 8^m), via
// c_m = c_{m-1} (2m-1)^2 / (8m). P = 1 - c2/z^2 + c4/z^4 - ...,
// Q = c1/z - c3/z^3 + ...; series summed to the smallest term.
struct HankelPQ {
    double p;
    double q;
};

inline HankelPQ hankel_pq(double z) {
    double p = 1.0, q = 0.0;
    double c = 1.0;
    double zpow = 1.0;
    double prev = 1e300;
    for (int m = 1; m < 80; ++m) {
        double tm = 2.0 * m - 1.0;
        c *= tm * tm / (8.0 * m);
        zpow /= z;
        double term = c * zpow;
        if (term >= prev) break;  // optimal truncation of the divergent tail
        prev = term;
        int r = m % 4;
        if (r == 1) q += term;
        else if (r == 2) p -= term;
        else if (r == 3) q -= term;
        else p += term;
        if (term < 1e-18) break;
    }
    return {p, q};
}

// theta = z - pi/4 reduced mod 2pi; dd reduction keeps the phase error
// ~1e-28*z instead of the ~4e-17*z a double remainder would leave.
inline double reduced_theta(double z) {
    static const DD inv_two_pi = dd_div(DD(1.0), dd_const::two_pi);
    DD turns = dd_frac(dd_mul(inv_two_pi, z));
    DD t = dd_add(turns, -0.125);
    return 6.283185307179586476925286766559 * t.to_double();
}

}  // namespace bessel_detail

inline double bessel_Y0(double z) {
    if (!(z > 0.0)) throw std::invalid_argument("bessel_Y0: z must be positive");
    if (z <= kBesselY0SeriesCut) {
        auto s = bessel_detail::y0_series_parts(z);
        DD lg = dd_add(dd_log(0.5 * z), dd_const::euler_gamma);
        double two_over_pi = 0.63661977236758134308;
        return two_over_pi * (lg.to_double() * s.j0 + s.companion);
    }
    auto pq = bessel_detail::hankel_pq(z);
    double theta = bessel_detail::reduced_theta(z);
    double amp = std::sqrt(0.63661977236758134308 / z);
    return amp * (pq.p * std::sin(theta) - pq.q * std::cos(theta));
}

inline double bessel_K0(double z) {
    if (!(z > 0.0)) throw std::invalid_argument("bessel_K0: z must be positive");
    if (z <= kBesselK0SeriesCut) {
        // K0 = -(log(z/2)+gamma) I0(z) + sum H_m q^m/(m!)^2, all in dd
        DD q = dd_mul(dd_prod(z, z), 0.25);
        DD term(1.0);
        DD i0(1.0);
        DD comp(0.0);
        DD harmonic(0.0);
        for (int m = 1; m < 200; ++m) {
            term = dd_div(dd_mul(term, q), DD(double(m) * double(m)));
            harmonic = dd_add(harmonic, dd_div(DD(1.0), DD(double(m))));
            i0 = dd_add(i0, term);
            comp = dd_add(comp, dd_mul(term, harmonic));
            if (term.hi < 1e-40 * i0.hi) break;
        }
        DD lg = dd_add(dd_log(0.5 * z), dd_const::euler_gamma);
        return dd_sub(comp, dd_mul(lg, i0)).to_double();
    }
    if (z > 740.0) return 0.0;  // below double underflow after e^{-z}
    double c = 1.0, zpow = 1.0, sum = 1.0, prev = 1e300;
    for (int m = 1; m < 80; ++m) {
        double tm = 2.0 * m - 1.0;
        c *= tm * tm / (8.0 * m);
        zpow /= -z;
        double term = c * zpow;
        if (std::abs(term) >= prev) break;
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return std::sqrt(1.5707963267948966192 / z) * std::exp(-z) * sum;
}

// Two-term large-z expansion of Y0 decomposed into the e^{+i(z-pi/4)} and
// e^{-i(z-pi/4)} coefficients:
//   Y0(z) ~ c+ e^{i theta} + c- e^{-i theta},  theta = z - pi/4,
//   c+ = (-i/sqrt(2 pi z)) (1 - i/(8z)),  c- = conj(c+).
// The neglected remainder is ~ sqrt(2/pi) (9/128) z^{-5/2}.
struct Y0Asymptotic {
    std::complex<double> plus_coeff;
    std::complex<double> minus_coeff;
    double error_scale;  // magnitude of the first dropped term

    double value(double z) const {
        double theta = bessel_detail::reduced_theta(z);
        std::complex<double> ph{std::cos(theta), std::sin(theta)};
        return (plus_coeff * ph + minus_coeff * std::conj(ph)).real();
    }
};

inline Y0Asymptotic y0_asymptotic(double z, bool include_second_order = true) {
    if (!(z >= 1.0)) throw std::invalid_argument("y0_asymptotic: z must be >= 1");
    double a = 1.0 / std::sqrt(6.283185307179586476925286766559 * z);
    std::complex<double> c_plus{0.0, -a};
    if (include_second_order) {
        c_plus *= std::complex<double>{1.0, -1.0 / (8.0 * z)};
    }
    Y0Asymptotic out;
    out.plus_coeff = c_plus;
    out.minus_coeff = std::conj(c_plus);
    out.error_scale = include_second_order
                          ? std::sqrt(0.63661977236758134308) * (9.0 / 128.0) * std::pow(z, -2.5)
                          : std::sqrt(0.63661977236758134308) * 0.125 * std::pow(z, -1.5);
    return out;
}

}  // namespace divsum

#endif  // DIVSUM_BESSEL_HPP
