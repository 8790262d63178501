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

#ifndef DIVSUM_EXPSUM_HPP
#define DIVSUM_EXPSUM_HPP

// Exponential sums D(M1,M2;alpha) = sum d(n) e(alpha n), their smoothed
// variants, the logarithmic main-term integral, and the Parseval check.
//
// Summation discipline: fixed 2^16-term chunks, Neumaier-compensated within
// a chunk, chunk partials combined in index order. Chunks may be computed on
// any number of threads; the result is bit-identical either way.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "divsum/arithmetic.hpp"
#include "divsum/parallel.hpp"
#include "divsum/quadrature.hpp"
#include "divsum/weight.hpp"

namespace divsum {

// One exponential-sum job.
struct SumSpec {
    long long m1 = 1;
    long long m2 = 1;
    AlphaSplit split;
    std::optional<WeightFunction> weight;
};

// Smoothing scales for the Voronoi/saddle machinery:
//   U = sqrt(M) |eta|^{-1/2} (k^2 eta^2 M)^d,  M_-1 = M - J U,
//   M_2ext = M + Delta + J U, V defaults to U.
struct SmoothingSpec {
    double u = 0.0;
    int j_order = 0;
    double v = 0.0;
    double m_minus1 = 0.0;
    double m_2ext = 0.0;
    double m = 0.0;
    double delta = 0.0;
    bool u_ratio_ok = true;  // U <= 2 M^{7/8} (k^2 eta^2 M)^d

    double plateau_lo() const { return m_minus1 + j_order * v; }
    double plateau_hi() const { return m_2ext - j_order * v; }
};

inline SmoothingSpec make_smoothing(double m, double delta, long long k, double eta,
                                    double d_exp, int j_order, double v = 0.0) {
    if (!(m > 0.0) || !(delta > 0.0)) throw std::invalid_argument("make_smoothing: need M, Delta > 0");
    if (eta == 0.0) throw std::invalid_argument("make_smoothing: eta must be nonzero");
    double f = double(k) * double(k) * eta * eta * m;
    SmoothingSpec s;
    s.u = std::sqrt(m) / std::sqrt(std::abs(eta)) * std::pow(f, d_exp);
    s.j_order = j_order;
    s.v = v > 0.0 ? v : s.u;
    s.m = m;
    s.delta = delta;
    s.m_minus1 = m - double(j_order) * s.u;
    s.m_2ext = m + delta + double(j_order) * s.u;
    if (!(s.m_minus1 > 0.0))
        throw std::invalid_argument("make_smoothing: M - J*U must stay positive");
    s.u_ratio_ok = s.u <= 2.0 * std::pow(m, 0.875) * std::pow(f, d_exp);
    return s;
}

inline WeightFunction eta_weight(const SmoothingSpec& s) {
    return build_eta_J(s.m, s.delta, s.u, s.j_order);
}

namespace expsum_detail {

inline constexpr long long kChunk = 1 << 16;

struct Accum {
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;

    void add(double re, double im) {
        double t = sr + re;
        cr += std::abs(sr) >= std::abs(re) ? (sr - t) + re : (re - t) + sr;
        sr = t;
        t = si + im;
        ci += std::abs(si) >= std::abs(im) ? (si - t) + im : (im - t) + si;
        si = t;
    }
    cplx total() const { return {sr + cr, si + ci}; }
};

// Phase walker: e(n*(h/k + eta)) with the integer part tracked mod k and the
// offset part in double-double, both advanced incrementally.
struct PhaseWalker {
    long long k, h, r;
    double inv_k;
    DD frac_eta;
    DD eta;

    PhaseWalker(long long n0, const AlphaSplit& s)
        : k(s.frac.k),
          h(s.frac.h % s.frac.k),
          r((long long)mul_mod_u64(std::uint64_t(n0 % s.frac.k), std::uint64_t(h),
                                   std::uint64_t(s.frac.k))),
          inv_k(1.0 / double(s.frac.k)),
          frac_eta(dd_frac(dd_prod(double(n0), s.eta))),
          eta(s.eta) {}

    cplx phase() const {
        double t = frac_eta.hi + (double(r) * inv_k + frac_eta.lo);
        t -= std::floor(t);
        return unit_phase(t);
    }

    void advance() {
        r += h;
        if (r >= k) r -= k;
        frac_eta = dd_frac(dd_add(frac_eta, eta));
    }
};

template <class TermFn>
cplx chunked_sum(long long n_lo, long long n_hi, const AlphaSplit& split,
                 const DivisorTable& table, int threads, TermFn&& weight_of) {
    if (n_lo > n_hi) return {0.0, 0.0};
    long long count = n_hi - n_lo + 1;
    std::size_t chunks = std::size_t((count + kChunk - 1) / kChunk);
    auto partials = parallel_map<cplx>(chunks, threads, [&](std::size_t ci) {
        long long a = n_lo + (long long)ci * kChunk;
        long long b = std::min(n_hi, a + kChunk - 1);
        Accum acc;
        PhaseWalker pw(a, split);
        for (long long n = a; n <= b; ++n) {
            double w = weight_of(n);
            if (w != 0.0) {
                cplx ph = pw.phase();
                double d = double(table.at(n)) * w;
                acc.add(d * ph.real(), d * ph.imag());
            }
            pw.advance();
        }
        return acc.total();
    });
    Accum total;
    for (const cplx& p : partials) total.add(p.real(), p.imag());
    return total.total();
}

}  // namespace expsum_detail

// D(M1,M2;alpha): plain divisor exponential sum over [m1, m2].
// Pass a prebuilt table covering the range to amortize sieving over sweeps.
inline cplx raw_sum(const SumSpec& spec, const DivisorTable* table = nullptr,
                    int threads = 1) {
    if (spec.m1 > spec.m2) return {0.0, 0.0};
    DivisorTable local;
    if (table == nullptr) {
        local = divisor_sieve(spec.m1, spec.m2);
        table = &local;
    }
    if (table->start > spec.m1 || table->end() < spec.m2)
        throw std::invalid_argument("raw_sum: divisor table does not cover the range");
    return expsum_detail::chunked_sum(spec.m1, spec.m2, spec.split, *table, threads,
                                      [](long long) { return 1.0; });
}

// Smoothed sum over support(w) intersected with the integers.
inline cplx smoothed_sum(const SumSpec& spec, const DivisorTable* table = nullptr,
                         int threads = 1) {
    if (!spec.weight)
        throw std::invalid_argument("smoothed_sum: spec has no weight function");
    const WeightFunction& w = *spec.weight;
    long long n_lo = (long long)std::ceil(w.lo);
    long long n_hi = (long long)std::floor(w.hi);
    if (n_lo < 1) n_lo = 1;
    if (n_lo > n_hi) return {0.0, 0.0};
    DivisorTable local;
    if (table == nullptr) {
        local = divisor_sieve(n_lo, n_hi);
        table = &local;
    }
    if (table->start > n_lo || table->end() < n_hi)
        throw std::invalid_argument("smoothed_sum: divisor table does not cover the support");
    return expsum_detail::chunked_sum(n_lo, n_hi, spec.split, *table, threads,
                                      [&w](long long n) { return w(double(n)); });
}

// k^{-1} int (log x + 2 gamma - 2 log k) e(eta x) w(x) dx over the support.
inline QuadResult main_term_integral(long long k, double eta, const WeightFunction& w,
                                     const QuadOptions& opt = {}) {
    if (!(w.lo > 0.0))
        throw std::invalid_argument("main_term_integral: support must be positive");
    constexpr double kTwoGamma = 2.0 * 0.57721566490153286061;
    double log_k = std::log(double(k));
    double abs_eta = std::abs(eta);
    auto f = [&](double x) {
        return (std::log(x) + kTwoGamma - 2.0 * log_k) * w(x) * e_phase(eta * x);
    };
    QuadResult r = integrate_adaptive(f, w.lo, w.hi, abs_eta, opt);
    r.value /= double(k);
    r.error /= double(k);
    return r;
}

// Both sides of int_0^1 |sum_{n<=M} d(n) e(n alpha)|^2 d alpha = sum d(n)^2,
// the integral evaluated on a uniform grid of N = 2M+1 points (exact for a
// trigonometric polynomial of degree < N).
struct MeanSquareResult {
    double integral = 0.0;
    double coefficient_sum = 0.0;
};

inline MeanSquareResult mean_square(long long m, int threads = 1) {
    if (m < 1 || m > 10000)
        throw std::invalid_argument("mean_square: M must be in [1, 10^4] (quadratic cost)");
    DivisorTable table = divisor_sieve(1, m);
    long long grid = 2 * m + 1;
    std::vector<cplx> roots(static_cast<std::size_t>(grid));
    for (long long r = 0; r < grid; ++r)
        roots[std::size_t(r)] = unit_phase(double(r) / double(grid));
    auto partial = parallel_map<double>(std::size_t(grid), threads, [&](std::size_t j) {
        expsum_detail::Accum acc;
        for (long long n = 1; n <= m; ++n) {
            const cplx& ph = roots[std::size_t((std::uint64_t(n) * j) % std::uint64_t(grid))];
            double d = double(table.at(n));
            acc.add(d * ph.real(), d * ph.imag());
        }
        return std::norm(acc.total());
    });
    expsum_detail::Accum integral;
    for (double p : partial) integral.add(p / double(grid), 0.0);
    double coeff = 0.0;
    for (long long n = 1; n <= m; ++n) {
        double d = double(table.at(n));
        coeff += d * d;
    }
    return {integral.total().real(), coeff};
}

}  // namespace divsum

#endif  // DIVSUM_EXPSUM_HPP
