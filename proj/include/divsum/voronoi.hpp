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

#ifndef DIVSUM_VORONOI_HPP
#define DIVSUM_VORONOI_HPP

// Truncated Voronoi-type expansion of the smoothed divisor sum:
//   sum d(n) e(alpha n) w(n)
//     = k^{-1} int (log x + 2 gamma - 2 log k) w(x) e(eta x) dx
//     + k^{-1} sum_n d(n) int [ -2 pi e(-n hbar/k) Y0(4 pi sqrt(nx)/k)
//                               + 4 e(n hbar/k) K0(4 pi sqrt(nx)/k) ]
//                             w(x) e(eta x) dx.
// Term integrals run on the shared oscillatory engine with panels sized to
// the local phase rate sqrt(n)/(k sqrt(x)) + |eta|.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "divsum/arithmetic.hpp"
#include "divsum/bessel.hpp"
#include "divsum/expsum.hpp"
#include "divsum/parallel.hpp"
#include "divsum/quadrature.hpp"

namespace divsum {

struct VoronoiTermRecord {
    long long n = 0;
    std::uint32_t d = 0;
    cplx y_term{0.0, 0.0};
    cplx k_term{0.0, 0.0};
    bool quad_ok = true;
};

struct VoronoiExpansion {
    cplx main_integral{0.0, 0.0};
    cplx y_sum{0.0, 0.0};
    cplx k_sum{0.0, 0.0};
    double tail_estimate = 0.0;
    long long n_trunc = 0;
    long flagged_terms = 0;
    std::vector<VoronoiTermRecord> terms;  // filled when record_terms is set

    cplx total() const { return main_integral + y_sum + k_sum; }
};

struct VoronoiOptions {
    double rel_tol = 1e-9;
    double term_abs_tol = 1e-9;  // absolute tolerance per term integral
    long max_evals_per_term = 400000;
    bool record_terms = false;
    int threads = 1;
};

// Default truncation: well past the c3 k^2 eta^2 M point where the tail is
// provably negligible for smooth weights.
inline long long default_n_trunc(const AlphaSplit& split, double m, double c3 = 50.0) {
    double f = double(split.frac.k) * double(split.frac.k) * split.eta * split.eta * m;
    return (long long)std::ceil(c3 * f) + 100;
}

namespace voronoi_detail {

struct TermOut {
    cplx y{0.0, 0.0};
    cplx k{0.0, 0.0};
    bool ok = true;
};

inline TermOut one_term(long long n, std::uint32_t d, const AlphaSplit& split,
                        const WeightFunction& w, const VoronoiOptions& opt) {
    const double kk = double(split.frac.k);
    const double eta = split.eta;
    const double sqrt_n = std::sqrt(double(n));
    const double abs_eta = std::abs(eta);
    constexpr double kFourPi = 12.566370614359172954;
    QuadOptions qopt;
    qopt.rel_tol = opt.rel_tol;
    qopt.abs_tol = opt.term_abs_tol;
    qopt.max_evals = opt.max_evals_per_term;

    TermOut out;
    auto freq = [&](double x) { return sqrt_n / (kk * std::sqrt(x)) + abs_eta; };

    auto fy = [&](double x) {
        return bessel_Y0(kFourPi * std::sqrt(double(n) * x) / kk) * w(x) * e_phase(eta * x);
    };
    QuadResult qy = integrate_oscillatory(fy, w.lo, w.hi, freq, qopt);
    long long rn = (long long)mul_mod_u64(std::uint64_t(n % split.frac.k),
                                          std::uint64_t(split.h_bar),
                                          std::uint64_t(split.frac.k));
    cplx e_minus = std::conj(unit_phase(double(rn) / kk));  // e(-n hbar / k)
    out.y = -6.283185307179586476925286766559 * e_minus * qy.value / kk;
    out.ok = qy.converged;

    // K0(4 pi sqrt(n lo)/k) underflows to 0 beyond z ~ 740
    if (kFourPi * std::sqrt(double(n) * w.lo) / kk <= 740.0) {
        auto fk = [&](double x) {
            return bessel_K0(kFourPi * std::sqrt(double(n) * x) / kk) * w(x) * e_phase(eta * x);
        };
        QuadResult qk = integrate_oscillatory(fk, w.lo, w.hi, freq, qopt);
        out.k = 4.0 * std::conj(e_minus) * qk.value / kk;
        out.ok = out.ok && qk.converged;
    }
    return out;
}

}  // namespace voronoi_detail

inline VoronoiExpansion voronoi_rhs(const SumSpec& spec, const SmoothingSpec& smoothing,
                                    long long n_trunc, const VoronoiOptions& opt = {}) {
    if (n_trunc < 1) throw std::invalid_argument("voronoi_rhs: N_trunc must be >= 1");
    // a spec without an explicit weight gets the eta_J weight of the smoothing
    const WeightFunction w = spec.weight ? *spec.weight : eta_weight(smoothing);

    VoronoiExpansion exp;
    exp.n_trunc = n_trunc;
    QuadOptions main_opt;
    main_opt.rel_tol = opt.rel_tol;
    main_opt.abs_tol = opt.term_abs_tol;
    exp.main_integral = main_term_integral(spec.split.frac.k, spec.split.eta, w, main_opt).value;

    DivisorTable dual = divisor_sieve(1, n_trunc);
    auto outs = parallel_map<voronoi_detail::TermOut>(
        std::size_t(n_trunc), opt.threads, [&](std::size_t i) {
            long long n = (long long)i + 1;
            return voronoi_detail::one_term(n, dual.at(n), spec.split, w, opt);
        });

    expsum_detail::Accum ay, ak;
    std::vector<double> magnitudes(outs.size());
    for (std::size_t i = 0; i < outs.size(); ++i) {
        const auto& t = outs[i];
        ay.add(t.y.real(), t.y.imag());
        ak.add(t.k.real(), t.k.imag());
        magnitudes[i] = std::abs(t.y) + std::abs(t.k);
        if (!t.ok) ++exp.flagged_terms;
        if (opt.record_terms)
            exp.terms.push_back({(long long)i + 1, dual.at((long long)i + 1), t.y, t.k, t.ok});
    }
    exp.y_sum = ay.total();
    exp.k_sum = ak.total();

    // geometric continuation of the octave sums of |term|
    double s_last = 0.0, s_prev = 0.0;
    for (std::size_t i = 0; i < outs.size(); ++i) {
        long long n = (long long)i + 1;
        if (2 * n > n_trunc) s_last += magnitudes[i];
        else if (4 * n > n_trunc) s_prev += magnitudes[i];
    }
    double rho = s_prev > 0.0 ? std::min(s_last / s_prev, 0.95) : 0.0;
    exp.tail_estimate = s_last * rho / (1.0 - rho);
    return exp;
}

// Partial sum of |Y-term| over the window n in [c3 F, 4 c3 F] past the
// saddle range; small values confirm the truncation point is safe.
inline double tail_probe(const SumSpec& spec, const SmoothingSpec& smoothing,
                         double c3, const VoronoiOptions& opt = {}) {
    if (!(c3 >= 2.0)) throw std::invalid_argument("tail_probe: c3 must be >= 2");
    if (!spec.weight) throw std::invalid_argument("tail_probe: spec has no weight");
    const WeightFunction& w = *spec.weight;
    double f = double(spec.split.frac.k) * double(spec.split.frac.k) * spec.split.eta *
               spec.split.eta * smoothing.m;
    long long n_lo = (long long)std::ceil(c3 * f);
    long long n_hi = (long long)std::floor(4.0 * c3 * f);
    if (n_lo < 1) n_lo = 1;
    if (n_hi < n_lo) n_hi = n_lo;
    DivisorTable dual = divisor_sieve(n_lo, n_hi);
    auto mags = parallel_map<double>(std::size_t(n_hi - n_lo + 1), opt.threads,
                                     [&](std::size_t i) {
                                         long long n = n_lo + (long long)i;
                                         auto t = voronoi_detail::one_term(
                                             n, dual.at(n), spec.split, w, opt);
                                         return std::abs(t.y);
                                     });
    double s = 0.0;
    for (double v : mags) s += v;
    return s;
}

}  // namespace divsum

#endif  // DIVSUM_VORONOI_HPP
