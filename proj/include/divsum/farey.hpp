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

#ifndef DIVSUM_FAREY_HPP
#define DIVSUM_FAREY_HPP

// Farey sequences, Farey approximation of a real number, the dual-frequency
// condition ladder, and Monte-Carlo estimation of the exceptional set.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "divsum/arithmetic.hpp"
#include "divsum/dd.hpp"
#include "divsum/parallel.hpp"
#include "divsum/rng.hpp"

namespace divsum {

// Parameters of the improved functional-equation check. The constants A and
// a are not pinned by the theory; a_candidates are trial exponents whose
// fits the sweep machinery reports.
struct AFEParams {
    double c = 1.0;
    double epsilon = 0.05;
    double epsilon_prime = 0.05;
    double big_a = 1.0;
    std::vector<double> a_candidates = {0.05, 0.1, 0.2};
    double d_exp = 0.01;   // smoothing exponent
    int j_order = 3;       // smoothing order
    double c3 = 50.0;      // tail cutoff constant
};

struct LadderRow {
    int j = 0;
    double delta_j = 0.0;
    long long order = 1;        // floor(Delta_j^{1/2-eps'})
    FareyFraction approx;       // h_j / k_j for beta mod 1
    double eta_j = 0.0;         // beta - h_j/k_j
    bool dist_ok = false;       // |beta - h_j/k_j| >= c Delta_j^{eps-1}
    bool denom_ok = false;      // k_j >= c Delta_j^{5/6} F^{-1/3}
    bool verdict = false;
};

struct ConditionReport {
    double beta = 0.0;          // -hbar/k - 1/(k^2 eta), reduced mod 1
    std::vector<LadderRow> ladder;
    int ell = 0;
    bool passed = false;
    bool degenerate = false;    // Delta_1 < 1: ladder vacuous
    bool hypothesis_ok = true;  // k^2 eta^2 M >= c (log M)^A
    double f_value = 0.0;       // k^2 eta^2 M
};

// All reduced fractions in [0,1] with denominator <= q, ascending.
inline std::vector<FareyFraction> farey_sequence(long long q) {
    if (q < 1) throw std::invalid_argument("farey_sequence: Q must be >= 1");
    if (q > 100000)
        throw std::invalid_argument(
            "farey_sequence: Q > 1e5 would enumerate ~3/pi^2 Q^2 fractions; "
            "use farey_approx for large orders");
    std::vector<FareyFraction> seq;
    long long a = 0, b = 1, c = 1, d = q;
    seq.push_back({0, 1});
    while (c <= q) {
        long long step = (q + b) / d;
        long long a2 = step * c - a;
        long long b2 = step * d - b;
        seq.push_back({c, d});
        a = c; b = d; c = a2; d = b2;
    }
    return seq;
}

// Farey approximation of order q: the fraction h/k, k <= q, nearest to
// alpha among those with |alpha - h/k| <= 1/(k q). Found by a Stern-Brocot
// descent with continued-fraction step batching; never enumerates the
// sequence. alpha outside [0,1] is reduced mod 1 (notice_reduced).
struct FareyApproxResult {
    AlphaSplit split;
    bool notice_reduced = false;
};

inline FareyApproxResult farey_approx(double alpha, long long q) {
    if (q < 1) throw std::invalid_argument("farey_approx: Q must be >= 1");
    if (!std::isfinite(alpha)) throw std::invalid_argument("farey_approx: alpha not finite");
    FareyApproxResult out;
    double a_in = alpha;
    alpha -= std::floor(alpha);
    out.notice_reduced = (a_in < 0.0 || a_in > 1.0);

    // left neighbor a/b <= alpha, right neighbor c/d >= alpha in the order-q
    // sequence; batched mediant steps keep this O(log q).
    long long a = 0, b = 1, c = 1, d = 1;
    while (b + d <= q) {
        double med_num = double(a + c);
        double med_den = double(b + d);
        if (alpha * med_den == med_num) {
            // alpha is exactly the mediant
            a = a + c; b = b + d;
            c = a; d = b;
            break;
        }
        if (alpha * med_den < med_num) {
            // walk the right endpoint toward alpha: c/d -> (c + t a)/(d + t b)
            double t_alpha = (double(c) - alpha * double(d)) / (alpha * double(b) - double(a));
            long long t_cap = (q - d) / b;
            long long t = t_cap;
            if (std::isfinite(t_alpha) && t_alpha >= 0.0 && t_alpha < double(t_cap))
                t = (long long)t_alpha;
            if (t < 1) t = 1;
            c += t * a; d += t * b;
        } else {
            double t_alpha = (alpha * double(b) - double(a)) / (double(c) - alpha * double(d));
            long long t_cap = (q - b) / d;
            long long t = t_cap;
            if (std::isfinite(t_alpha) && t_alpha >= 0.0 && t_alpha < double(t_cap))
                t = (long long)t_alpha;
            if (t < 1) t = 1;
            a += t * c; b += t * d;
        }
    }

    // distances via dd so ties and admissibility are decided exactly
    DD da = dd_sub(DD(alpha), dd_div(double(a), double(b)));   // >= 0
    DD dc = dd_sub(dd_div(double(c), double(d)), DD(alpha));   // >= 0
    bool adm_a = !dd_less(dd_div(1.0, double(b) * double(q)), da);
    bool adm_c = !dd_less(dd_div(1.0, double(d) * double(q)), dc);
    long long h, k;
    if (adm_a && adm_c) {
        if (dd_less(da, dc)) { h = a; k = b; }
        else if (dd_less(dc, da)) { h = c; k = d; }
        else { h = b <= d ? a : c; k = b <= d ? b : d; }  // tie: smaller denominator
    } else if (adm_a) {
        h = a; k = b;
    } else {
        h = c; k = d;
    }
    AlphaSplit s;
    s.frac = {h, k};
    s.eta = dd_sub(DD(alpha), dd_div(double(h), double(k))).to_double();
    s.order = q;
    s.h_bar = k == 1 ? 0 : mod_inverse(h, k);
    out.split = s;
    return out;
}

// beta = -hbar/k - 1/(k^2 eta) in double-double, reduced mod 1.
inline DD beta_of(const AlphaSplit& split) {
    if (split.eta == 0.0) throw std::invalid_argument("beta_of: eta must be nonzero");
    double k = double(split.frac.k);
    DD beta = dd_neg(dd_add(dd_div(double(split.h_bar), k),
                            dd_div(DD(1.0), dd_mul(dd_prod(k, k), split.eta))));
    return dd_frac(beta);
}

// The condition ladder: Delta_j = k^2 |eta|^{3/2} M^{1/2} F^eps 2^{-j} for
// j = 1..ell, ell the first j with Delta_j <= c^{-1} (k^2 |eta|^3 M)^{2/5}.
// Each row takes the Farey approximation of beta of order Delta_j^{1/2-eps'}
// and records whether the distance or the denominator disjunct holds.
inline ConditionReport beta_ladder(const AlphaSplit& split, long long m,
                                   const AFEParams& params) {
    if (split.eta == 0.0) throw std::invalid_argument("beta_ladder: eta must be nonzero");
    double k = double(split.frac.k);
    double abs_eta = std::abs(split.eta);
    double f = k * k * split.eta * split.eta * double(m);
    if (!(f > 0.0)) throw std::invalid_argument("beta_ladder: k^2 eta^2 M must be positive");

    ConditionReport rep;
    rep.f_value = f;
    DD beta_dd = beta_of(split);
    rep.beta = beta_dd.to_double();
    rep.hypothesis_ok =
        f >= params.c * std::pow(std::log(double(m)), params.big_a);

    double delta_1 = k * k * std::pow(abs_eta, 1.5) * std::sqrt(double(m)) *
                     std::pow(f, params.epsilon) * 0.5;
    if (delta_1 < 1.0) {
        rep.degenerate = true;
        rep.passed = true;  // vacuously
        rep.ell = 0;
        return rep;
    }
    double threshold = std::pow(k * k * abs_eta * abs_eta * abs_eta * double(m), 0.4) / params.c;

    bool all_ok = true;
    double delta_j = delta_1;
    int j = 1;
    for (;; ++j, delta_j *= 0.5) {
        LadderRow row;
        row.j = j;
        row.delta_j = delta_j;
        double qf = std::pow(delta_j, 0.5 - params.epsilon_prime);
        row.order = qf < 1.0 ? 1 : (long long)qf;
        FareyApproxResult fa = farey_approx(rep.beta, row.order);
        row.approx = fa.split.frac;
        DD dist = dd_abs(dd_sub(beta_dd, dd_div(double(row.approx.h), double(row.approx.k))));
        row.eta_j = dd_sub(beta_dd, dd_div(double(row.approx.h), double(row.approx.k))).to_double();
        row.dist_ok = !dd_less(dist, DD(params.c * std::pow(delta_j, params.epsilon - 1.0)));
        row.denom_ok = double(row.approx.k) >=
                       params.c * std::pow(delta_j, 5.0 / 6.0) * std::pow(f, -1.0 / 3.0);
        row.verdict = row.dist_ok || row.denom_ok;
        all_ok = all_ok && row.verdict;
        rep.ladder.push_back(row);
        if (delta_j <= threshold) break;
        if (j > 200) throw std::runtime_error("beta_ladder: ladder failed to terminate");
    }
    rep.ell = j;
    rep.passed = all_ok;
    return rep;
}

// Monte-Carlo estimate of the measure of alpha in [0,1] whose order-
// sqrt(Delta) Farey approximation lands in the bad corner
// |eta| <= 1/Delta and k <= Delta^{5/6} M^{-1/3}.
struct MeasureEstimate {
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long long failures = 0;
    long long samples = 0;
};

inline MeasureEstimate exceptional_measure(long long m, double delta,
                                           long long sample_count,
                                           std::uint64_t seed, int threads = 1) {
    if (sample_count < 1000)
        throw std::invalid_argument("exceptional_measure: need at least 10^3 samples");
    double qf = std::sqrt(delta);
    long long q = qf < 1.0 ? 1 : (long long)qf;
    double k_max = std::pow(delta, 5.0 / 6.0) * std::pow(double(m), -1.0 / 3.0);
    double eta_max = 1.0 / delta;

    constexpr long long kBlock = 4096;
    std::size_t blocks = std::size_t((sample_count + kBlock - 1) / kBlock);
    auto counts = parallel_map<long long>(blocks, threads, [&](std::size_t bi) {
        long long lo = (long long)bi * kBlock;
        long long hi = std::min(sample_count, lo + kBlock);
        long long c = 0;
        for (long long i = lo; i < hi; ++i) {
            double alpha = counter_rng_unit(seed, std::uint64_t(i));
            FareyApproxResult fa = farey_approx(alpha, q);
            if (double(fa.split.frac.k) <= k_max && std::abs(fa.split.eta) <= eta_max) ++c;
        }
        return c;
    });
    long long fail = 0;
    for (long long c : counts) fail += c;

    MeasureEstimate est;
    est.failures = fail;
    est.samples = sample_count;
    est.estimate = double(fail) / double(sample_count);
    double sigma = std::sqrt(std::max(est.estimate * (1.0 - est.estimate), 1e-300) /
                             double(sample_count));
    est.ci_low = std::max(0.0, est.estimate - 1.96 * sigma);
    est.ci_high = std::min(1.0, est.estimate + 1.96 * sigma);
    return est;
}

}  // namespace divsum

#endif  // DIVSUM_FAREY_HPP
