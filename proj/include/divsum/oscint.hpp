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

#ifndef DIVSUM_OSCINT_HPP
#define DIVSUM_OSCINT_HPP

// Oscillatory integrals int g(x) e(f(x) + iota x) dx with f(x) = B sqrt(x):
// a reference quadrature, the saddle-point main term
//   xi_J(x0) g(x0) f''(x0)^{-1/2} e(f(x0) + iota x0 + 1/8),
// and the partial-integration decay bound probe.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>

#include "divsum/arithmetic.hpp"
#include "divsum/expsum.hpp"
#include "divsum/quadrature.hpp"
#include "divsum/weight.hpp"

namespace divsum {

// Total phase f(x) + iota*x, f(x) = B sqrt(x). f'' has one sign on any
// positive interval: negative for B > 0, positive for B < 0.
struct PhaseSpec {
    double linear = 0.0;      // iota
    double sqrt_coeff = 0.0;  // B
    double f_scale = 0.0;     // F = |B| sqrt(M_ref)

    double f(double x) const { return sqrt_coeff * std::sqrt(x); }
    double total(double x) const { return sqrt_coeff * std::sqrt(x) + linear * x; }
    double fprime(double x) const { return 0.5 * sqrt_coeff / std::sqrt(x); }
    double phase_rate(double x) const { return fprime(x) + linear; }
    double fsecond(double x) const { return -0.25 * sqrt_coeff / (x * std::sqrt(x)); }
};

inline PhaseSpec make_phase(double iota, double sqrt_coeff, double m_ref) {
    PhaseSpec p;
    p.linear = iota;
    p.sqrt_coeff = sqrt_coeff;
    p.f_scale = std::abs(sqrt_coeff) * std::sqrt(m_ref);
    return p;
}

// Amplitude with the scale metadata the decay/saddle bounds need:
// |g^(nu)| <= A0 A1^{-nu} for nu <= P, |g| <= G, analytic within rho.
struct AmplitudeSpec {
    std::function<cplx(double)> g;
    double bound_g = 0.0;  // G
    double a0 = 0.0;
    double a1 = 0.0;
    double rho = 0.0;
    int p_order = 0;
};

struct SaddleLocation {
    std::optional<double> x0;
    bool edge_saddle = false;
};

struct SaddleResult {
    std::optional<double> x0;
    bool edge_saddle = false;
    double xi = 0.0;
    cplx main_term{0.0, 0.0};
    double error_first = 0.0;
    double error_edge = 0.0;
    std::optional<cplx> quadrature_reference;
    bool reference_converged = true;
};

struct JmProbe {
    double measured = 0.0;
    double bound = 0.0;
    double b1 = 0.0;
    bool quad_converged = true;
};

// Reference oracle: int_a^b g(x) e(f(x)+iota x) dx.
inline QuadResult osc_quadrature(const AmplitudeSpec& g, const PhaseSpec& phase,
                                 double a, double b, const QuadOptions& opt = {}) {
    if (!(a < b)) throw std::invalid_argument("osc_quadrature: need a < b");
    if (!std::isfinite(phase.total(a)) || !std::isfinite(phase.total(b)))
        throw std::invalid_argument("osc_quadrature: phase not finite on [a,b]");
    auto f = [&](double x) { return g.g(x) * e_phase(phase.total(x)); };
    auto freq = [&](double x) { return std::abs(phase.phase_rate(x)); };
    return integrate_oscillatory(f, a, b, freq, opt);
}

// Root of f'(x) + iota on [a,b]; f' is monotone for sqrt phases, so the
// closed form x = (B/(2 iota))^2 applies whenever there is a sign change.
inline SaddleLocation saddle_locate(const PhaseSpec& phase, double a, double b) {
    if (!(0.0 < a && a < b)) throw std::invalid_argument("saddle_locate: need 0 < a < b");
    SaddleLocation loc;
    double ra = phase.phase_rate(a);
    double rb = phase.phase_rate(b);
    double edge_tol = 1e-6 * (b - a);
    if (ra == 0.0 || rb == 0.0) {
        loc.x0 = ra == 0.0 ? a : b;
        loc.edge_saddle = true;
        return loc;
    }
    if ((ra > 0.0) == (rb > 0.0)) return loc;  // no sign change: no saddle
    double r = 0.5 * phase.sqrt_coeff / phase.linear;
    double x = r * r;
    // one Newton step guards against rounding in the closed form
    double fp = phase.phase_rate(x);
    double fs = phase.fsecond(x);
    if (fs != 0.0) {
        double step = fp / fs;
        if (std::isfinite(step) && std::abs(step) < 0.5 * (b - a)) x -= step;
    }
    x = std::min(std::max(x, a), b);
    loc.x0 = x;
    loc.edge_saddle = (x - a <= edge_tol) || (b - x <= edge_tol);
    return loc;
}

// Saddle-point evaluation of int eta_J(x) g(x) e(f(x)+iota x) dx over
// [M_-1, M_2ext]. Requires F >= 10. For f'' < 0 (B > 0) the conjugated
// integral is evaluated and the result conjugated back, which flips the
// phase constant to -1/8.
inline SaddleResult saddle_eval(const AmplitudeSpec& g, const PhaseSpec& phase,
                                const SmoothingSpec& smoothing,
                                bool compute_reference = false,
                                const QuadOptions& ref_opt = {}) {
    if (!(phase.f_scale >= 10.0))
        throw std::invalid_argument("saddle_eval: F must be >= 10 for a meaningful scale");
    const double a = smoothing.m_minus1;
    const double b = smoothing.m_2ext;
    const double v = smoothing.v;
    const int j = smoothing.j_order;
    if (!(a > 0.0 && b > a)) throw std::invalid_argument("saddle_eval: bad interval");

    const bool conjugated = phase.sqrt_coeff > 0.0;  // normalize to f'' > 0
    PhaseSpec ph = phase;
    if (conjugated) {
        ph.linear = -phase.linear;
        ph.sqrt_coeff = -phase.sqrt_coeff;
    }

    SaddleResult res;
    SaddleLocation loc = saddle_locate(ph, a, b);
    res.x0 = loc.x0;
    res.edge_saddle = loc.edge_saddle;

    const double f_scale = ph.f_scale;
    const double g_bound = g.bound_g;
    const double rate_floor = std::sqrt(f_scale) / a;

    double delta_x0 = 0.0;
    if (loc.x0) {
        double x0 = *loc.x0;
        double jv = double(j) * v;
        if (x0 > a + jv && x0 < b - jv) {
            res.xi = 1.0;
        } else if (x0 <= a + jv) {
            res.xi = jv > 0.0 ? (x0 - a) / jv : 0.0;
            delta_x0 = 1.0;
        } else {
            res.xi = jv > 0.0 ? (b - x0) / jv : 0.0;
            delta_x0 = 1.0;
        }
        double fsec = ph.fsecond(x0);
        cplx ge = g.g(x0);
        if (conjugated) ge = std::conj(ge);
        cplx main = res.xi * ge / std::sqrt(fsec) *
                    e_phase(ph.total(x0) + 0.125);
        res.main_term = conjugated ? std::conj(main) : main;
    }

    res.error_first = (1.0 + delta_x0 * std::sqrt(f_scale)) * g_bound * a /
                      (f_scale * std::sqrt(f_scale));

    // edge-zone term, widened by 2 to absorb the freedom left in xi_J
    double esum = 0.0;
    for (int i = 0; i <= j; ++i) {
        for (double x : {a + double(i) * v, b - double(i) * v}) {
            double rate = std::abs(ph.phase_rate(x)) + rate_floor;
            esum += g_bound / std::pow(rate, double(j + 1));
        }
    }
    res.error_edge = 2.0 * std::pow(v, -double(j)) * esum;

    if (compute_reference) {
        WeightFunction w = eta_weight(smoothing);
        AmplitudeSpec gw = g;
        auto base = g.g;
        gw.g = [base, w](double x) { return base(x) * w(x); };
        QuadResult q = osc_quadrature(gw, phase, a, b, ref_opt);
        res.quadrature_reference = q.value;
        res.reference_converged = q.converged;
    }
    return res;
}

// Measured |integral| against the partial-integration bound
// A0 (A1 B1)^{-P} (1 + A1/rho)^P (b-a), with B1 = min |f' + iota|.
inline JmProbe jm_decay_probe(const AmplitudeSpec& g, const PhaseSpec& phase,
                              double a, double b, int p_order,
                              std::optional<double> b1_in = std::nullopt,
                              const QuadOptions& opt = {}) {
    double ra = phase.phase_rate(a);
    double rb = phase.phase_rate(b);
    if (ra == 0.0 || rb == 0.0 || (ra > 0.0) != (rb > 0.0))
        throw std::invalid_argument("jm_decay_probe: B1 not bounded away from zero (saddle inside)");
    JmProbe probe;
    probe.b1 = b1_in ? *b1_in : std::min(std::abs(ra), std::abs(rb));
    QuadResult q = osc_quadrature(g, phase, a, b, opt);
    probe.measured = std::abs(q.value);
    probe.quad_converged = q.converged;
    probe.bound = g.a0 * std::pow(g.a1 * probe.b1, -double(p_order)) *
                  std::pow(1.0 + g.a1 / g.rho, double(p_order)) * (b - a);
    return probe;
}

}  // namespace divsum

#endif  // DIVSUM_OSCINT_HPP
