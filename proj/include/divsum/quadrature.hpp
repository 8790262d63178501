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

#ifndef DIVSUM_QUADRATURE_HPP
#define DIVSUM_QUADRATURE_HPP

// Adaptive Gauss(7)-Kronrod(15) quadrature for complex-valued oscillatory
// integrands. Initial panels are sized from a local-frequency hint so that
// each panel covers at most about one oscillation period (>= 15 nodes per
// period); panels are then bisected largest-error-first until the error
// estimate meets tolerance or the evaluation budget runs out. Everything is
// sequential and the final sum is accumulated in panel order, so results are
// bit-reproducible.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <queue>
#include <vector>

namespace divsum {

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    long max_evals = 1000000;
};

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;    // estimated absolute error
    double resabs = 0.0;   // integral of |f|
    long evals = 0;
    bool converged = true;
};

namespace quad_detail {

// QUADPACK dqk15 abscissae and weights.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0, b = 0.0;
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    double resabs = 0.0;
    std::uint64_t id = 0;  // deterministic tie-break in the heap
};

template <class F>
inline void gk15(F&& f, double a, double b, Panel& p) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::complex<double> fc = f(c);
    std::complex<double> resk = kWgk[7] * fc;
    std::complex<double> resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    std::complex<double> fv[7][2];
    for (int i = 0; i < 7; ++i) {
        double dx = h * kXgk[i];
        fv[i][0] = f(c - dx);
        fv[i][1] = f(c + dx);
        std::complex<double> s = fv[i][0] + fv[i][1];
        resk += kWgk[i] * s;
        if (i % 2 == 1) resg += kWg[i / 2] * s;
        resabs += kWgk[i] * (std::abs(fv[i][0]) + std::abs(fv[i][1]));
    }
    std::complex<double> mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i][0] - mean) + std::abs(fv[i][1] - mean));
    resasc *= std::abs(h);

    p.a = a;
    p.b = b;
    p.value = resk * h;
    p.resabs = resabs * std::abs(h);
    double err = std::abs(resk - resg) * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    double round_floor = 50.0 * 2.220446049250313e-16 * p.resabs;
    p.error = std::max(err, round_floor);
}

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.id > y.id;
    }
};

}  // namespace quad_detail

// freq(x) returns the local oscillation rate in cycles per unit length
// (evaluated at panel left edges while walking a -> b).
template <class F, class FreqFn>
QuadResult integrate_oscillatory(F&& f, double a, double b, FreqFn&& freq,
                                 const QuadOptions& opt = {}) {
    QuadResult res;
    if (!(a < b)) return res;

    long evals = 0;
    const long max_initial = std::max(4l, opt.max_evals / 30);
    std::vector<quad_detail::Panel> panels;
    double x = a;
    const double min_width = (b - a) * 1e-12;
    while (x < b) {
        double fr = freq(x);
        double w = fr > 0.0 ? 1.0 / fr : (b - a);
        w = std::min(w, b - a);
        w = std::max(w, min_width);
        double x1 = std::min(b, x + w);
        if ((long)panels.size() >= max_initial) {
            x1 = b;  // budget: finish with one coarse panel, flagged below
            res.converged = false;
        }
        quad_detail::Panel p;
        p.id = panels.size();
        quad_detail::gk15(f, x, x1, p);
        evals += 15;
        panels.push_back(p);
        x = x1;
    }

    double err_sum = 0.0, resabs_sum = 0.0;
    std::complex<double> val_sum{0.0, 0.0};
    for (const auto& p : panels) {
        err_sum += p.error;
        resabs_sum += p.resabs;
        val_sum += p.value;
    }
    std::priority_queue<quad_detail::Panel, std::vector<quad_detail::Panel>,
                        quad_detail::PanelWorse>
        heap(quad_detail::PanelWorse{}, std::move(panels));
    std::uint64_t next_id = heap.size();

    while (true) {
        double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(val_sum));
        target = std::max(target, 100.0 * 2.220446049250313e-16 * resabs_sum);
        if (err_sum <= target) break;
        if (evals + 30 > opt.max_evals || heap.empty()) {
            res.converged = false;
            break;
        }
        quad_detail::Panel worst = heap.top();
        heap.pop();
        err_sum -= worst.error;
        resabs_sum -= worst.resabs;
        val_sum -= worst.value;
        double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {  // width at rounding limit
            err_sum += worst.error;
            resabs_sum += worst.resabs;
            val_sum += worst.value;
            res.converged = false;
            break;
        }
        quad_detail::Panel l, r;
        l.id = next_id++;
        r.id = next_id++;
        quad_detail::gk15(f, worst.a, mid, l);
        quad_detail::gk15(f, mid, worst.b, r);
        evals += 30;
        err_sum += l.error + r.error;
        resabs_sum += l.resabs + r.resabs;
        val_sum += l.value + r.value;
        heap.push(l);
        heap.push(r);
    }

    // Re-accumulate in spatial order for a reproducible, compensated total.
    std::vector<quad_detail::Panel> finals;
    finals.reserve(heap.size());
    while (!heap.empty()) {
        finals.push_back(heap.top());
        heap.pop();
    }
    std::sort(finals.begin(), finals.end(),
              [](const quad_detail::Panel& x, const quad_detail::Panel& y) { return x.a < y.a; });
    double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0, es = 0.0, ra = 0.0;
    for (const auto& p : finals) {
        double yr = p.value.real() - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = p.value.imag() - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
        es += p.error;
        ra += p.resabs;
    }
    res.value = {sr, si};
    res.error = es;
    res.resabs = ra;
    res.evals = evals;
    return res;
}

// Convenience overload for smooth (non-oscillatory beyond `base_freq`)
// integrands.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double base_freq = 0.0,
                              const QuadOptions& opt = {}) {
    return integrate_oscillatory(f, a, b, [base_freq](double) { return base_freq; }, opt);
}

}  // namespace divsum

#endif  // DIVSUM_QUADRATURE_HPP
