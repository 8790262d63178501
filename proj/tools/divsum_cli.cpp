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

// divsum command line: exponential sums, Farey approximation, functional-
// equation reports, Voronoi expansions, saddle-point checks, exceptional-set
// measure, sweeps, and the Parseval check. One JSON object or CSV table on
// stdout; diagnostics on stderr. Exit 0 on success, 1 on validation errors,
// 2 when a numeric budget was exhausted.
//
// Reals are serialized with 17 significant digits so identical runs are
// byte-identical and round-trip exactly.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divsum/divsum.hpp"

using json = nlohmann::ordered_json;
using namespace divsum;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// json with fixed-width decimal serialization for doubles
void put(json& j, const std::string& key, double v) { j[key] = fmt17(v); }
void put(json& j, const std::string& key, cplx v) {
    put(j, key + "_re", v.real());
    put(j, key + "_im", v.imag());
}

void emit(const json& j, const std::string& output) {
    if (output == "csv") {
        std::string header, row;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                header += ",";
                row += ",";
            }
            first = false;
            header += it.key();
            if (it->is_string()) row += it->get<std::string>();
            else row += it->dump();
        }
        std::cout << header << "\n" << row << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

int default_threads() {
    const char* env = std::getenv("DIVSUM_THREADS");
    if (env != nullptr) {
        int v = std::atoi(env);
        if (v >= 0) return v == 0 ? resolve_threads(0) : v;
    }
    return 1;
}

struct SweepRow {
    AFEReport rep;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divisor-function exponential sums and the approximate functional equation"};
    app.require_subcommand(1);
    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads (0 = auto)")->capture_default_str();
    std::string output = "json";
    app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // --- sum ---
    auto* c_sum = app.add_subcommand("sum", "D(M1,M2;alpha) = sum d(n) e(alpha n)");
    long long s_m1 = 1, s_m2 = 100, s_h = 0, s_k = 1;
    double s_eta = 0.0;
    std::optional<double> s_alpha;
    long long s_order = 0;
    c_sum->add_option("--m1", s_m1)->required();
    c_sum->add_option("--m2", s_m2)->required();
    c_sum->add_option("--h", s_h, "numerator of the rational part");
    c_sum->add_option("--k", s_k, "denominator of the rational part");
    c_sum->add_option("--eta", s_eta, "offset from h/k");
    c_sum->add_option("--alpha", s_alpha, "real alpha; Farey-split at --order instead of --h/--k/--eta");
    c_sum->add_option("--order", s_order, "Farey order for --alpha");

    // --- farey ---
    auto* c_farey = app.add_subcommand("farey", "Farey approximation of alpha");
    double f_alpha = 0.0;
    long long f_order = 1;
    c_farey->add_option("--alpha", f_alpha)->required();
    c_farey->add_option("--order", f_order)->required();

    // --- afe ---
    auto* c_afe = app.add_subcommand("afe", "approximate functional equation report");
    long long a_m1 = 0, a_m2 = 0, a_h = 1, a_k = 1;
    double a_eta = 0.0;
    bool a_sharp = false;
    long long a_m = 10000;
    AFEParams a_params;
    c_afe->add_option("--m1", a_m1);
    c_afe->add_option("--m2", a_m2);
    c_afe->add_option("--h", a_h);
    c_afe->add_option("--k", a_k);
    c_afe->add_option("--eta", a_eta);
    c_afe->add_flag("--sharpness", a_sharp, "use the square-M sharpness configuration");
    c_afe->add_option("--m", a_m, "M for --sharpness (must be a perfect square)");
    c_afe->add_option("--c", a_params.c);
    c_afe->add_option("--eps", a_params.epsilon);
    c_afe->add_option("--epsp", a_params.epsilon_prime);
    c_afe->add_option("--big-a", a_params.big_a);

    // --- voronoi ---
    auto* c_vor = app.add_subcommand("voronoi", "truncated Voronoi expansion vs smoothed sum");
    long long v_m = 10000, v_k = 1, v_h = 0, v_ntrunc = 0;
    double v_delta = 500.0, v_eta = 0.03, v_d = 0.01, v_c3 = 50.0;
    int v_j = 3;
    std::string v_dump;
    bool v_with_lhs = true;
    c_vor->add_option("--m", v_m)->required();
    c_vor->add_option("--delta", v_delta)->required();
    c_vor->add_option("--k", v_k);
    c_vor->add_option("--h", v_h);
    c_vor->add_option("--eta", v_eta)->required();
    c_vor->add_option("--j", v_j, "smoothing order J");
    c_vor->add_option("--d", v_d, "smoothing exponent d");
    c_vor->add_option("--ntrunc", v_ntrunc, "truncation (default ceil(50 F) + 100)");
    c_vor->add_option("--c3", v_c3, "tail cutoff constant for the default truncation");
    c_vor->add_option("--dump-terms", v_dump, "write per-term CSV to a path, or - for stdout");
    c_vor->add_flag("--with-lhs,!--no-lhs", v_with_lhs, "also evaluate the smoothed sum directly");

    // --- saddle ---
    auto* c_sad = app.add_subcommand("saddle", "saddle-point main term vs quadrature");
    long long sd_k = 1;
    double sd_m = 100000.0, sd_delta = 3000.0, sd_eta = 0.02, sd_n = 0.0, sd_d = 0.01;
    int sd_j = 4;
    c_sad->add_option("--m", sd_m)->required();
    c_sad->add_option("--delta", sd_delta)->required();
    c_sad->add_option("--k", sd_k);
    c_sad->add_option("--eta", sd_eta)->required();
    c_sad->add_option("--n", sd_n, "dual index n (default: saddle centered in the plateau)");
    c_sad->add_option("--j", sd_j);
    c_sad->add_option("--d", sd_d);

    // --- measure ---
    auto* c_meas = app.add_subcommand("measure", "exceptional-set measure estimate");
    long long me_m = 1000000, me_samples = 100000;
    double me_delta = 0.0, me_delta_exp = 0.625;
    std::uint64_t me_seed = 12345;
    c_meas->add_option("--m", me_m)->required();
    c_meas->add_option("--delta", me_delta, "window length Delta (overrides --delta-exp)");
    c_meas->add_option("--delta-exp", me_delta_exp, "Delta = M^p");
    c_meas->add_option("--samples", me_samples);
    c_meas->add_option("--seed", me_seed);

    // --- sweep ---
    auto* c_sweep = app.add_subcommand("sweep", "AFE reports over an F-grid (CSV)");
    long long sw_m = 1000000, sw_count = 50, sw_kmax = 8;
    double sw_fmin = 10.0, sw_fmax = 10000.0;
    std::uint64_t sw_seed = 12345;
    c_sweep->add_option("--m", sw_m);
    c_sweep->add_option("--count", sw_count);
    c_sweep->add_option("--f-min", sw_fmin);
    c_sweep->add_option("--f-max", sw_fmax);
    c_sweep->add_option("--kmax", sw_kmax);
    c_sweep->add_option("--seed", sw_seed);

    // --- meansq ---
    auto* c_msq = app.add_subcommand("meansq", "Parseval check: mean square vs sum d(n)^2");
    long long q_m = 64;
    c_msq->add_option("--m", q_m)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    int exit_code = 0;
    try {
        if (*c_sum) {
            AlphaSplit split;
            bool reduced = false;
            if (s_alpha) {
                if (s_order < 1) throw std::invalid_argument("--alpha requires --order >= 1");
                auto fa = farey_approx(*s_alpha, s_order);
                split = fa.split;
                reduced = fa.notice_reduced;
            } else {
                split = make_alpha_split(s_h, s_k, s_eta);
            }
            SumSpec spec{s_m1, s_m2, split, std::nullopt};
            cplx v = raw_sum(spec, nullptr, threads);
            json j;
            j["command"] = "sum";
            j["m1"] = s_m1;
            j["m2"] = s_m2;
            j["h"] = split.frac.h;
            j["k"] = split.frac.k;
            put(j, "eta", split.eta);
            put(j, "value", v);
            put(j, "abs", std::abs(v));
            if (reduced) j["alpha_reduced"] = true;
            emit(j, output);
        } else if (*c_farey) {
            auto fa = farey_approx(f_alpha, f_order);
            json j;
            j["command"] = "farey";
            j["h"] = fa.split.frac.h;
            j["k"] = fa.split.frac.k;
            put(j, "eta", fa.split.eta);
            j["order"] = fa.split.order;
            j["h_bar"] = fa.split.h_bar;
            j["alpha_reduced"] = fa.notice_reduced;
            emit(j, output);
        } else if (*c_afe) {
            if (a_sharp) {
                long long root = (long long)std::llround(std::sqrt(double(a_m)));
                if (root * root != a_m)
                    throw std::invalid_argument("--sharpness needs a perfect-square --m");
                a_m1 = a_m;
                a_m2 = a_m + root / 2;
                a_h = 1;
                a_k = root;
                a_eta = 1.0 / double(a_m);
            }
            if (a_m1 <= 0 || a_m2 <= a_m1)
                throw std::invalid_argument("afe: need 0 < m1 < m2 (or --sharpness)");
            AFEReport rep = afe_check(a_m1, a_m2, a_h, a_k, a_eta, a_params, nullptr, threads);
            json j;
            j["command"] = "afe";
            j["m1"] = rep.m1;
            j["m2"] = rep.m2;
            j["h"] = rep.h;
            j["k"] = rep.k;
            put(j, "eta", rep.eta);
            put(j, "f", rep.f_value);
            put(j, "lhs", rep.lhs);
            put(j, "rhs", rep.rhs);
            put(j, "err", rep.err);
            put(j, "norm_classic", rep.norm_classic);
            for (std::size_t i = 0; i < rep.norm_improved.size(); ++i)
                put(j, "norm_a" + fmt17(a_params.a_candidates[i]).substr(2), rep.norm_improved[i]);
            j["hyp_k_ok"] = rep.hyp_k_ok;
            j["hyp_eta_ok"] = rep.hyp_eta_ok;
            j["rhs_empty"] = rep.rhs_empty;
            j["ladder_passed"] = rep.conditions.passed;
            j["ladder_ell"] = rep.conditions.ell;
            j["ladder_degenerate"] = rep.conditions.degenerate;
            put(j, "beta", rep.conditions.beta);
            emit(j, output);
        } else if (*c_vor) {
            AlphaSplit split = make_alpha_split(v_h, v_k, v_eta);
            SmoothingSpec sm = make_smoothing(double(v_m), v_delta, v_k, v_eta, v_d, v_j);
            SumSpec spec{v_m, v_m + (long long)v_delta, split, eta_weight(sm)};
            long long ntr = v_ntrunc > 0 ? v_ntrunc : default_n_trunc(split, double(v_m), v_c3);
            VoronoiOptions vopt;
            vopt.threads = threads;
            vopt.record_terms = !v_dump.empty();
            VoronoiExpansion ex = voronoi_rhs(spec, sm, ntr, vopt);
            json j;
            j["command"] = "voronoi";
            j["m"] = v_m;
            put(j, "delta", v_delta);
            j["k"] = v_k;
            j["h"] = split.frac.h;
            put(j, "eta", v_eta);
            j["j_order"] = v_j;
            j["n_trunc"] = ntr;
            put(j, "main", ex.main_integral);
            put(j, "y_sum", ex.y_sum);
            put(j, "k_sum", ex.k_sum);
            put(j, "total", ex.total());
            put(j, "tail_estimate", ex.tail_estimate);
            j["flagged_terms"] = ex.flagged_terms;
            if (v_with_lhs) {
                cplx lhs = smoothed_sum(spec, nullptr, threads);
                put(j, "lhs", lhs);
                put(j, "rel_error", std::abs(lhs - ex.total()) / std::abs(lhs));
            }
            emit(j, output);
            if (!v_dump.empty()) {
                std::ofstream file;
                std::ostream* os = &std::cout;
                if (v_dump != "-") {
                    file.open(v_dump);
                    if (!file) throw std::invalid_argument("cannot open " + v_dump);
                    os = &file;
                }
                *os << "n,d,y_re,y_im,k_re,k_im,quad_ok\n";
                for (const auto& t : ex.terms) {
                    *os << t.n << "," << t.d << "," << fmt17(t.y_term.real()) << ","
                        << fmt17(t.y_term.imag()) << "," << fmt17(t.k_term.real()) << ","
                        << fmt17(t.k_term.imag()) << "," << (t.quad_ok ? 1 : 0) << "\n";
                }
            }
            if (ex.flagged_terms > 0) exit_code = 2;
        } else if (*c_sad) {
            double n = sd_n;
            if (n <= 0.0)
                n = double(sd_k) * double(sd_k) * sd_eta * sd_eta * (sd_m + 0.5 * sd_delta);
            SmoothingSpec sm = make_smoothing(sd_m, sd_delta, sd_k, sd_eta, sd_d, sd_j);
            PhaseSpec phase = make_phase(sd_eta, -2.0 * std::sqrt(n) / double(sd_k), sm.m_minus1);
            AmplitudeSpec amp;
            amp.g = [](double x) { return cplx{std::pow(x, -0.25), 0.0}; };
            amp.bound_g = std::pow(sm.m_minus1, -0.25);
            SaddleResult sr = saddle_eval(amp, phase, sm, true);
            json j;
            j["command"] = "saddle";
            put(j, "m", sd_m);
            put(j, "delta", sd_delta);
            j["k"] = sd_k;
            put(j, "eta", sd_eta);
            put(j, "n", n);
            put(j, "f_scale", phase.f_scale);
            j["has_saddle"] = sr.x0.has_value();
            if (sr.x0) put(j, "x0", *sr.x0);
            j["edge_saddle"] = sr.edge_saddle;
            put(j, "xi", sr.xi);
            put(j, "main", sr.main_term);
            put(j, "error_first", sr.error_first);
            put(j, "error_edge", sr.error_edge);
            if (sr.quadrature_reference) {
                put(j, "quad", *sr.quadrature_reference);
                put(j, "diff", std::abs(*sr.quadrature_reference - sr.main_term));
            }
            emit(j, output);
            if (!sr.reference_converged) exit_code = 2;
        } else if (*c_meas) {
            double delta = me_delta > 0.0 ? me_delta : std::pow(double(me_m), me_delta_exp);
            MeasureEstimate est = exceptional_measure(me_m, delta, me_samples, me_seed, threads);
            json j;
            j["command"] = "measure";
            j["m"] = me_m;
            put(j, "delta", delta);
            j["samples"] = est.samples;
            j["failures"] = est.failures;
            put(j, "estimate", est.estimate);
            put(j, "ci_low", est.ci_low);
            put(j, "ci_high", est.ci_high);
            emit(j, output);
        } else if (*c_sweep) {
            if (sw_count < 1) throw std::invalid_argument("sweep: empty grid");
            AFEParams params;
            DivisorTable table = divisor_sieve(sw_m, 2 * sw_m);
            std::cout << "index,m,k,h,eta,f,lhs_re,lhs_im,rhs_re,rhs_im,err,"
                         "norm_classic,norm_a05,norm_a10,norm_a20,ladder_passed,"
                         "ladder_ell,hyp_k_ok,hyp_eta_ok\n";
            for (long long i = 0; i < sw_count; ++i) {
                double u = sw_count == 1 ? 0.5 : double(i) / double(sw_count - 1);
                double f = sw_fmin * std::pow(sw_fmax / sw_fmin, u);
                long long kmax_f = (long long)std::sqrt(double(sw_m) / f);
                long long kmax = std::max<long long>(1, std::min(sw_kmax, kmax_f));
                long long k = 1 + (long long)counter_rng_below(sw_seed, 3 * i, std::uint64_t(kmax));
                long long h = 1;
                for (int tries = 0; tries < 64; ++tries) {
                    h = 1 + (long long)counter_rng_below(sw_seed, 3 * i + 1 + 64 * tries,
                                                         std::uint64_t(k));
                    if (std::gcd(h, k) == 1) break;
                }
                double eta = std::sqrt(f / double(sw_m)) / double(k);
                if (counter_rng_u64(sw_seed, 3 * i + 2) & 1) eta = -eta;
                AFEReport r = afe_check(sw_m, 2 * sw_m, h, k, eta, params, &table, threads);
                std::printf("%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                            "%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d,%d\n",
                            i, sw_m, k, h, r.eta, r.f_value, r.lhs.real(), r.lhs.imag(),
                            r.rhs.real(), r.rhs.imag(), r.err, r.norm_classic,
                            r.norm_improved[0], r.norm_improved[1], r.norm_improved[2],
                            r.conditions.passed ? 1 : 0, r.conditions.ell,
                            r.hyp_k_ok ? 1 : 0, r.hyp_eta_ok ? 1 : 0);
            }
        } else if (*c_msq) {
            MeanSquareResult ms = mean_square(q_m, threads);
            json j;
            j["command"] = "meansq";
            j["m"] = q_m;
            put(j, "integral", ms.integral);
            put(j, "coefficient_sum", ms.coefficient_sum);
            put(j, "rel_gap", std::abs(ms.integral - ms.coefficient_sum) /
                                  std::max(1.0, ms.coefficient_sum));
            double lg = std::log(double(q_m));
            put(j, "ratio_mlog3", q_m > 1 ? ms.coefficient_sum / (double(q_m) * lg * lg * lg) : 0.0);
            emit(j, output);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
