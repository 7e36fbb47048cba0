/*
   Copyright 2026 bernlab developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef BERNLAB_EXPOSE_HPP
#define BERNLAB_EXPOSE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bernlab/quadrature.hpp"
#include "bernlab/zeros.hpp"

namespace bernlab {

struct ExposeConfig {
    double type_y_max = 0.0;             // 0 -> 60 / sigma
    double type_tolerance_factor = 0.02;  // |estimate - sigma| <= factor * sigma
    double strip_half_width = 0.0;        // 0 -> 20 pi / sigma
    double strip_half_height = 0.0;       // 0 -> 3 / sigma
    double sine_type_K = 0.0;             // 0 -> 6.5 / sigma
    std::vector<double> tau_grid;         // empty -> 0.25, 0.5, ..., 3.0
    std::vector<double> y0_grid;          // empty -> {0.5, 1, 2, 3}
    double cond32_x_max = 0.0;            // 0 -> 1000 pi / sigma
    QuadratureConfig quad;
    ZeroFindConfig zeros;
};

struct SineTypeCert {
    double sigma = 0.0;
    double K = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    int x_samples = 0;
    int y_samples = 0;
};

struct SineTypeOutcome {
    bool passed = false;
    SineTypeCert cert;
    cplx offending_point{0.0};
};

struct Condition32Result {
    double tau = 0.0;
    double y0 = 0.0;
    double inf_value = 0.0;
    bool passed = false;
};

enum class ExposednessVerdict { ExposedByThm31, NotExposedByThm21, Inconclusive };

inline std::string to_string(ExposednessVerdict v) {
    switch (v) {
        case ExposednessVerdict::ExposedByThm31: return "ExposedByThm31";
        case ExposednessVerdict::NotExposedByThm21: return "NotExposedByThm21";
        default: return "Inconclusive";
    }
}

struct ExposednessReport {
    double type_estimate = 0.0;
    bool type_ok = false;
    bool conjugate_free = false;
    bool real_zeros_simple = false;
    Condition32Result cond32;
    ExposednessVerdict verdict = ExposednessVerdict::Inconclusive;
};

/**
 * Exponential type from the growth along the two imaginary directions: a
 * least-squares fit of log|f| = a y + b log y + c over the upper half of
 * [0, y_max], so that polynomial factors and quotients land in the log term
 * instead of biasing the slope.  Returns the larger directional slope.
 */
inline double estimate_type(const BandlimitedFunction& f, double y_max = 0.0) {
    if (y_max <= 0.0) y_max = 60.0 / f.sigma();
    if (y_max < 10.0 / f.sigma()) throw Error("estimate_type: y_max below 10/sigma");

    for (int attempt = 0; attempt < 2; ++attempt) {
        try {
            double best = -std::numeric_limits<double>::infinity();
            for (double direction : {1.0, -1.0}) {
                constexpr int m = 48;
                double s_yy = 0, s_yl = 0, s_yc = 0, s_ll = 0, s_lc = 0, s_cc = 0;
                double b_y = 0, b_l = 0, b_c = 0;
                for (int j = 0; j < m; ++j) {
                    double y = y_max * (0.5 + 0.5 * (j + 0.5) / m);
                    double mag = std::abs(f.evaluate(cplx(0.0, direction * y)));
                    if (!(mag > 0.0)) continue;
                    double L = std::log(mag);
                    double ly = std::log(y);
                    s_yy += y * y;
                    s_yl += y * ly;
                    s_yc += y;
                    s_ll += ly * ly;
                    s_lc += ly;
                    s_cc += 1.0;
                    b_y += y * L;
                    b_l += ly * L;
                    b_c += L;
                }
                // 3x3 normal equations, unknowns (a, b, c)
                double M[3][3] = {{s_yy, s_yl, s_yc}, {s_yl, s_ll, s_lc}, {s_yc, s_lc, s_cc}};
                double r[3] = {b_y, b_l, b_c};
                for (int col = 0; col < 3; ++col) {
                    int piv = col;
                    for (int i = col + 1; i < 3; ++i)
                        if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
                    std::swap(M[col], M[piv]);
                    std::swap(r[col], r[piv]);
                    for (int i = col + 1; i < 3; ++i) {
                        double fac = M[i][col] / M[col][col];
                        for (int j2 = col; j2 < 3; ++j2) M[i][j2] -= fac * M[col][j2];
                        r[i] -= fac * r[col];
                    }
                }
                double c2 = r[2] / M[2][2];
                double c1 = (r[1] - M[1][2] * c2) / M[1][1];
                double a = (r[0] - M[0][1] * c1 - M[0][2] * c2) / M[0][0];
                best = std::max(best, a);
            }
            return best;
        } catch (const EvalRangeError&) {
            if (attempt == 1) throw;
            y_max *= 0.5;
            if (y_max < 10.0 / f.sigma()) throw;
        }
    }
    throw Error("estimate_type: unreachable");
}

/**
 * Two-sided sine-type certificate: |F(x+iy)| e^{-sigma |y|} sampled over
 * |x| <= 4 pi / sigma and |y| in [K, K + 2/sigma]; the certificate carries
 * the sampled extremes and fails when any sample collapses relative to the
 * grid maximum (e.g. one-sided exponentials).
 */
inline SineTypeOutcome sine_type_check(const BandlimitedFunction& F, double sigma,
                                       double K) {
    if (!(K > 0.0)) throw Error("sine_type_check: K must be positive");
    SineTypeOutcome out;
    out.cert.sigma = sigma;
    out.cert.K = K;
    const double x_half = 4.0 * std::numbers::pi / sigma;
    const int nx = 161, ny = 17;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    cplx argmin(0.0);
    for (double band : {1.0, -1.0}) {
        for (int iy = 0; iy < ny; ++iy) {
            double y = band * (K + 2.0 / sigma * iy / (ny - 1));
            for (int ix = 0; ix < nx; ++ix) {
                double x = -x_half + 2.0 * x_half * ix / (nx - 1);
                double s = std::abs(F.evaluate(cplx(x, y))) * std::exp(-sigma * std::abs(y));
                if (s < lo) {
                    lo = s;
                    argmin = cplx(x, y);
                }
                hi = std::max(hi, s);
            }
        }
    }
    out.cert.c1 = lo;
    out.cert.c2 = hi;
    out.cert.x_samples = nx;
    out.cert.y_samples = 2 * ny;
    out.passed = lo > 1e-3 * hi && lo > 0.0;
    if (!out.passed) out.offending_point = argmin;
    return out;
}

/**
 * Grid search for the decay condition: over the (tau, y0) grid, sample
 * |x + i y0|^tau |f(x + i y0)| on a dense near-field grid plus uniform
 * coverage of each decade out to x_max.  A pair passes when the global
 * sampled infimum clears a positivity threshold and the infimum over the
 * outermost decade has stopped decreasing.
 */
inline Condition32Result condition_32_search(const BandlimitedFunction& f,
                                             std::vector<double> tau_grid,
                                             std::vector<double> y0_grid,
                                             double x_max = 0.0) {
    const double sigma = f.sigma();
    if (tau_grid.empty())
        for (int i = 1; i <= 12; ++i) tau_grid.push_back(0.25 * i);
    if (y0_grid.empty()) y0_grid = {0.5, 1.0, 2.0, 3.0};
    if (x_max <= 0.0) x_max = 1000.0 * std::numbers::pi / sigma;
    for (double tau : tau_grid)
        if (!(tau > 0.0 && tau <= 3.0))
            throw Error("condition_32_search: tau grid must lie in (0, 3]");
    if (x_max < 100.0 / sigma) throw Error("condition_32_search: x_max below 100/sigma");

    Condition32Result best;
    double best_quality = -1.0;

    for (double y0 : y0_grid) {
        // shared |f| samples across tau: near field + per-decade coverage
        std::vector<std::pair<double, double>> samples;  // (|x + i y0|, |f|)
        std::vector<std::size_t> decade_edges;           // sample index where decade starts
        const double near_step = std::numbers::pi / (8.0 * sigma);
        const double near_max = 20.0 * std::numbers::pi / sigma;
        for (double x = 0.0; x <= near_max; x += near_step) {
            double m = std::min(std::abs(f.evaluate(cplx(x, y0))),
                                std::abs(f.evaluate(cplx(-x, y0))));
            samples.emplace_back(std::hypot(x, y0), m);
        }
        double edge = std::max(near_max, 1.0);
        while (edge < x_max) {
            double next = std::min(10.0 * edge, x_max);
            decade_edges.push_back(samples.size());
            int count = static_cast<int>(
                std::min(4096.0, std::ceil((next - edge) / near_step)));
            for (int i = 0; i < count; ++i) {
                double x = edge + (next - edge) * (i + 0.5) / count;
                double m = std::min(std::abs(f.evaluate(cplx(x, y0))),
                                    std::abs(f.evaluate(cplx(-x, y0))));
                samples.emplace_back(std::hypot(x, y0), m);
            }
            edge = next;
        }
        decade_edges.push_back(samples.size());

        for (double tau : tau_grid) {
            double global_inf = std::numeric_limits<double>::infinity();
            double global_max = 0.0;
            for (const auto& [r, m] : samples) {
                double s = std::pow(r, tau) * m;
                global_inf = std::min(global_inf, s);
                global_max = std::max(global_max, s);
            }
            double last_inf = std::numeric_limits<double>::infinity();
            double prev_inf = std::numeric_limits<double>::infinity();
            if (decade_edges.size() >= 3) {
                for (std::size_t i = decade_edges[decade_edges.size() - 2];
                     i < decade_edges[decade_edges.size() - 1]; ++i)
                    last_inf = std::min(last_inf,
                                        std::pow(samples[i].first, tau) * samples[i].second);
                for (std::size_t i = decade_edges[decade_edges.size() - 3];
                     i < decade_edges[decade_edges.size() - 2]; ++i)
                    prev_inf = std::min(prev_inf,
                                        std::pow(samples[i].first, tau) * samples[i].second);
            }
            bool passed = global_inf > 1e-6 * global_max &&
                          last_inf >= 0.98 * prev_inf;
            double quality = global_max > 0.0 ? global_inf / global_max : 0.0;
            if ((passed && (!best.passed || quality > best_quality)) ||
                (!best.passed && quality > best_quality)) {
                best.tau = tau;
                best.y0 = y0;
                best.inf_value = global_inf;
                best.passed = passed;
                best_quality = quality;
            }
        }
    }
    return best;
}

namespace detail {

/// Nudge a window edge to sit as far as possible from nearby real zeros.
inline double clear_of_zeros(double W, const std::vector<double>& zeros) {
    double best = W, best_dist = 0.0;
    for (int j = -20; j <= 20; ++j) {
        double cand = W + 0.05 * j;
        double dist = std::numeric_limits<double>::infinity();
        for (double z : zeros) dist = std::min(dist, std::abs(std::abs(z) - cand));
        if (dist > best_dist) {
            best_dist = dist;
            best = cand;
        }
    }
    return best;
}

}  // namespace detail

/**
 * Exposedness checklist: exponential type against the nominal sigma,
 * conjugate-freeness in a strip window (argument-principle count against the
 * real-zero enumeration), simplicity of real zeros, and the decay-condition
 * search.  The sufficient-condition route never claims a negative: when only
 * the decay search fails the verdict is Inconclusive.
 */
inline ExposednessReport classify_exposedness(const BandlimitedFunction& f,
                                              const ExposeConfig& cfg = {}) {
    const double sigma = f.sigma();
    ExposednessReport rep;
    rep.type_estimate = estimate_type(f, cfg.type_y_max);
    rep.type_ok = std::abs(rep.type_estimate - sigma) <=
                  cfg.type_tolerance_factor * sigma;

    double W = cfg.strip_half_width > 0.0 ? cfg.strip_half_width
                                          : 20.0 * std::numbers::pi / sigma;
    double H = cfg.strip_half_height > 0.0 ? cfg.strip_half_height : 3.0 / sigma;

    ZeroSet zs = real_zeros(f, -W - 1.0, W + 1.0, cfg.zeros);
    double W_adj = detail::clear_of_zeros(W, zs.real_locations());
    int real_count = 0;
    bool all_simple = true;
    for (const Zero& z : zs.zeros) {
        if (std::abs(z.location.real()) > W_adj) continue;
        real_count += z.multiplicity;
        if (z.multiplicity != 1) all_simple = false;
    }
    int rect_count = count_zeros_rect(f, {-W_adj, W_adj, -H, H}, cfg.zeros);
    rep.conjugate_free = rect_count == real_count;
    rep.real_zeros_simple = all_simple;

    rep.cond32 = condition_32_search(f, cfg.tau_grid, cfg.y0_grid, cfg.cond32_x_max);

    if (rep.type_ok && rep.conjugate_free && rep.real_zeros_simple && rep.cond32.passed)
        rep.verdict = ExposednessVerdict::ExposedByThm31;
    else if (!rep.type_ok || !rep.conjugate_free || !rep.real_zeros_simple)
        rep.verdict = ExposednessVerdict::NotExposedByThm21;
    else
        rep.verdict = ExposednessVerdict::Inconclusive;
    return rep;
}

enum class QuotientVerdict { NotInSpace, Exposed, NotExposed };

inline std::string to_string(QuotientVerdict v) {
    switch (v) {
        case QuotientVerdict::NotInSpace: return "NotInSpace";
        case QuotientVerdict::Exposed: return "Exposed";
        default: return "NotExposed";
    }
}

/**
 * Degree rule for quotients of a sine-type numerator: after certifying the
 * numerator (sine-type bounds, no conjugate zeros, simple real zeros) and the
 * zero-containment of the denominator, the verdict depends only on deg q.
 * Cross-validation hooks live with the experiment harness: divergence of the
 * truncated norm for NotInSpace, membership of the z^2 multiple for
 * NotExposed.
 */
inline QuotientVerdict classify_quotient_degree(const BandlimitedFunction& F,
                                                const Polynomial& q,
                                                const ExposeConfig& cfg = {}) {
    const double sigma = F.sigma();
    double K = cfg.sine_type_K > 0.0 ? cfg.sine_type_K : 6.5 / sigma;
    SineTypeOutcome st = sine_type_check(F, sigma, K);
    if (!st.passed)
        throw Error("classify_quotient_degree: numerator failed the sine-type check");

    double W = cfg.strip_half_width > 0.0 ? cfg.strip_half_width
                                          : 20.0 * std::numbers::pi / sigma;
    double H = cfg.strip_half_height > 0.0 ? cfg.strip_half_height : 3.0 / sigma;
    ZeroSet zs = real_zeros(F, -W - 1.0, W + 1.0, cfg.zeros);
    double W_adj = detail::clear_of_zeros(W, zs.real_locations());
    int real_count = 0;
    for (const Zero& z : zs.zeros) {
        if (std::abs(z.location.real()) > W_adj) continue;
        real_count += z.multiplicity;
        if (z.multiplicity != 1)
            throw Error("classify_quotient_degree: numerator has a multiple real zero at x=" +
                        detail::format_sig(z.location.real()));
    }
    if (count_zeros_rect(F, {-W_adj, W_adj, -H, H}, cfg.zeros) != real_count)
        throw Error("classify_quotient_degree: numerator has conjugate zeros in the strip");

    // zero containment of q in N(F), with multiplicity
    (void)poly_quotient(F.expr(), q);  // throws ConstructionError when violated

    if (q.degree() < 2) return QuotientVerdict::NotInSpace;
    if (q.degree() <= 3) return QuotientVerdict::Exposed;
    return QuotientVerdict::NotExposed;
}

}  // namespace bernlab

#endif  // BERNLAB_EXPOSE_HPP
