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

#ifndef BERNLAB_QUADRATURE_HPP
#define BERNLAB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "bernlab/detail/quadrature_core.hpp"
#include "bernlab/function.hpp"
#include "bernlab/weight_kernel.hpp"

namespace bernlab {

struct DivergentNormError : Error {
    using Error::Error;
};

struct QuadratureConfig {
    double truncation_radius = 0.0;  // 0 selects the default 200 pi / sigma
    double abs_tolerance = 1e-8;
    int max_subdivisions = 30000;  // head panel budget
    double tail_decay_exponent_hint = 2.0;
    double pole_guard_radius = 1e-4;
    int tail_direct_blocks = 24;

    double radius_for(double sigma) const {
        return truncation_radius > 0.0 ? truncation_radius
                                       : 200.0 * std::numbers::pi / sigma;
    }
};

struct LineIntegralResult {
    cplx value{0.0};
    double error_estimate = 0.0;
    bool converged = false;
    bool diverged = false;
    double truncation_used = 0.0;
    double tail_correction = 0.0;     // magnitude of the tail added beyond the head
    double growth_log_slope = 0.0;    // log-growth diagnostics when diverged
    double growth_fit_residual = 0.0;
};

/// A line integrand together with everything the panel builder needs to know:
/// where its kinks and jumps are, and the asymptotic block period of its
/// oscillatory part.
struct LineIntegrandSpec {
    std::function<cplx(double)> eval;
    std::vector<BandlimitedFunction> kink_sources;
    std::vector<double> fixed_breakpoints;
    double quasi_period = 2.0;
    double decay_center = 0.0;     // where the algebraic decay is anchored
    double structure_radius = 0.0; // roots/shifts the head must contain
};

namespace detail {

/// Sign-change positions of a real function on [lo, hi] (plain bisection;
/// breakpoint accuracy only).
inline std::vector<double> scan_breakpoints(const BandlimitedFunction& f, double lo,
                                            double hi) {
    std::vector<double> out;
    if (!(hi > lo)) return out;
    if (!f.is_real_function()) return out;
    const double step = 0.125 * std::numbers::pi / f.sigma();
    const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
    double prev_x = lo;
    double prev_v = f.evaluate(cplx(lo)).real();
    for (int i = 1; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double v = f.evaluate(cplx(x)).real();
        if (prev_v == 0.0) out.push_back(prev_x);
        if ((prev_v > 0.0) != (v > 0.0) && prev_v != 0.0 && v != 0.0) {
            double a = prev_x, b = x, fa = prev_v;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                double fm = f.evaluate(cplx(m)).real();
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm > 0.0) == (fa > 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_v = v;
    }
    return out;
}

struct TailResult {
    cplx value{0.0};
    double error = 0.0;
    bool diverged = false;
    bool negligible = false;
};

/// sum over k >= 0 of (a + k)^{-q} by Euler-Maclaurin with exact derivatives
inline double algebraic_tail_sum(double q, double a) {
    constexpr int M = 12;
    double s = 0.0;
    for (int k = 0; k < M; ++k) s += std::pow(a + k, -q);
    const double b = a + M;
    s += std::pow(b, 1.0 - q) / (q - 1.0);
    s += 0.5 * std::pow(b, -q);
    s += q * std::pow(b, -q - 1.0) / 12.0;
    s -= q * (q + 1.0) * (q + 2.0) * std::pow(b, -q - 3.0) / 720.0;
    s += q * (q + 1.0) * (q + 2.0) * (q + 3.0) * (q + 4.0) * std::pow(b, -q - 5.0) /
         30240.0;
    return s;
}

/**
 * Tail integral from `start` outward in direction `dir` of a quasi-periodic
 * over algebraic integrand.  Integrals over whole blocks of one quasi-period
 * form a phase-locked, smoothly decaying sequence G(k) ~ sum_j c_j y_k^{-p-j}.
 * The first blocks are summed exactly; the rest of the sum is completed
 * analytically from a fitted four-term algebraic model of the sequence.
 */
template <typename F, typename Scanner>
TailResult tail_integral(const F& f, const Scanner& scanner, double start, int dir,
                         double dist0, double period, double head_scale,
                         const QuadratureConfig& cfg) {
    TailResult out;
    const double T = period;
    const int n_direct = std::max(48, 4 * cfg.tail_direct_blocks);
    const int fit_from = n_direct / 4;
    const int fit_stride = std::max(1, (n_direct - fit_from) / 12);

    auto block = [&](int k) -> IntegralEstimate {
        double u0 = k * T, u1 = (k + 1.0) * T;
        double x0 = dir > 0 ? start + u0 : start - u1;
        double x1 = dir > 0 ? start + u1 : start - u0;
        std::vector<double> bps = scanner(x0, x1);
        // blocks are short and smooth between breakpoints; integrate them to
        // machine precision so the fit sees no noise floor
        return adaptive_integrate(f, x0, x1, std::move(bps), 1e-16, T / 4.0, 256);
    };

    std::vector<cplx> G(static_cast<std::size_t>(n_direct));
    cplx direct(0.0);
    double direct_err = 0.0;
    double gmax_window = 0.0;
    for (int k = 0; k < n_direct; ++k) {
        IntegralEstimate e = block(k);
        G[static_cast<std::size_t>(k)] = e.value;
        direct += e.value;
        direct_err += e.error;
        if (k >= fit_from) gmax_window = std::max(gmax_window, std::abs(e.value));
    }

    const double floor_scale = std::max({head_scale, std::abs(direct), 1e-30});
    if (gmax_window <= 1e-17 * floor_scale) {
        out.value = direct;
        out.error = direct_err + 4.0 * gmax_window;
        out.negligible = true;
        return out;
    }

    auto ybar = [&](int k) { return dist0 + (k + 0.5) * T; };

    // decay exponent probe across the fit window
    double m1 = std::max(std::abs(G[static_cast<std::size_t>(fit_from)]),
                         std::abs(G[static_cast<std::size_t>(fit_from + 1)]));
    double m2 = std::max(std::abs(G[static_cast<std::size_t>(n_direct - 2)]),
                         std::abs(G[static_cast<std::size_t>(n_direct - 1)]));
    double phat = std::log(std::max(m1, 1e-300) / std::max(m2, 1e-300)) /
                  std::log(ybar(n_direct - 2) / ybar(fit_from));
    if (phat <= 1.3) {
        out.diverged = true;
        out.value = direct;
        return out;
    }

    const int p = static_cast<int>(std::lround(phat));
    const double ymid = ybar((fit_from + n_direct) / 2);

    if (std::abs(phat - p) > 0.35 || p < 2) {
        // no clean algebraic model: keep the exact block sum and bound the rest
        double bound = std::abs(G[static_cast<std::size_t>(n_direct - 1)]) *
                       ybar(n_direct - 1) / ((phat - 1.0) * T);
        out.value = direct;
        out.error = direct_err + bound;
        return out;
    }

    // least squares for G(k) ~ sum_{j<4} c_j (ymid / y_k)^{p+j} on the window
    constexpr int nb = 4;
    double A[nb][nb] = {};
    cplx rhs[nb] = {};
    std::vector<int> window;
    for (int k = fit_from; k < n_direct; k += fit_stride) window.push_back(k);
    if (window.back() != n_direct - 1) window.push_back(n_direct - 1);
    for (int k : window) {
        double base = ymid / ybar(k);
        double b[nb];
        b[0] = std::pow(base, p);
        for (int j = 1; j < nb; ++j) b[j] = b[j - 1] * base;
        for (int i = 0; i < nb; ++i) {
            for (int j = 0; j < nb; ++j) A[i][j] += b[i] * b[j];
            rhs[i] += b[i] * G[static_cast<std::size_t>(k)];
        }
    }
    // Gaussian elimination with partial pivoting on the 4x4 normal equations
    cplx c[nb];
    {
        double M[nb][nb];
        cplx r[nb];
        for (int i = 0; i < nb; ++i) {
            r[i] = rhs[i];
            for (int j = 0; j < nb; ++j) M[i][j] = A[i][j];
        }
        for (int col = 0; col < nb; ++col) {
            int piv = col;
            for (int i = col + 1; i < nb; ++i)
                if (std::abs(M[i][col]) > std::abs(M[piv][col])) piv = i;
            std::swap(M[col], M[piv]);
            std::swap(r[col], r[piv]);
            for (int i = col + 1; i < nb; ++i) {
                double fac = M[i][col] / M[col][col];
                for (int j = col; j < nb; ++j) M[i][j] -= fac * M[col][j];
                r[i] -= fac * r[col];
            }
        }
        for (int i = nb - 1; i >= 0; --i) {
            cplx acc = r[i];
            for (int j = i + 1; j < nb; ++j) acc -= M[i][j] * c[j];
            c[i] = acc / M[i][i];
        }
    }

    double max_resid = 0.0;
    for (int k : window) {
        double base = ymid / ybar(k);
        cplx fit = 0.0;
        double bj = std::pow(base, p);
        for (int j = 0; j < nb; ++j) {
            fit += c[j] * bj;
            bj *= base;
        }
        max_resid = std::max(max_resid, std::abs(fit - G[static_cast<std::size_t>(k)]));
    }

    // analytic completion for k >= n_direct: y_k = T (k + delta)
    const double delta = dist0 / T + 0.5;
    cplx fitted_tail(0.0);
    for (int j = 0; j < nb; ++j) {
        double q = static_cast<double>(p + j);
        double scale = std::pow(ymid / T, q);
        fitted_tail += c[j] * scale * algebraic_tail_sum(q, n_direct + delta);
    }

    out.value = direct + fitted_tail;
    out.error = direct_err +
                4.0 * max_resid * ybar(n_direct) / (std::max(1, p - 1) * T);
    return out;
}

}  // namespace detail

/**
 * Deterministic line integral with truncation at the configured radius plus
 * an explicit tail completion.  The head [-R, R] uses adaptive Gauss-Kronrod
 * panels bounded by the integrand's kinks and jumps; the tails use the
 * block-periodized Euler-Maclaurin sum.  Divergent integrands are reported
 * with converged=false and a fitted logarithmic growth law.
 */
inline LineIntegralResult integrate_line(const LineIntegrandSpec& spec,
                                         const QuadratureConfig& cfg, double sigma) {
    LineIntegralResult out;
    const double T = spec.quasi_period;
    double R = cfg.radius_for(sigma);
    R = std::max(R, 2.0 * spec.structure_radius + 12.0 * T);
    out.truncation_used = R;
    const double centre = std::clamp(spec.decay_center, -0.5 * R, 0.5 * R);

    auto scanner = [&](double lo, double hi) {
        std::vector<double> bps;
        for (const BandlimitedFunction& src : spec.kink_sources) {
            std::vector<double> s = detail::scan_breakpoints(src, lo, hi);
            bps.insert(bps.end(), s.begin(), s.end());
        }
        for (double b : spec.fixed_breakpoints)
            if (b > lo && b < hi) bps.push_back(b);
        std::sort(bps.begin(), bps.end());
        return bps;
    };

    detail::IntegralEstimate head = detail::adaptive_integrate(
        spec.eval, -R, R, scanner(-R, R), cfg.abs_tolerance, T / 4.0,
        cfg.max_subdivisions);

    double head_scale = std::abs(head.value);

    detail::TailResult right = detail::tail_integral(spec.eval, scanner, R, +1,
                                                     R - centre, T, head_scale, cfg);
    detail::TailResult left = detail::tail_integral(spec.eval, scanner, -R, -1,
                                                    R + centre, T, head_scale, cfg);

    if (right.diverged || left.diverged) {
        // partial integrals on a doubling ladder for the growth diagnostic
        std::vector<double> partials;
        std::vector<double> radii = {R, 2.0 * R, 4.0 * R};
        cplx acc = head.value;
        double from = R;
        for (double target : radii) {
            if (target > from) {
                int blocks = static_cast<int>(std::round((target - from) / T));
                for (int k = 0; k < blocks; ++k) {
                    double a = from + k * T, b = from + (k + 1) * T;
                    acc += detail::adaptive_integrate(spec.eval, a, b, scanner(a, b),
                                                      1e-10, T / 4.0, 256)
                               .value;
                    acc += detail::adaptive_integrate(spec.eval, -b, -a, scanner(-b, -a),
                                                      1e-10, T / 4.0, 256)
                               .value;
                }
                from += blocks * T;
            }
            partials.push_back(std::abs(acc));
        }
        // least squares a + b log R through the ladder
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(partials.size());
        for (int i = 0; i < n; ++i) {
            double x = std::log(radii[static_cast<std::size_t>(i)]);
            double y = partials[static_cast<std::size_t>(i)];
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        double offset = (sy - slope * sx) / n;
        double ss = 0.0, range = partials.back() - partials.front();
        for (int i = 0; i < n; ++i) {
            double fit = offset + slope * std::log(radii[static_cast<std::size_t>(i)]);
            ss += (partials[static_cast<std::size_t>(i)] - fit) *
                  (partials[static_cast<std::size_t>(i)] - fit);
        }
        out.value = acc;
        out.converged = false;
        out.diverged = true;
        out.growth_log_slope = slope;
        out.growth_fit_residual =
            std::abs(range) > 0 ? std::sqrt(ss / n) / std::abs(range) : 0.0;
        out.error_estimate = std::numeric_limits<double>::infinity();
        return out;
    }

    out.value = head.value + right.value + left.value;
    out.tail_correction = std::abs(right.value) + std::abs(left.value);
    out.error_estimate = head.error + right.error + left.error;
    out.converged = head.tolerance_met &&
                    out.error_estimate <= 10.0 * cfg.abs_tolerance;
    return out;
}

/// integral over R of |f(x + i a)| dx
inline LineIntegralResult abs_integral_on_line(const BandlimitedFunction& f, double a,
                                               const QuadratureConfig& cfg = {}) {
    LineIntegrandSpec spec;
    spec.eval = [f, a](double x) { return cplx(std::abs(f.evaluate(cplx(x, a)))); };
    if (a == 0.0) spec.kink_sources.push_back(f);
    spec.quasi_period = 2.0 * std::numbers::pi / f.sigma();
    spec.decay_center = f.expr().decay_center();
    spec.structure_radius = f.expr().structure_radius();
    return integrate_line(spec, cfg, f.sigma());
}

/// integral over R of g(x) w(x) dx for a bounded weight w; callers may pass
/// extra breakpoints for jumps the sign scan cannot resolve (engineered
/// near-coincident zero pairs)
inline LineIntegralResult pair_integral(const BandlimitedFunction& g,
                                        const WeightKernel& w,
                                        const QuadratureConfig& cfg = {},
                                        std::vector<double> extra_breakpoints = {}) {
    LineIntegrandSpec spec;
    double guard = cfg.pole_guard_radius;
    spec.eval = [g, w, guard](double x) { return g.evaluate(cplx(x)) * w.eval(x, guard); };
    if (w.jump_source()) spec.kink_sources.push_back(*w.jump_source());
    spec.fixed_breakpoints = w.fixed_breakpoints();
    spec.fixed_breakpoints.insert(spec.fixed_breakpoints.end(),
                                  extra_breakpoints.begin(), extra_breakpoints.end());
    spec.quasi_period = 2.0 * std::numbers::pi / g.sigma();
    spec.decay_center = g.expr().decay_center();
    spec.structure_radius = g.expr().structure_radius();
    if (w.jump_source())
        spec.structure_radius = std::max(spec.structure_radius,
                                         w.jump_source()->expr().structure_radius());
    return integrate_line(spec, cfg, g.sigma());
}

/// integral over [u, v] of |g|; compared against the full-line mass it is
/// monotone in the interval and bounded by the norm.
inline double interval_mass(const BandlimitedFunction& g, double u, double v,
                            const QuadratureConfig& cfg = {}) {
    if (!(u <= v)) throw Error("interval_mass: u must not exceed v");
    if (u == v) return 0.0;
    auto integrand = [&](double x) { return cplx(std::abs(g.evaluate(cplx(x)))); };
    std::vector<double> bps = detail::scan_breakpoints(g, u, v);
    auto est = detail::adaptive_integrate(integrand, u, v, std::move(bps),
                                          cfg.abs_tolerance,
                                          0.5 * std::numbers::pi / g.sigma(),
                                          cfg.max_subdivisions);
    return std::max(0.0, est.value.real());
}

/// truncated norms on a radius ladder: (R_i, integral of |f(x+ia)| over [-R_i, R_i])
inline std::vector<std::pair<double, double>> truncated_norm_ladder(
    const BandlimitedFunction& f, double a, const std::vector<double>& radii,
    const QuadratureConfig& cfg = {}) {
    std::vector<std::pair<double, double>> out;
    auto integrand = [&](double x) { return cplx(std::abs(f.evaluate(cplx(x, a)))); };
    std::vector<double> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    double from = 0.0;
    double acc = 0.0;
    for (double R : sorted) {
        std::vector<double> bps = a == 0.0 ? detail::scan_breakpoints(f, from, R)
                                           : std::vector<double>{};
        acc += detail::adaptive_integrate(integrand, from, R, std::move(bps), 1e-10,
                                          0.5 * std::numbers::pi / f.sigma(), 20000)
                   .value.real();
        std::vector<double> bps2 = a == 0.0 ? detail::scan_breakpoints(f, -R, -from)
                                            : std::vector<double>{};
        acc += detail::adaptive_integrate(integrand, -R, -from, std::move(bps2), 1e-10,
                                          0.5 * std::numbers::pi / f.sigma(), 20000)
                   .value.real();
        out.emplace_back(R, acc);
        from = R;
    }
    return out;
}

struct LogGrowthFit {
    double offset = 0.0;
    double log_slope = 0.0;
    double residual = 0.0;  // RMS misfit relative to the data range
};

/// least-squares a + b log R through a truncated-norm ladder
inline LogGrowthFit fit_log_growth(const std::vector<std::pair<double, double>>& ladder) {
    LogGrowthFit fit;
    const int n = static_cast<int>(ladder.size());
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [R, I] : ladder) {
        double x = std::log(R);
        sx += x;
        sy += I;
        sxx += x * x;
        sxy += x * I;
    }
    fit.log_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.offset = (sy - fit.log_slope * sx) / n;
    double ss = 0.0;
    double lo = ladder.front().second, hi = ladder.front().second;
    for (const auto& [R, I] : ladder) {
        double e = I - (fit.offset + fit.log_slope * std::log(R));
        ss += e * e;
        lo = std::min(lo, I);
        hi = std::max(hi, I);
    }
    double range = hi - lo;
    fit.residual = range > 0.0 ? std::sqrt(ss / n) / range : 0.0;
    return fit;
}

/**
 * Rescale so the computed line norm is 1; the scalar is always taken positive
 * real (exposedness is invariant under unimodular rotation).  Throws when the
 * truncated norm shows no Cauchy tail.
 */
inline BandlimitedFunction normalize(const BandlimitedFunction& f,
                                     const QuadratureConfig& cfg = {}) {
    LineIntegralResult norm = abs_integral_on_line(f, 0.0, cfg);
    if (norm.diverged) {
        throw DivergentNormError(
            "normalize: truncated norm of " + f.name() +
            " keeps growing (fitted log slope " +
            detail::format_sig(norm.growth_log_slope) + ")");
    }
    double I = norm.value.real();
    if (!(I > 0.0)) throw DivergentNormError("normalize: vanishing norm");
    return f.with_alpha(cplx(std::abs(f.alpha()) / I));
}

}  // namespace bernlab

#endif  // BERNLAB_QUADRATURE_HPP
