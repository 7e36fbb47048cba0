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

#ifndef BERNLAB_ZEROS_HPP
#define BERNLAB_ZEROS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "bernlab/detail/quadrature_core.hpp"
#include "bernlab/function.hpp"

namespace bernlab {

struct ZeroFindConfig {
    double scan_step_factor = 0.125;  // grid step as a fraction of pi/sigma
    double residual_tol = 1e-12;      // refinement target, relative to local scale
    double realness_tol = 1e-9;
    int max_multiplicity = 4;
    double contour_tol = 1e-6;
    double boundary_guard = 1e-7;     // min |f| on a contour, relative to side max
};

struct Zero {
    cplx location;
    int multiplicity = 1;
    bool is_real = true;
    double residual = 0.0;
};

struct ZeroSet {
    std::vector<Zero> zeros;  // sorted by real part
    double window_lo = 0.0;
    double window_hi = 0.0;
    double min_real_gap = std::numeric_limits<double>::quiet_NaN();

    std::vector<double> real_locations() const {
        std::vector<double> out;
        for (const Zero& z : zeros)
            if (z.is_real) out.push_back(z.location.real());
        return out;
    }

    int count_with_multiplicity() const {
        int n = 0;
        for (const Zero& z : zeros) n += z.multiplicity;
        return n;
    }
};

struct RectContour {
    double x_lo, x_hi, y_lo, y_hi;
};

struct ContourError : Error {
    using Error::Error;
};

namespace detail {

struct RefinedPoint {
    double x;
    bool converged;
};

/// Bisection to machine precision followed by a short Newton polish.
template <typename F, typename DF>
RefinedPoint refine_bracket(const F& f, const DF& df, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, true};
    if (fhi == 0.0) return {hi, true};
    if ((flo > 0.0) == (fhi > 0.0)) return {0.5 * (lo + hi), false};
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return {mid, true};
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        double d = df(x);
        if (d == 0.0) break;
        double step = f(x) / d;
        double nx = x - step;
        if (nx < lo - (hi - lo) || nx > hi + (hi - lo)) break;
        x = nx;
        if (std::abs(step) <= 1e-17 * (1.0 + std::abs(x))) break;
    }
    return {x, true};
}

/// Local maximum of |f| on a circle, used to scale residual certificates.
template <typename F>
double local_scale(const F& f, cplx z0, double r, int samples = 16) {
    double m = 0.0;
    for (int k = 0; k < samples; ++k) {
        double th = 2.0 * std::numbers::pi * k / samples;
        m = std::max(m, std::abs(f(z0 + r * cplx(std::cos(th), std::sin(th)))));
    }
    return m;
}

}  // namespace detail

/**
 * Multiplicity of a refined zero, read off the Taylor coefficients recovered
 * from a circle of radius r: the first index whose value-scale contribution
 * |c_j| r^j is a non-negligible fraction of the circle maximum.
 */
inline int estimate_multiplicity(const BandlimitedFunction& f, cplx z0, double r,
                                 int max_mult = 4) {
    auto ct = detail::taylor_from_circle([&](cplx z) { return f.evaluate(z); }, z0, r,
                                         max_mult + 3);
    double best = 0.0;
    double rj = 1.0;
    std::vector<double> scaled(ct.coeffs.size());
    for (std::size_t j = 0; j < ct.coeffs.size(); ++j) {
        scaled[j] = std::abs(ct.coeffs[j]) * rj;
        best = std::max(best, scaled[j]);
        rj *= r;
    }
    if (best == 0.0) return 1;
    for (int j = 1; j <= max_mult; ++j)
        if (scaled[static_cast<std::size_t>(j)] > 1e-4 * best) return j;
    return max_mult;
}

/**
 * Real zeros of f on [a, b] by grid scan and refinement.
 *
 * Sign changes of f (real functions) are bracketed and refined by bisection
 * plus Newton.  Between sign changes, every extremum of f is located from the
 * sign changes of f'; an extremum whose value crosses zero splits into a
 * bracketed pair (this is what resolves near-coincident pairs far below the
 * grid step), and an extremum with |f| at noise level is an even-order zero.
 * Non-real functions fall back to |f| minima refined by complex Newton.
 */
inline ZeroSet real_zeros(const BandlimitedFunction& f, double a, double b,
                          const ZeroFindConfig& cfg = {}) {
    if (!(a < b)) throw Error("real_zeros: empty window");
    ZeroSet out;
    out.window_lo = a;
    out.window_hi = b;

    BandlimitedFunction fd = f.derivative();
    const double step = cfg.scan_step_factor * std::numbers::pi / f.sigma();
    const bool real_fn = f.is_real_function();

    std::vector<double> candidates;

    if (real_fn) {
        auto fr = [&](double x) { return f.evaluate(cplx(x)).real(); };
        auto fdr = [&](double x) { return fd.evaluate(cplx(x)).real(); };

        const int n = std::max(4, static_cast<int>(std::ceil((b - a) / step)));
        std::vector<double> xs(static_cast<std::size_t>(n) + 1);
        std::vector<double> vs(xs.size()), ds(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = a + (b - a) * static_cast<double>(i) / n;
            vs[i] = fr(xs[i]);
            ds[i] = fdr(xs[i]);
        }

        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (vs[i] == 0.0) {
                candidates.push_back(xs[i]);
                continue;
            }
            if ((vs[i] > 0.0) != (vs[i + 1] > 0.0)) {
                auto r = detail::refine_bracket(fr, fdr, xs[i], xs[i + 1]);
                if (r.converged) candidates.push_back(r.x);
                continue;
            }
            // same sign across the cell: look for an extremum dipping through zero
            if ((ds[i] > 0.0) != (ds[i + 1] > 0.0)) {
                auto fdd = [&](double x) {
                    const double h = 1e-6;
                    return (fdr(x + h) - fdr(x - h)) / (2.0 * h);
                };
                auto ext = detail::refine_bracket(fdr, fdd, xs[i], xs[i + 1]);
                if (!ext.converged) continue;
                double m = ext.x;
                double fm = fr(m);
                double scale =
                    detail::local_scale([&](cplx z) { return f.evaluate(z); }, cplx(m),
                                        std::min(0.25 * std::numbers::pi / f.sigma(),
                                                 0.5 * (b - a)));
                if (scale <= 0.0) continue;
                if ((fm > 0.0) != (vs[i] > 0.0) && fm != 0.0) {
                    // dip through zero: two simple zeros inside the cell
                    auto r1 = detail::refine_bracket(fr, fdr, xs[i], m);
                    auto r2 = detail::refine_bracket(fr, fdr, m, xs[i + 1]);
                    if (r1.converged) candidates.push_back(r1.x);
                    if (r2.converged) candidates.push_back(r2.x);
                } else if (std::abs(fm) <= 1e-11 * scale) {
                    candidates.push_back(m);  // even-order touch
                }
            }
        }
        if (vs.back() == 0.0) candidates.push_back(xs.back());
    } else {
        // general path: |f| minima below tolerance, polished by complex Newton
        const int n = std::max(4, static_cast<int>(std::ceil((b - a) / step)));
        std::vector<double> xs(static_cast<std::size_t>(n) + 1), mags(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] = a + (b - a) * static_cast<double>(i) / n;
            mags[i] = std::abs(f.evaluate(cplx(xs[i])));
        }
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
            if (mags[i] > mags[i - 1] || mags[i] > mags[i + 1]) continue;
            cplx z(xs[i], 0.0);
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                cplx fv = f.evaluate(z);
                cplx dv = fd.evaluate(z);
                if (std::abs(dv) == 0.0) break;
                cplx stepc = fv / dv;
                z -= stepc;
                if (std::abs(stepc) <= 1e-15 * (1.0 + std::abs(z))) {
                    ok = true;
                    break;
                }
            }
            double scale = detail::local_scale([&](cplx w) { return f.evaluate(w); }, z,
                                               0.25 * std::numbers::pi / f.sigma());
            if (ok && std::abs(f.evaluate(z)) <= 1e-10 * std::max(1.0, scale) &&
                std::abs(z.imag()) <= cfg.realness_tol && z.real() >= a && z.real() <= b)
                candidates.push_back(z.real());
        }
    }

    std::sort(candidates.begin(), candidates.end());
    std::vector<double> unique;
    for (double x : candidates) {
        if (!unique.empty() && std::abs(x - unique.back()) <= 1e-11 * (1.0 + std::abs(x)))
            continue;
        unique.push_back(x);
    }

    for (double x : unique) {
        double r = std::min(0.25 * std::numbers::pi / f.sigma(), 0.5 * (b - a));
        Zero z;
        z.location = cplx(x, 0.0);
        z.is_real = true;
        z.multiplicity = estimate_multiplicity(f, z.location, r, cfg.max_multiplicity);
        double scale =
            detail::local_scale([&](cplx w) { return f.evaluate(w); }, z.location, r);
        z.residual = std::abs(f.evaluate(z.location));
        // keep only certified zeros; near-miss dips are discarded
        if (z.residual > 1e-10 * std::max(1.0, scale)) continue;
        out.zeros.push_back(z);
    }

    std::sort(out.zeros.begin(), out.zeros.end(), [](const Zero& u, const Zero& v) {
        return u.location.real() < v.location.real();
    });

    std::vector<double> reals = out.real_locations();
    if (reals.size() >= 2) {
        double g = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < reals.size(); ++i)
            g = std::min(g, reals[i + 1] - reals[i]);
        out.min_real_gap = g;
    }
    return out;
}

/**
 * Zero count (with multiplicity) inside a rectangle via the argument
 * principle: (1/2 pi i) of the contour integral of f'/f, rounded to the
 * nearest integer.  The rectangle shrinks by 1% and retries when the boundary
 * passes too close to a zero or the integral refuses to settle near an
 * integer; after three attempts the count fails.
 */
inline int count_zeros_rect(const BandlimitedFunction& f, const RectContour& rect,
                            const ZeroFindConfig& cfg = {}) {
    BandlimitedFunction fd = f.derivative();

    RectContour r = rect;
    if (!(r.x_lo < r.x_hi && r.y_lo < r.y_hi))
        throw ContourError("count_zeros_rect: degenerate rectangle");

    for (int attempt = 0; attempt < 3; ++attempt) {
        // corner order: counterclockwise starting from bottom-left
        const cplx corners[5] = {cplx(r.x_lo, r.y_lo), cplx(r.x_hi, r.y_lo),
                                 cplx(r.x_hi, r.y_hi), cplx(r.x_lo, r.y_hi),
                                 cplx(r.x_lo, r.y_lo)};

        bool guarded = true;
        for (int side = 0; side < 4 && guarded; ++side) {
            double side_min = std::numeric_limits<double>::infinity();
            double side_max = 0.0;
            for (int k = 0; k <= 64; ++k) {
                cplx z = corners[side] +
                         (corners[side + 1] - corners[side]) * (static_cast<double>(k) / 64.0);
                double m = std::abs(f.evaluate(z));
                side_min = std::min(side_min, m);
                side_max = std::max(side_max, m);
            }
            if (side_min < cfg.boundary_guard * std::max(side_max, 1e-300))
                guarded = false;
        }

        if (guarded) {
            cplx integral(0.0);
            double err = 0.0;
            bool ok = true;
            for (int side = 0; side < 4; ++side) {
                cplx z0 = corners[side];
                cplx dz = corners[side + 1] - z0;
                auto integrand = [&](double t) {
                    cplx z = z0 + t * dz;
                    return fd.evaluate(z) / f.evaluate(z) * dz;
                };
                double len = std::abs(dz);
                auto est = detail::adaptive_integrate(
                    integrand, 0.0, 1.0, {}, cfg.contour_tol,
                    std::min(0.25, (std::numbers::pi / f.sigma()) / (4.0 * len)));
                if (!est.tolerance_met) ok = false;
                integral += est.value;
                err += est.error;
            }
            if (ok) {
                const double two_pi = 2.0 * std::numbers::pi;
                double count_real = integral.imag() / two_pi;  // 1/(2 pi i) * I
                double count_res = std::abs(integral.real()) / two_pi;
                double rounded = std::round(count_real);
                if (std::abs(count_real - rounded) <= 0.25 && count_res <= 0.25)
                    return static_cast<int>(rounded);
            }
        }
        // shrink and retry
        double dx = 0.01 * (r.x_hi - r.x_lo), dy = 0.01 * (r.y_hi - r.y_lo);
        r.x_lo += dx;
        r.x_hi -= dx;
        r.y_lo += dy;
        r.y_hi -= dy;
    }
    throw ContourError("count_zeros_rect: contour kept too close to a zero");
}

/// Conjugate pairs (lambda, conj lambda) present in the set, for Im > tol.
inline std::vector<std::pair<Zero, Zero>> detect_conjugate_pairs(const ZeroSet& zs,
                                                                 double tol) {
    std::vector<std::pair<Zero, Zero>> out;
    for (const Zero& z : zs.zeros) {
        if (z.location.imag() <= tol) continue;
        for (const Zero& w : zs.zeros) {
            if (std::abs(w.location - std::conj(z.location)) <= tol) {
                out.emplace_back(z, w);
                break;
            }
        }
    }
    return out;
}

/// Minimum pairwise distance among real zeros in the window.
inline double separation_gap(const ZeroSet& zs) {
    std::vector<double> reals = zs.real_locations();
    if (reals.size() < 2) throw Error("separation_gap: fewer than two real zeros");
    std::sort(reals.begin(), reals.end());
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < reals.size(); ++i)
        g = std::min(g, reals[i + 1] - reals[i]);
    return g;
}

}  // namespace bernlab

#endif  // BERNLAB_ZEROS_HPP
