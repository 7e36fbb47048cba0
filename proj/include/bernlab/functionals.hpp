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

#ifndef BERNLAB_FUNCTIONALS_HPP
#define BERNLAB_FUNCTIONALS_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bernlab/catalog.hpp"
#include "bernlab/quadrature.hpp"

namespace bernlab {

namespace detail {

/// sin(s u) / (pi u) with the series branch near the removable point
inline double sinc_value(double s, double u) {
    double a = s * u;
    if (std::abs(a) < 0.25) {
        double a2 = a * a;
        double acc = 1.0, term = 1.0;
        for (int k = 1; k <= 8; ++k) {
            term *= -a2 / static_cast<double>((2 * k) * (2 * k + 1));
            acc += term;
        }
        return acc * s / std::numbers::pi;
    }
    return std::sin(a) / (std::numbers::pi * u);
}

/// smallest common multiple of two periods (within a small rational search)
inline double common_period(double a, double b) {
    if (a <= 0.0) return b;
    if (b <= 0.0) return a;
    for (int m = 1; m <= 16; ++m) {
        double cand = m * a;
        double k = cand / b;
        if (std::abs(k - std::round(k)) < 1e-9 && std::round(k) >= 1.0) return cand;
    }
    return std::max(a, b) * 4.0;
}

}  // namespace detail

/// Phi_f(g): pairing of g against the unimodular weight of f.
inline LineIntegralResult exposing_apply(const BandlimitedFunction& f,
                                         const BandlimitedFunction& g,
                                         const QuadratureConfig& cfg = {}) {
    return pair_integral(g, WeightKernel::unimodular(f), cfg);
}

struct FourierCoeffs {
    double c0 = 0.0;
    std::vector<double> cn;  // c_1 .. c_N
    double period = 0.0;
};

/**
 * Cosine coefficients of sign(2 cos(sigma x) - 1) over one period, by
 * quadrature with panel edges exactly at the sign changes +-pi/(3 sigma).
 */
inline FourierCoeffs sign_fourier_coeffs(double sigma, int N,
                                         const QuadratureConfig& cfg = {}) {
    if (N < 1) throw Error("sign_fourier_coeffs: N must be >= 1");
    FourierCoeffs out;
    const double T = 2.0 * std::numbers::pi / sigma;
    out.period = T;
    const double jump = std::numbers::pi / (3.0 * sigma);
    auto sign_F = [&](double x) {
        return 2.0 * std::cos(sigma * x) - 1.0 > 0.0 ? 1.0 : -1.0;
    };
    std::vector<double> edges = {-jump, jump};
    {
        auto est = detail::adaptive_integrate(
            [&](double x) { return cplx(sign_F(x)); }, -T / 2.0, T / 2.0, edges,
            1e-13, T / 16.0, 4000);
        out.c0 = est.value.real() / T;
    }
    out.cn.resize(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        auto est = detail::adaptive_integrate(
            [&](double x) { return cplx(sign_F(x) * std::cos(sigma * n * x)); },
            -T / 2.0, T / 2.0, edges, 1e-13,
            T / (4.0 * n), 8000);
        out.cn[static_cast<std::size_t>(n - 1)] = 2.0 * est.value.real() / T;
    }
    (void)cfg;
    return out;
}

struct PhiDecomposition {
    cplx I{0.0};  // -(1/3) integral of g
    cplx K{0.0};  // pairing against the truncated series minus twice the indicator
};

/**
 * Split of the exposing functional of the degree-2 quotient of 2cos(sigma x)-1
 * into the constant-mean part and the weak*-continuous remainder, with the
 * periodic factor truncated at N cosine terms.
 */
inline PhiDecomposition decompose_phi(const BandlimitedFunction& f_quotient,
                                      const BandlimitedFunction& g, int N,
                                      const QuadratureConfig& cfg = {}) {
    if (N < 8) throw Error("decompose_phi: N must be >= 8");
    const double sigma = f_quotient.sigma();
    PhiDecomposition out;
    out.I = pair_integral(g, WeightKernel::constant_mean(cplx(-1.0 / 3.0)), cfg).value;
    cplx series =
        pair_integral(g, WeightKernel::truncated_sign_series(sigma, N), cfg).value;
    const double edge = std::numbers::pi / (3.0 * sigma);
    cplx boxed = pair_integral(g, WeightKernel::indicator(-edge, edge, 1.0), cfg).value;
    out.K = series - 2.0 * boxed;
    return out;
}

/// Bounded integrable test inputs for the projection machinery.
struct PsiDescriptor {
    std::string name;
    std::function<double(double)> eval;
    double sup_norm = 0.0;
    bool compact_support = false;
    double support_lo = 0.0, support_hi = 0.0;
    std::vector<double> jump_points;
    double quasi_period = 0.0;  // 0 when aperiodic or fast-decaying
    double structure_radius = 0.0;
};

inline PsiDescriptor psi_box(double lo, double hi, double height) {
    if (!(lo < hi)) throw Error("psi_box: empty support");
    PsiDescriptor d;
    d.name = "box";
    d.eval = [lo, hi, height](double x) { return (x >= lo && x <= hi) ? height : 0.0; };
    d.sup_norm = std::abs(height);
    d.compact_support = true;
    d.support_lo = lo;
    d.support_hi = hi;
    d.jump_points = {lo, hi};
    d.structure_radius = std::max(std::abs(lo), std::abs(hi));
    return d;
}

inline PsiDescriptor psi_sinc(double s) {
    PsiDescriptor d;
    d.name = "sinc";
    d.eval = [s](double x) { return detail::sinc_value(s, x); };
    d.sup_norm = s / std::numbers::pi;
    d.quasi_period = 2.0 * std::numbers::pi / s;
    return d;
}

inline PsiDescriptor psi_gauss_cos(double a, double omega) {
    if (!(a > 0.0)) throw Error("psi_gauss_cos: a must be positive");
    PsiDescriptor d;
    d.name = "gauss_cos";
    d.eval = [a, omega](double x) { return std::exp(-a * x * x) * std::cos(omega * x); };
    d.sup_norm = 1.0;
    d.quasi_period = omega > 0.0 ? 2.0 * std::numbers::pi / omega : 0.0;
    return d;
}

/**
 * Convolution with the reproducing kernel: psi1(x) as an on-demand quadrature
 * of psi(t) S_sigma(x - t).  Values are bounded and decaying; band
 * concentration can be probed from uniform samples.
 */
class LowpassProjection {
public:
    LowpassProjection(PsiDescriptor psi, double sigma, QuadratureConfig cfg = {})
        : psi_(std::move(psi)), sigma_(sigma), cfg_(cfg) {
        if (!(sigma_ > 0.0)) throw Error("lowpass_project: sigma must be positive");
    }

    double sigma() const { return sigma_; }
    const PsiDescriptor& psi() const { return psi_; }

    cplx eval(double x) const {
        const double s = sigma_;
        auto integrand = [this, x, s](double t) {
            return cplx(psi_.eval(t) * detail::sinc_value(s, x - t));
        };
        if (psi_.compact_support) {
            std::vector<double> edges = psi_.jump_points;
            auto est = detail::adaptive_integrate(
                integrand, psi_.support_lo, psi_.support_hi, std::move(edges),
                cfg_.abs_tolerance * 1e-2,
                0.5 * std::numbers::pi / s, 20000);
            return est.value;
        }
        LineIntegrandSpec spec;
        spec.eval = integrand;
        spec.fixed_breakpoints = psi_.jump_points;
        spec.quasi_period =
            detail::common_period(2.0 * std::numbers::pi / s, psi_.quasi_period);
        spec.structure_radius = psi_.structure_radius + std::abs(x);
        return integrate_line(spec, cfg_, s).value;
    }

    /// Descriptor wrapping the projected values, for re-projection.
    PsiDescriptor as_descriptor() const {
        PsiDescriptor d;
        d.name = psi_.name + "_projected";
        auto self = *this;
        d.eval = [self](double x) { return self.eval(x).real(); };
        d.sup_norm = psi_.sup_norm;  // non-expansive in the sup metric here
        d.quasi_period =
            detail::common_period(2.0 * std::numbers::pi / sigma_, psi_.quasi_period);
        d.structure_radius = psi_.structure_radius;
        return d;
    }

    /**
     * Spectrum evidence from windowed uniform samples: the largest response
     * magnitude at probe frequencies outside (1 + slack) sigma, relative to
     * the largest in-band response.
     */
    double out_of_band_ratio(double half_width = 24.0, int samples = 512,
                             double band_slack = 0.15) const {
        std::vector<double> values(static_cast<std::size_t>(samples));
        std::vector<double> xs(static_cast<std::size_t>(samples));
        for (int k = 0; k < samples; ++k) {
            double x = -half_width + 2.0 * half_width * (k + 0.5) / samples;
            double window = 0.5 * (1.0 + std::cos(std::numbers::pi * x / half_width));
            xs[static_cast<std::size_t>(k)] = x;
            values[static_cast<std::size_t>(k)] = eval(x).real() * window;
        }
        auto response = [&](double omega) {
            cplx acc(0.0);
            for (int k = 0; k < samples; ++k)
                acc += values[static_cast<std::size_t>(k)] *
                       std::exp(cplx(0.0, -omega * xs[static_cast<std::size_t>(k)]));
            return std::abs(acc);
        };
        double in_band = 0.0, out_band = 0.0;
        for (int j = 0; j <= 96; ++j) {
            double omega = 3.0 * sigma_ * j / 96.0;
            double r = response(omega);
            if (omega <= sigma_ * (1.0 + band_slack))
                in_band = std::max(in_band, r);
            else
                out_band = std::max(out_band, r);
        }
        return in_band > 0.0 ? out_band / in_band : 0.0;
    }

private:
    PsiDescriptor psi_;
    double sigma_;
    QuadratureConfig cfg_;
};

inline LowpassProjection lowpass_project(PsiDescriptor psi, double sigma,
                                         const QuadratureConfig& cfg = {}) {
    return LowpassProjection(std::move(psi), sigma, cfg);
}

/**
 * max over the test set of | integral f conj(psi) - integral f conj(psi1) |;
 * small values evidence that psi - psi1 annihilates the space.
 */
inline double annihilator_check(const LowpassProjection& proj,
                                const std::vector<BandlimitedFunction>& tests,
                                const QuadratureConfig& cfg = {}) {
    double worst = 0.0;
    for (const BandlimitedFunction& f : tests) {
        LineIntegrandSpec raw;
        raw.eval = [&](double x) { return f.evaluate(cplx(x)) * proj.psi().eval(x); };
        raw.fixed_breakpoints = proj.psi().jump_points;
        raw.quasi_period = detail::common_period(2.0 * std::numbers::pi / f.sigma(),
                                                 proj.psi().quasi_period);
        raw.decay_center = f.expr().decay_center();
        raw.structure_radius =
            std::max(f.expr().structure_radius(), proj.psi().structure_radius);
        cplx lhs = integrate_line(raw, cfg, f.sigma()).value;

        LineIntegrandSpec projected;
        projected.eval = [&](double x) {
            return f.evaluate(cplx(x)) * std::conj(proj.eval(x));
        };
        projected.quasi_period = raw.quasi_period;
        projected.decay_center = raw.decay_center;
        projected.structure_radius = raw.structure_radius;
        cplx rhs = integrate_line(projected, cfg, f.sigma()).value;

        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

/// max over points of |f(t) - integral f(x) S_sigma(t - x) dx|
inline double reproducing_check(const BandlimitedFunction& f,
                                const std::vector<double>& points,
                                const QuadratureConfig& cfg = {}) {
    double worst = 0.0;
    const double s = f.sigma();
    for (double t : points) {
        LineIntegrandSpec spec;
        spec.eval = [&, t](double x) {
            return f.evaluate(cplx(x)) * detail::sinc_value(s, t - x);
        };
        spec.quasi_period = 2.0 * std::numbers::pi / s;
        spec.decay_center = f.expr().decay_center();
        spec.structure_radius = f.expr().structure_radius() + std::abs(t);
        cplx conv = integrate_line(spec, cfg, s).value;
        worst = std::max(worst, std::abs(conv - f.evaluate(cplx(t))));
    }
    return worst;
}

struct WitnessRow {
    double n = 0.0;
    double sup_abs = 0.0;  // sup of |g_n| over |x| <= X
    cplx I_value{0.0};     // -(1/3) integral of g_n
};

/**
 * Shifted-bump witness table: g_n(x) = (sin(sigma (x-n)/2)/(x-n))^2.  The sup
 * column collapses on every compact window while the constant-mean column
 * stays pinned at -(1/3) of the norm.
 */
inline std::vector<WitnessRow> weak_star_witness(double sigma,
                                                 const std::vector<int>& n_list,
                                                 double X,
                                                 const QuadratureConfig& cfg = {}) {
    if (!(X > 0.0)) throw Error("weak_star_witness: X must be positive");
    std::vector<WitnessRow> rows;
    for (int n : n_list) {
        BandlimitedFunction g = make_shifted_sinc_sq(sigma, static_cast<double>(n));
        WitnessRow row;
        row.n = n;
        const int m = 4001;
        double sup = 0.0;
        for (int k = 0; k < m; ++k) {
            double x = -X + 2.0 * X * k / (m - 1);
            sup = std::max(sup, std::abs(g.evaluate(cplx(x))));
        }
        row.sup_abs = sup;
        row.I_value =
            pair_integral(g, WeightKernel::constant_mean(cplx(-1.0 / 3.0)), cfg).value;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bernlab

#endif  // BERNLAB_FUNCTIONALS_HPP
