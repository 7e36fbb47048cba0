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

#ifndef BERNLAB_WEIGHT_KERNEL_HPP
#define BERNLAB_WEIGHT_KERNEL_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "bernlab/function.hpp"

namespace bernlab {

/**
 * Bounded weights paired against integrable functions:
 *
 *   Unimodular(f)             f*(x)/|f(x)| off the zero set of f
 *   Indicator(lo, hi, scale)  scale on [lo, hi], zero elsewhere
 *   TruncatedSignSeries(s, N) sum_{n<=N} (4/pi) sin(pi n/3)/n cos(s n x)
 *   ConstantMean(c)           the constant c
 */
class WeightKernel {
public:
    enum class Kind { Unimodular, Indicator, TruncatedSignSeries, ConstantMean };

    static WeightKernel unimodular(BandlimitedFunction f) {
        WeightKernel w(Kind::Unimodular);
        w.f_ = std::move(f);
        w.sup_ = 1.0;
        return w;
    }

    static WeightKernel indicator(double lo, double hi, double scale) {
        if (!(lo < hi)) throw ConstructionError("indicator: empty interval");
        WeightKernel w(Kind::Indicator);
        w.lo_ = lo;
        w.hi_ = hi;
        w.scale_ = cplx(scale);
        w.sup_ = std::abs(scale);
        return w;
    }

    static WeightKernel truncated_sign_series(double sigma, int terms) {
        if (terms < 1) throw ConstructionError("truncated series needs >= 1 term");
        WeightKernel w(Kind::TruncatedSignSeries);
        w.sigma_ = sigma;
        w.coeffs_.resize(static_cast<std::size_t>(terms) + 1, 0.0);
        for (int n = 1; n <= terms; ++n)
            w.coeffs_[static_cast<std::size_t>(n)] =
                (4.0 / std::numbers::pi) * std::sin(std::numbers::pi * n / 3.0) / n;
        // sampled sup norm over one period
        double sup = 0.0;
        const double period = 2.0 * std::numbers::pi / sigma;
        for (int k = 0; k < 2048; ++k)
            sup = std::max(sup, std::abs(w.series_value(period * k / 2048.0)));
        w.sup_ = sup;
        return w;
    }

    static WeightKernel constant_mean(cplx c) {
        WeightKernel w(Kind::ConstantMean);
        w.scale_ = c;
        w.sup_ = std::abs(c);
        return w;
    }

    Kind kind() const { return kind_; }
    double sup_norm() const { return sup_; }

    cplx eval(double x, double pole_guard = 1e-4) const {
        switch (kind_) {
            case Kind::Unimodular: {
                cplx v = f_->evaluate(cplx(x));
                if (std::abs(v) < 1e-13) {
                    // nodes colliding with the zero set are displaced off it
                    v = f_->evaluate(cplx(x + pole_guard));
                }
                double m = std::abs(v);
                return m > 0.0 ? std::conj(v) / m : cplx(0.0);
            }
            case Kind::Indicator:
                return (x >= lo_ && x <= hi_) ? scale_ : cplx(0.0);
            case Kind::TruncatedSignSeries:
                return cplx(series_value(x));
            case Kind::ConstantMean:
                return scale_;
        }
        return cplx(0.0);
    }

    /// Exact discontinuity locations (indicator edges); unimodular jumps are
    /// discovered by scanning the underlying function.
    std::vector<double> fixed_breakpoints() const {
        if (kind_ == Kind::Indicator) return {lo_, hi_};
        return {};
    }

    const std::optional<BandlimitedFunction>& jump_source() const { return f_; }

    int terms() const { return static_cast<int>(coeffs_.size()) - 1; }

private:
    explicit WeightKernel(Kind k) : kind_(k) {}

    double series_value(double x) const {
        // Chebyshev recurrence for cos(n sigma x)
        const double c = std::cos(sigma_ * x);
        double c_prev = 1.0, c_cur = c, acc = 0.0;
        for (std::size_t n = 1; n < coeffs_.size(); ++n) {
            acc += coeffs_[n] * c_cur;
            double c_next = 2.0 * c * c_cur - c_prev;
            c_prev = c_cur;
            c_cur = c_next;
        }
        return acc;
    }

    Kind kind_;
    std::optional<BandlimitedFunction> f_;
    double lo_ = 0.0, hi_ = 0.0;
    cplx scale_{0.0};
    double sigma_ = 0.0;
    std::vector<double> coeffs_;
    double sup_ = 0.0;
};

}  // namespace bernlab

#endif  // BERNLAB_WEIGHT_KERNEL_HPP
