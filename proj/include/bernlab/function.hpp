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

#ifndef BERNLAB_FUNCTION_HPP
#define BERNLAB_FUNCTION_HPP

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>

#include "bernlab/expr.hpp"

namespace bernlab {

namespace detail {

inline std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

}  // namespace detail

/**
 * A function of nominal exponential type sigma together with a multiplicative
 * normalization scalar.  The expression is immutable; all operations return
 * new values.
 */
class BandlimitedFunction {
public:
    BandlimitedFunction(Expr expr, double sigma, cplx alpha = cplx(1.0),
                        std::string name = "anonymous",
                        std::map<std::string, double> params = {})
        : expr_(std::move(expr)),
          sigma_(sigma),
          alpha_(alpha),
          name_(std::move(name)),
          params_(std::move(params)) {
        if (!(sigma_ > 0.0)) throw ConstructionError("sigma must be positive");
    }

    cplx evaluate(cplx z) const {
        cplx v = alpha_ * expr_(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvalRangeError("non-finite evaluation");
        return v;
    }

    cplx operator()(cplx z) const { return evaluate(z); }

    BandlimitedFunction conjugate() const {
        return BandlimitedFunction(expr_.conjugated(), sigma_, std::conj(alpha_),
                                   name_ + "*", params_);
    }

    BandlimitedFunction derivative() const {
        return BandlimitedFunction(expr_.derivative(), sigma_, alpha_, name_ + "'",
                                   params_);
    }

    BandlimitedFunction with_alpha(cplx alpha) const {
        return BandlimitedFunction(expr_, sigma_, alpha, name_, params_);
    }

    /// True when f == f* pointwise; checked structurally first, then sampled.
    bool is_real_function() const {
        if (expr_.structurally_real() && alpha_.imag() == 0.0) return true;
        Expr star = expr_.conjugated();
        for (int k = 0; k < 12; ++k) {
            cplx z(0.37 + 0.61 * k, 0.11 * ((k % 3) - 1));
            cplx a = alpha_ * expr_(z);
            cplx b = std::conj(alpha_) * star(z);
            double scale = std::max({std::abs(a), std::abs(b), 1e-30});
            if (std::abs(a - b) > 1e-11 * scale) return false;
        }
        return true;
    }

    const Expr& expr() const { return expr_; }
    double sigma() const { return sigma_; }
    cplx alpha() const { return alpha_; }
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }

    /// Canonical structured-text descriptor: name, sorted parameters, alpha.
    std::string descriptor() const {
        std::string out = name_ + "(";
        bool first = true;
        for (const auto& [key, value] : params_) {
            if (!first) out += ",";
            out += key + "=" + detail::format_sig(value);
            first = false;
        }
        out += ")[alpha=" + detail::format_sig(alpha_.real());
        if (alpha_.imag() != 0.0) out += "+" + detail::format_sig(alpha_.imag()) + "i";
        out += "]";
        return out;
    }

private:
    Expr expr_;
    double sigma_;
    cplx alpha_;
    std::string name_;
    std::map<std::string, double> params_;
};

}  // namespace bernlab

#endif  // BERNLAB_FUNCTION_HPP
