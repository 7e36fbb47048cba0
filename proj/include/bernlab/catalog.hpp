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

#ifndef BERNLAB_CATALOG_HPP
#define BERNLAB_CATALOG_HPP

#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "bernlab/function.hpp"

namespace bernlab {

/**
 * Named constructions, all returned unnormalized (alpha = 1):
 *
 *   example34(sigma, eps)   cos(s z/2) cos sqrt((s z/2)^2 + eps^2) / (s^2 z^2 - pi^2),
 *                           0 < eps < pi/2
 *   thm46(sigma)            (2 cos(s x) - 1) / ((3 s x)^2 - pi^2)
 *   sinetype_quotient(sigma, deg)
 *                           (2 cos(s x) - 1) / q with q of the given degree built
 *                           from zeros of the numerator, deg in 1..4
 *   prop35_term(sigma, eps, x_n, y_n, a)
 *                           (x-a)^2 f(x) / ((x-x_n)(x-y_n)) on the example34 f
 *   shifted_sinc_sq(sigma, n)
 *                           (sin(s (x-n)/2) / (x-n))^2
 *   sinc(sigma)             sin(s x) / (pi x)
 */
inline const std::vector<std::pair<std::string, std::string>>& catalog_entries() {
    static const std::vector<std::pair<std::string, std::string>> entries = {
        {"example34", "sigma-type quotient with a non-separated zero set; params sigma, eps"},
        {"thm46", "quotient of 2cos(sigma x)-1 by a degree-2 polynomial; params sigma"},
        {"sinetype_quotient", "canonical quotient of 2cos(sigma x)-1; params sigma, deg"},
        {"prop35_term", "pinched quotient term; params sigma, eps, x_n, y_n, a"},
        {"shifted_sinc_sq", "(sin(sigma (x-n)/2)/(x-n))^2; params sigma, n"},
        {"sinc", "sin(sigma x)/(pi x); params sigma"},
    };
    return entries;
}

namespace detail {

inline double param_or(const std::map<std::string, double>& params,
                       const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline double param_required(const std::map<std::string, double>& params,
                             const std::string& key, const std::string& entry) {
    auto it = params.find(key);
    if (it == params.end())
        throw ConstructionError(entry + ": missing parameter '" + key + "'");
    return it->second;
}

inline Expr two_cos_minus_one(double sigma) {
    return sum(product(constant(cplx(2.0)), cos_scaled(sigma)), constant(cplx(-1.0)));
}

inline Expr example34_numerator(double sigma, double eps) {
    return product(cos_scaled(sigma / 2.0), cos_sqrt_shift(sigma / 2.0, eps));
}

}  // namespace detail

inline BandlimitedFunction make_example34(double sigma, double eps) {
    if (!(sigma > 0.0)) throw ConstructionError("example34: sigma must be positive");
    if (!(eps > 0.0 && eps < std::numbers::pi / 2.0))
        throw ConstructionError("example34: eps must lie in (0, pi/2)");
    const double pi = std::numbers::pi;
    Polynomial q({cplx(-pi * pi), cplx(0.0), cplx(sigma * sigma)});
    Expr expr = poly_quotient(detail::example34_numerator(sigma, eps), q);
    return BandlimitedFunction(std::move(expr), sigma, cplx(1.0), "example34",
                               {{"sigma", sigma}, {"eps", eps}});
}

inline BandlimitedFunction make_thm46(double sigma) {
    if (!(sigma > 0.0)) throw ConstructionError("thm46: sigma must be positive");
    const double pi = std::numbers::pi;
    Polynomial q({cplx(-pi * pi), cplx(0.0), cplx(9.0 * sigma * sigma)});
    Expr expr = poly_quotient(detail::two_cos_minus_one(sigma), q);
    return BandlimitedFunction(std::move(expr), sigma, cplx(1.0), "thm46",
                               {{"sigma", sigma}});
}

/// Quotient F/q for a caller-supplied numerator and polynomial; the zeros of q
/// (with multiplicity) must be zeros of F, which the quotient construction
/// verifies.
inline BandlimitedFunction make_sinetype_quotient(const BandlimitedFunction& F,
                                                  Polynomial q) {
    Expr expr = poly_quotient(F.expr(), std::move(q));
    return BandlimitedFunction(std::move(expr), F.sigma(), F.alpha(),
                               "sinetype_quotient", F.params());
}

/// Canonical degree-1..4 quotient of 2cos(sigma x)-1, denominator zeros drawn
/// from x = +-pi/(3 sigma) and +-7pi/(3 sigma).
inline BandlimitedFunction make_sinetype_quotient_canonical(double sigma, int deg) {
    if (!(sigma > 0.0))
        throw ConstructionError("sinetype_quotient: sigma must be positive");
    if (deg < 1 || deg > 4)
        throw ConstructionError("sinetype_quotient: deg must be in 1..4");
    const double pi = std::numbers::pi;
    const double z1 = pi / (3.0 * sigma);
    const double z7 = 7.0 * pi / (3.0 * sigma);
    std::vector<cplx> roots;
    switch (deg) {
        case 1: roots = {cplx(z1)}; break;
        case 2: roots = {cplx(z1), cplx(-z1)}; break;
        case 3: roots = {cplx(z1), cplx(-z1), cplx(z7)}; break;
        default: roots = {cplx(z1), cplx(-z1), cplx(z7), cplx(-z7)}; break;
    }
    double leading = 1.0;
    for (int i = 0; i < deg; ++i) leading *= 3.0 * sigma;
    Polynomial q = Polynomial::from_roots(roots, cplx(leading));
    Expr expr = poly_quotient(detail::two_cos_minus_one(sigma), std::move(q));
    return BandlimitedFunction(std::move(expr), sigma, cplx(1.0), "sinetype_quotient",
                               {{"sigma", sigma}, {"deg", static_cast<double>(deg)}});
}

/// (x - a)^2 f(x) / ((x - x_n)(x - y_n)); x_n and y_n must be zeros of f and
/// f(a) must be nonzero.
inline BandlimitedFunction make_prop35_term(const BandlimitedFunction& f, double x_n,
                                            double y_n, double a) {
    cplx fa = f.evaluate(cplx(a));
    double scale = std::abs(f.evaluate(cplx(a + 0.5))) + std::abs(fa) + 1e-300;
    if (std::abs(fa) <= 1e-9 * scale)
        throw ConstructionError("prop35_term: f(a) must be nonzero");
    Polynomial pinch = Polynomial::from_roots(std::vector<cplx>{cplx(a), cplx(a)});
    Polynomial pair = Polynomial::from_roots(std::vector<cplx>{cplx(x_n), cplx(y_n)});
    Expr expr = poly_quotient(poly_factor(f.expr(), std::move(pinch)), std::move(pair));
    std::map<std::string, double> params = f.params();
    params["x_n"] = x_n;
    params["y_n"] = y_n;
    params["a"] = a;
    return BandlimitedFunction(std::move(expr), f.sigma(), f.alpha(), "prop35_term",
                               std::move(params));
}

inline BandlimitedFunction make_shifted_sinc_sq(double sigma, double n) {
    if (!(sigma > 0.0))
        throw ConstructionError("shifted_sinc_sq: sigma must be positive");
    const double pi = std::numbers::pi;
    Expr base = product(constant(cplx(pi * pi)),
                        integer_power(sinc_kernel(sigma / 2.0), 2));
    Expr expr = shift_expr(std::move(base), cplx(n));
    return BandlimitedFunction(std::move(expr), sigma, cplx(1.0), "shifted_sinc_sq",
                               {{"sigma", sigma}, {"n", n}});
}

inline BandlimitedFunction make_sinc(double sigma) {
    if (!(sigma > 0.0)) throw ConstructionError("sinc: sigma must be positive");
    return BandlimitedFunction(sinc_kernel(sigma), sigma, cplx(1.0), "sinc",
                               {{"sigma", sigma}});
}

/// Catalog dispatch by name and parameter map.  prop35_term requires explicit
/// pair parameters x_n, y_n (located upstream) and builds on example34.
inline BandlimitedFunction make_catalog(const std::string& name,
                                        const std::map<std::string, double>& params) {
    const double pi = std::numbers::pi;
    double sigma = detail::param_or(params, "sigma", pi);
    if (name == "example34") {
        return make_example34(sigma, detail::param_required(params, "eps", name));
    } else if (name == "thm46") {
        return make_thm46(sigma);
    } else if (name == "sinetype_quotient") {
        int deg = static_cast<int>(detail::param_required(params, "deg", name));
        return make_sinetype_quotient_canonical(sigma, deg);
    } else if (name == "prop35_term") {
        BandlimitedFunction f =
            make_example34(sigma, detail::param_required(params, "eps", name));
        return make_prop35_term(f, detail::param_required(params, "x_n", name),
                                detail::param_required(params, "y_n", name),
                                detail::param_or(params, "a", 0.0));
    } else if (name == "shifted_sinc_sq") {
        return make_shifted_sinc_sq(sigma, detail::param_or(params, "n", 0.0));
    } else if (name == "sinc") {
        return make_sinc(sigma);
    }
    throw ConstructionError("unknown catalog entry '" + name + "'");
}

}  // namespace bernlab

#endif  // BERNLAB_CATALOG_HPP
