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

#ifndef BERNLAB_EXPR_HPP
#define BERNLAB_EXPR_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "bernlab/polynomial.hpp"

namespace bernlab {

class Expr;

namespace detail {

inline constexpr double kOverflowExponent = 700.0;

inline cplx pow_int(cplx base, int k) {
    cplx v(1.0);
    for (int i = 0; i < k; ++i) v *= base;
    return v;
}

struct CircleTaylor {
    std::vector<cplx> coeffs;  // c_0 .. c_{count-1}
    double circle_max = 0.0;
};

/**
 * Taylor coefficients of an analytic function about z0, recovered from
 * equispaced samples on a circle of the given radius.  Exact up to aliasing
 * of order `samples`, and conditioned in the value metric: the error of
 * c_j * radius^j is on the order of machine epsilon times the circle maximum.
 */
template <typename F>
CircleTaylor taylor_from_circle(const F& f, cplx z0, double radius, int count,
                                int samples = 128) {
    CircleTaylor out;
    std::vector<cplx> values(static_cast<std::size_t>(samples));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k < samples; ++k) {
        double theta = two_pi * k / samples;
        cplx z = z0 + radius * cplx(std::cos(theta), std::sin(theta));
        values[static_cast<std::size_t>(k)] = f(z);
        out.circle_max = std::max(out.circle_max, std::abs(values[static_cast<std::size_t>(k)]));
    }
    out.coeffs.resize(static_cast<std::size_t>(count));
    double rj = 1.0;
    for (int j = 0; j < count; ++j) {
        cplx acc(0.0);
        for (int k = 0; k < samples; ++k) {
            double theta = -two_pi * j * k / samples;
            acc += values[static_cast<std::size_t>(k)] * cplx(std::cos(theta), std::sin(theta));
        }
        out.coeffs[static_cast<std::size_t>(j)] = acc / (static_cast<double>(samples) * rj);
        rj *= radius;
    }
    return out;
}

}  // namespace detail

class ExprNode {
public:
    virtual ~ExprNode() = default;
    virtual cplx eval(cplx z) const = 0;
    virtual Expr derivative() const = 0;
    virtual Expr conjugated() const = 0;
    virtual bool structurally_real() const = 0;
    /// real point the algebraic decay is anchored at (shift composition)
    virtual double decay_center() const { return 0.0; }
    /// radius containing the expression's polynomial roots and shifts
    virtual double structure_radius() const { return 0.0; }
};

/**
 * Immutable expression for an entire function of exponential type.
 *
 * The node catalog covers the constructions used throughout this library:
 * scaled cosines/sines, cos and sinc of a shifted square root (entire since
 * both are even functions of the root), exponential lines e^{iaz}, sinc
 * kernels sin(sz)/(pi z), sums, products, polynomial factors and admissible
 * polynomial quotients, shifts, and integer powers.  All values are shared
 * and immutable; evaluation, differentiation and conjugation are pure.
 */
class Expr {
public:
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

    cplx operator()(cplx z) const { return node_->eval(z); }

    /// Exact symbolic derivative (the node set is closed under differentiation).
    Expr derivative() const { return node_->derivative(); }

    /// The conjugate expression z -> conj(f(conj z)).
    Expr conjugated() const { return node_->conjugated(); }

    /// Conservative structural check that f == f* (real function).
    bool structurally_real() const { return node_->structurally_real(); }

    double decay_center() const { return node_->decay_center(); }
    double structure_radius() const { return node_->structure_radius(); }

    const ExprNode& node() const { return *node_; }

private:
    std::shared_ptr<const ExprNode> node_;
};

Expr constant(cplx c);
Expr cos_scaled(double a);
Expr sin_scaled(double a);
Expr cos_sqrt_shift(double a, double eps);
Expr sinc_sqrt_shift(double a, double eps);
Expr exp_line(double a);
Expr sinc_kernel(double s);
Expr sum(Expr left, Expr right);
Expr product(Expr left, Expr right);
Expr poly_factor(Expr e, Polynomial p);
Expr poly_quotient(Expr numerator, Polynomial denominator, int power = 1);
Expr shift_expr(Expr e, cplx t);
Expr integer_power(Expr e, int k);

namespace nodes {

class Constant final : public ExprNode {
public:
    explicit Constant(cplx c) : c_(c) {}
    cplx eval(cplx) const override { return c_; }
    Expr derivative() const override { return constant(cplx(0.0)); }
    Expr conjugated() const override { return constant(std::conj(c_)); }
    bool structurally_real() const override { return c_.imag() == 0.0; }
    cplx value() const { return c_; }

private:
    cplx c_;
};

class CosScaled final : public ExprNode {
public:
    explicit CosScaled(double a) : a_(a) {}
    cplx eval(cplx z) const override {
        if (std::abs(a_ * z.imag()) > detail::kOverflowExponent)
            throw EvalRangeError("cos(a z) overflow far from the real axis");
        return std::cos(a_ * z);
    }
    Expr derivative() const override {
        return product(constant(cplx(-a_)), sin_scaled(a_));
    }
    Expr conjugated() const override { return cos_scaled(a_); }
    bool structurally_real() const override { return true; }

private:
    double a_;
};

class SinScaled final : public ExprNode {
public:
    explicit SinScaled(double a) : a_(a) {}
    cplx eval(cplx z) const override {
        if (std::abs(a_ * z.imag()) > detail::kOverflowExponent)
            throw EvalRangeError("sin(a z) overflow far from the real axis");
        return std::sin(a_ * z);
    }
    Expr derivative() const override {
        return product(constant(cplx(a_)), cos_scaled(a_));
    }
    Expr conjugated() const override { return sin_scaled(a_); }
    bool structurally_real() const override { return true; }

private:
    double a_;
};

/// cos sqrt((a z)^2 + eps^2); entire because cosine is even, so the branch
/// of the square root is irrelevant (the principal branch is used).
class CosSqrtShift final : public ExprNode {
public:
    CosSqrtShift(double a, double eps) : a_(a), eps_(eps) {}
    cplx eval(cplx z) const override {
        cplx w = (a_ * z) * (a_ * z) + eps_ * eps_;
        cplx s = std::sqrt(w);
        if (std::abs(s.imag()) > detail::kOverflowExponent)
            throw EvalRangeError("cos sqrt overflow far from the real axis");
        return std::cos(s);
    }
    Expr derivative() const override {
        return poly_factor(sinc_sqrt_shift(a_, eps_),
                           Polynomial({cplx(0.0), cplx(-a_ * a_)}));
    }
    Expr conjugated() const override { return cos_sqrt_shift(a_, eps_); }
    bool structurally_real() const override { return true; }

private:
    double a_, eps_;
};

/// sin(sqrt w)/sqrt w with w = (a z)^2 + eps^2; the even companion of
/// CosSqrtShift needed to close the node set under differentiation.
class SincSqrtShift final : public ExprNode {
public:
    SincSqrtShift(double a, double eps) : a_(a), eps_(eps) {}
    cplx eval(cplx z) const override {
        cplx w = (a_ * z) * (a_ * z) + eps_ * eps_;
        if (std::abs(w) < 1e-2) {
            // sin(sqrt w)/sqrt w = sum (-1)^k w^k / (2k+1)!
            cplx term(1.0), acc(1.0);
            for (int k = 1; k <= 12; ++k) {
                term *= -w / static_cast<double>((2 * k) * (2 * k + 1));
                acc += term;
                if (std::abs(term) < 1e-18) break;
            }
            return acc;
        }
        cplx s = std::sqrt(w);
        if (std::abs(s.imag()) > detail::kOverflowExponent)
            throw EvalRangeError("sinc sqrt overflow far from the real axis");
        return std::sin(s) / s;
    }
    Expr derivative() const override {
        // d/dz S(w) = a^2 z (C(w) - S(w)) / w
        Expr numerator = poly_factor(
            sum(cos_sqrt_shift(a_, eps_), product(constant(cplx(-1.0)), sinc_sqrt_shift(a_, eps_))),
            Polynomial({cplx(0.0), cplx(a_ * a_)}));
        return poly_quotient(numerator,
                             Polynomial({cplx(eps_ * eps_), cplx(0.0), cplx(a_ * a_)}));
    }
    Expr conjugated() const override { return sinc_sqrt_shift(a_, eps_); }
    bool structurally_real() const override { return true; }

private:
    double a_, eps_;
};

class ExpLine final : public ExprNode {
public:
    explicit ExpLine(double a) : a_(a) {}
    cplx eval(cplx z) const override {
        if (std::abs(a_ * z.imag()) > detail::kOverflowExponent)
            throw EvalRangeError("exp(i a z) overflow far from the real axis");
        return std::exp(cplx(0.0, a_) * z);
    }
    Expr derivative() const override {
        return product(constant(cplx(0.0, a_)), exp_line(a_));
    }
    Expr conjugated() const override { return exp_line(-a_); }
    bool structurally_real() const override { return a_ == 0.0; }

private:
    double a_;
};

class SincKernel final : public ExprNode {
public:
    explicit SincKernel(double s) : s_(s) {}
    cplx eval(cplx z) const override {
        cplx u = s_ * z;
        if (std::abs(u) < 0.5) {
            cplx u2 = u * u, term(1.0), acc(1.0);
            for (int k = 1; k <= 10; ++k) {
                term *= -u2 / static_cast<double>((2 * k) * (2 * k + 1));
                acc += term;
                if (std::abs(term) < 1e-18) break;
            }
            return acc * (s_ / std::numbers::pi);
        }
        if (std::abs(u.imag()) > detail::kOverflowExponent)
            throw EvalRangeError("sinc overflow far from the real axis");
        return std::sin(u) / (std::numbers::pi * z);
    }
    Expr derivative() const override {
        // (s z cos(s z) - sin(s z)) / (pi z^2), a multiplicity-3 numerator zero at 0
        Expr numerator =
            sum(poly_factor(cos_scaled(s_),
                            Polynomial({cplx(0.0), cplx(s_ / std::numbers::pi)})),
                product(constant(cplx(-1.0 / std::numbers::pi)), sin_scaled(s_)));
        return poly_quotient(numerator, Polynomial({cplx(0.0), cplx(0.0), cplx(1.0)}));
    }
    Expr conjugated() const override { return sinc_kernel(s_); }
    bool structurally_real() const override { return true; }

private:
    double s_;
};

class Sum final : public ExprNode {
public:
    Sum(Expr l, Expr r) : l_(std::move(l)), r_(std::move(r)) {}
    cplx eval(cplx z) const override { return l_(z) + r_(z); }
    Expr derivative() const override { return sum(l_.derivative(), r_.derivative()); }
    Expr conjugated() const override { return sum(l_.conjugated(), r_.conjugated()); }
    bool structurally_real() const override {
        return l_.structurally_real() && r_.structurally_real();
    }
    double decay_center() const override {
        double a = l_.decay_center(), b = r_.decay_center();
        return a == b ? a : 0.0;
    }
    double structure_radius() const override {
        return std::max(l_.structure_radius(), r_.structure_radius());
    }

private:
    Expr l_, r_;
};

class Product final : public ExprNode {
public:
    Product(Expr l, Expr r) : l_(std::move(l)), r_(std::move(r)) {}
    cplx eval(cplx z) const override { return l_(z) * r_(z); }
    Expr derivative() const override {
        return sum(product(l_.derivative(), r_), product(l_, r_.derivative()));
    }
    Expr conjugated() const override {
        return product(l_.conjugated(), r_.conjugated());
    }
    bool structurally_real() const override {
        return l_.structurally_real() && r_.structurally_real();
    }
    double decay_center() const override {
        if (dynamic_cast<const Constant*>(&l_.node())) return r_.decay_center();
        if (dynamic_cast<const Constant*>(&r_.node())) return l_.decay_center();
        double a = l_.decay_center(), b = r_.decay_center();
        return a == b ? a : 0.0;
    }
    double structure_radius() const override {
        return std::max(l_.structure_radius(), r_.structure_radius());
    }

private:
    Expr l_, r_;
};

class PolyFactor final : public ExprNode {
public:
    PolyFactor(Expr e, Polynomial p) : e_(std::move(e)), p_(std::move(p)) {}
    cplx eval(cplx z) const override { return e_(z) * p_.eval(z); }
    Expr derivative() const override {
        Polynomial dp = p_.derivative();
        Expr first = poly_factor(e_.derivative(), p_);
        if (dp.degree() == 0)
            return sum(std::move(first), product(constant(dp.coefficient(0)), e_));
        return sum(std::move(first), poly_factor(e_, std::move(dp)));
    }
    Expr conjugated() const override {
        return poly_factor(e_.conjugated(), p_.conjugated());
    }
    bool structurally_real() const override {
        return e_.structurally_real() && p_.has_real_coefficients();
    }
    double decay_center() const override { return e_.decay_center(); }
    double structure_radius() const override {
        return std::max(e_.structure_radius(), p_.root_magnitude_bound());
    }

private:
    Expr e_;
    Polynomial p_;
};

/**
 * Admissible quotient e / q^power.  Every zero of the denominator (with
 * multiplicity) must be a zero of the numerator with at least that
 * multiplicity; this is verified numerically at construction by recovering
 * the numerator's Taylor coefficients on a small circle around each
 * denominator zero.  Evaluation inside a pole-guard neighbourhood of a
 * denominator zero switches to the cached local series of the ratio.
 */
class PolyQuotient final : public ExprNode {
public:
    PolyQuotient(Expr numerator, Polynomial den, int power)
        : num_(std::move(numerator)), den_(std::move(den)), power_(power) {
        if (power_ < 1) throw ConstructionError("quotient power must be >= 1");
        if (den_.is_zero()) throw ConstructionError("zero denominator");
        build_series();
    }

    cplx eval(cplx z) const override {
        for (const LocalSeries& s : series_) {
            if (std::abs(z - s.center) < s.guard_radius) return eval_series(s, z);
        }
        return num_(z) / detail::pow_int(den_.eval(z), power_);
    }

    Expr derivative() const override {
        // (N / q^m)' = (N' q - m N q') / q^{m+1}
        Expr numerator =
            sum(poly_factor(num_.derivative(), den_),
                product(constant(cplx(-static_cast<double>(power_))),
                        poly_factor(num_, den_.derivative())));
        return poly_quotient(std::move(numerator), den_, power_ + 1);
    }

    Expr conjugated() const override {
        return poly_quotient(num_.conjugated(), den_.conjugated(), power_);
    }

    bool structurally_real() const override {
        return num_.structurally_real() && den_.has_real_coefficients();
    }
    double decay_center() const override { return num_.decay_center(); }
    double structure_radius() const override {
        return std::max(num_.structure_radius(), den_.root_magnitude_bound());
    }

    const Polynomial& denominator() const { return den_; }
    int power() const { return power_; }
    const Expr& numerator() const { return num_; }

private:
    struct LocalSeries {
        cplx center;
        double guard_radius;
        int order;                       // total multiplicity cancelled
        std::vector<cplx> num_coeffs;    // ratio-numerator series in (z - center)
        std::vector<cplx> den_coeffs;    // denominator series after cancellation
    };

    Expr num_;
    Polynomial den_;
    int power_;
    std::vector<LocalSeries> series_;

    static cplx horner(const std::vector<cplx>& c, cplx d) {
        cplx v = c.back();
        for (std::size_t i = c.size() - 1; i-- > 0;) v = v * d + c[i];
        return v;
    }

    static cplx eval_series(const LocalSeries& s, cplx z) {
        cplx d = z - s.center;
        return horner(s.num_coeffs, d) / horner(s.den_coeffs, d);
    }

    void build_series() {
        const auto& roots = den_.roots();
        Polynomial den_pow = den_.pow(power_);
        constexpr int kExtraTerms = 12;
        for (const Polynomial::Root& root : roots) {
            double gap = std::numeric_limits<double>::infinity();
            for (const Polynomial::Root& other : roots) {
                if (&other == &root) continue;
                gap = std::min(gap, std::abs(other.location - root.location));
            }
            const int total_mult = root.multiplicity * power_;
            double rho = std::min(1e-4 * (1.0 + std::abs(root.location)),
                                  std::isfinite(gap) ? gap / 8.0 : 1e300);
            double radius = std::min({8.0 * rho, std::isfinite(gap) ? gap / 3.0 : 1e300,
                                      0.05 * (1.0 + std::abs(root.location))});
            radius = std::max(radius, 4.0 * rho);

            detail::CircleTaylor ct = detail::taylor_from_circle(
                [this](cplx z) { return num_(z); }, root.location, radius,
                total_mult + kExtraTerms);
            const double scale = ct.circle_max;
            if (scale > 0.0) {
                double rj = 1.0;
                for (int j = 0; j < total_mult; ++j) {
                    if (std::abs(ct.coeffs[static_cast<std::size_t>(j)]) * rj > 1e-7 * scale) {
                        throw ConstructionError(
                            "inadmissible quotient: denominator zero at re=" +
                            std::to_string(root.location.real()) + " im=" +
                            std::to_string(root.location.imag()) +
                            " is not a numerator zero of multiplicity " +
                            std::to_string(total_mult));
                    }
                    rj *= radius;
                }
            }
            LocalSeries ls;
            ls.center = root.location;
            ls.guard_radius = rho;
            ls.order = total_mult;
            ls.num_coeffs.assign(ct.coeffs.begin() + total_mult, ct.coeffs.end());
            std::vector<cplx> dt = den_pow.taylor_at(root.location);
            dt.resize(static_cast<std::size_t>(total_mult + kExtraTerms), cplx(0.0));
            ls.den_coeffs.assign(dt.begin() + total_mult, dt.end());
            series_.push_back(std::move(ls));
        }
    }
};

class ShiftNode final : public ExprNode {
public:
    ShiftNode(Expr e, cplx t) : e_(std::move(e)), t_(t) {}
    cplx eval(cplx z) const override { return e_(z - t_); }
    Expr derivative() const override { return shift_expr(e_.derivative(), t_); }
    Expr conjugated() const override {
        return shift_expr(e_.conjugated(), std::conj(t_));
    }
    bool structurally_real() const override {
        return e_.structurally_real() && t_.imag() == 0.0;
    }
    double decay_center() const override { return e_.decay_center() + t_.real(); }
    double structure_radius() const override {
        return e_.structure_radius() + std::abs(t_);
    }

private:
    Expr e_;
    cplx t_;
};

class IntegerPower final : public ExprNode {
public:
    IntegerPower(Expr e, int k) : e_(std::move(e)), k_(k) {
        if (k_ < 1) throw ConstructionError("integer power must be >= 1");
    }
    cplx eval(cplx z) const override { return detail::pow_int(e_(z), k_); }
    Expr derivative() const override {
        Expr inner = (k_ == 2) ? e_ : integer_power(e_, k_ - 1);
        return product(constant(cplx(static_cast<double>(k_))),
                       product(std::move(inner), e_.derivative()));
    }
    Expr conjugated() const override { return integer_power(e_.conjugated(), k_); }
    bool structurally_real() const override { return e_.structurally_real(); }
    double decay_center() const override { return e_.decay_center(); }
    double structure_radius() const override { return e_.structure_radius(); }

private:
    Expr e_;
    int k_;
};

}  // namespace nodes

inline Expr constant(cplx c) { return Expr(std::make_shared<nodes::Constant>(c)); }
inline Expr cos_scaled(double a) { return Expr(std::make_shared<nodes::CosScaled>(a)); }
inline Expr sin_scaled(double a) { return Expr(std::make_shared<nodes::SinScaled>(a)); }
inline Expr cos_sqrt_shift(double a, double eps) {
    return Expr(std::make_shared<nodes::CosSqrtShift>(a, eps));
}
inline Expr sinc_sqrt_shift(double a, double eps) {
    return Expr(std::make_shared<nodes::SincSqrtShift>(a, eps));
}
inline Expr exp_line(double a) { return Expr(std::make_shared<nodes::ExpLine>(a)); }
inline Expr sinc_kernel(double s) { return Expr(std::make_shared<nodes::SincKernel>(s)); }

inline Expr sum(Expr left, Expr right) {
    if (auto* c = dynamic_cast<const nodes::Constant*>(&left.node());
        c && c->value() == cplx(0.0))
        return right;
    if (auto* c = dynamic_cast<const nodes::Constant*>(&right.node());
        c && c->value() == cplx(0.0))
        return left;
    return Expr(std::make_shared<nodes::Sum>(std::move(left), std::move(right)));
}

inline Expr product(Expr left, Expr right) {
    if (auto* c = dynamic_cast<const nodes::Constant*>(&left.node())) {
        if (c->value() == cplx(0.0)) return constant(cplx(0.0));
        if (c->value() == cplx(1.0)) return right;
    }
    if (auto* c = dynamic_cast<const nodes::Constant*>(&right.node())) {
        if (c->value() == cplx(0.0)) return constant(cplx(0.0));
        if (c->value() == cplx(1.0)) return left;
    }
    return Expr(std::make_shared<nodes::Product>(std::move(left), std::move(right)));
}

inline Expr poly_factor(Expr e, Polynomial p) {
    if (p.degree() == 0) return product(constant(p.coefficient(0)), std::move(e));
    return Expr(std::make_shared<nodes::PolyFactor>(std::move(e), std::move(p)));
}

inline Expr poly_quotient(Expr numerator, Polynomial denominator, int power) {
    if (denominator.degree() == 0) {
        cplx c = denominator.coefficient(0);
        if (c == cplx(0.0)) throw ConstructionError("zero denominator");
        return product(constant(1.0 / detail::pow_int(c, power)), std::move(numerator));
    }
    return Expr(std::make_shared<nodes::PolyQuotient>(std::move(numerator),
                                                      std::move(denominator), power));
}

inline Expr shift_expr(Expr e, cplx t) {
    if (t == cplx(0.0)) return e;
    return Expr(std::make_shared<nodes::ShiftNode>(std::move(e), t));
}

inline Expr integer_power(Expr e, int k) {
    if (k == 1) return e;
    return Expr(std::make_shared<nodes::IntegerPower>(std::move(e), k));
}

}  // namespace bernlab

#endif  // BERNLAB_EXPR_HPP
