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

#ifndef BERNLAB_POLYNOMIAL_HPP
#define BERNLAB_POLYNOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bernlab {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Construction-time validation failure (bad parameters, inadmissible quotients).
struct ConstructionError : Error {
    using Error::Error;
};

/// Evaluation outside the representable range (e.g. exp overflow far off the axis).
struct EvalRangeError : Error {
    using Error::Error;
};

/**
 * Polynomial with complex coefficients, stored in ascending degree order.
 *
 * Roots of degree <= 4 are found in closed form (with a Newton polish pass);
 * higher degrees must be constructed with their roots attached, e.g. via
 * from_roots() or products of polynomials with known roots.  Solving an
 * unknown polynomial of degree > 4 is rejected.
 */
class Polynomial {
public:
    struct Root {
        cplx location;
        int multiplicity;
    };

    Polynomial() : coeffs_{cplx(0.0)} {}

    explicit Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
        trim();
    }

    Polynomial(std::initializer_list<cplx> coeffs)
        : Polynomial(std::vector<cplx>(coeffs)) {}

    static Polynomial from_roots(std::span<const cplx> roots, cplx leading = cplx(1.0)) {
        std::vector<cplx> asc{leading};
        for (cplx r : roots) {
            std::vector<cplx> next(asc.size() + 1, cplx(0.0));
            for (std::size_t j = 0; j < asc.size(); ++j) {
                next[j] -= r * asc[j];
                next[j + 1] += asc[j];
            }
            asc = std::move(next);
        }
        Polynomial p(std::move(asc));
        p.roots_ = cluster_roots(std::vector<cplx>(roots.begin(), roots.end()));
        return p;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<cplx>& coefficients() const { return coeffs_; }

    cplx coefficient(int k) const {
        return (k >= 0 && k <= degree()) ? coeffs_[static_cast<std::size_t>(k)] : cplx(0.0);
    }

    bool is_zero() const { return degree() == 0 && coeffs_[0] == cplx(0.0); }

    cplx eval(cplx z) const {
        cplx v = coeffs_.back();
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;)
            v = v * z + coeffs_[i];
        return v;
    }

    Polynomial derivative() const {
        if (degree() == 0) return Polynomial({cplx(0.0)});
        std::vector<cplx> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = coeffs_[k] * static_cast<double>(k);
        return Polynomial(std::move(d));
    }

    Polynomial operator*(const Polynomial& other) const {
        std::vector<cplx> c(coeffs_.size() + other.coeffs_.size() - 1, cplx(0.0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * other.coeffs_[j];
        Polynomial p(std::move(c));
        if (roots_ && other.roots_ && !is_zero() && !other.is_zero()) {
            std::vector<Root> merged = *roots_;
            for (const Root& r : *other.roots_) merge_root(merged, r);
            p.roots_ = std::move(merged);
        }
        return p;
    }

    Polynomial pow(int k) const {
        if (k < 0) throw ConstructionError("polynomial power must be nonnegative");
        if (!roots_ && degree() >= 1 && degree() <= 4) (void)roots();
        Polynomial result({cplx(1.0)});
        result.roots_ = std::vector<Root>{};
        for (int i = 0; i < k; ++i) result = result * (*this);
        return result;
    }

    /// Coefficient-wise conjugation; roots map to their conjugates.
    Polynomial conjugated() const {
        std::vector<cplx> c(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = std::conj(coeffs_[i]);
        Polynomial p(std::move(c));
        if (roots_) {
            std::vector<Root> r = *roots_;
            for (Root& root : r) root.location = std::conj(root.location);
            std::sort(r.begin(), r.end(), root_order);
            p.roots_ = std::move(r);
        }
        return p;
    }

    bool has_real_coefficients(double tol = 0.0) const {
        for (cplx c : coeffs_)
            if (std::abs(c.imag()) > tol) return false;
        return true;
    }

    /// Bound on root magnitudes: exact when roots are known, Cauchy otherwise.
    double root_magnitude_bound() const {
        if (degree() <= 0) return 0.0;
        if (roots_) {
            double m = 0.0;
            for (const Root& r : *roots_) m = std::max(m, std::abs(r.location));
            return m;
        }
        double m = 0.0;
        for (int i = 0; i < degree(); ++i)
            m = std::max(m, std::abs(coeffs_[static_cast<std::size_t>(i)] / coeffs_.back()));
        return 1.0 + m;
    }

    /// Taylor coefficients about z0 (repeated synthetic division).
    std::vector<cplx> taylor_at(cplx z0) const {
        std::vector<cplx> work = coeffs_;
        std::vector<cplx> out;
        out.reserve(coeffs_.size());
        const std::size_t n = coeffs_.size();
        for (std::size_t k = 0; k < n; ++k) {
            // one pass: work <- work / (z - z0), remainder is the next coefficient
            cplx rem = work.back();
            for (std::size_t i = work.size() - 1; i-- > 0;) {
                cplx tmp = work[i];
                work[i] = rem;
                rem = tmp + rem * z0;
            }
            out.push_back(rem);
            work.pop_back();
            if (work.empty()) break;
        }
        out.resize(n, cplx(0.0));
        return out;
    }

    /**
     * Roots with multiplicity, sorted by (re, im).  Computed on demand by
     * closed form for degree <= 4 and polished by Newton iteration; throws
     * for unknown roots of degree > 4.
     */
    const std::vector<Root>& roots() const {
        if (!roots_) {
            if (degree() > 4)
                throw ConstructionError(
                    "closed-form root solving is limited to degree <= 4");
            roots_ = solve_closed_form();
        }
        return *roots_;
    }

    bool roots_known() const { return roots_.has_value(); }

private:
    std::vector<cplx> coeffs_;
    mutable std::optional<std::vector<Root>> roots_;

    static bool root_order(const Root& a, const Root& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    }

    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(cplx(0.0));
    }

    double coeff_scale() const {
        double s = 0.0;
        for (cplx c : coeffs_) s = std::max(s, std::abs(c));
        return s > 0.0 ? s : 1.0;
    }

    static void merge_root(std::vector<Root>& rs, const Root& r) {
        for (Root& existing : rs) {
            double scale = 1.0 + std::abs(existing.location);
            if (std::abs(existing.location - r.location) <= 1e-10 * scale) {
                existing.multiplicity += r.multiplicity;
                return;
            }
        }
        rs.push_back(r);
        std::sort(rs.begin(), rs.end(), root_order);
    }

    static std::vector<Root> cluster_roots(std::vector<cplx> raw) {
        std::sort(raw.begin(), raw.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        std::vector<Root> out;
        for (cplx z : raw) merge_root(out, Root{z, 1});
        return out;
    }

    cplx newton_polish(cplx z) const {
        Polynomial d = derivative();
        for (int it = 0; it < 8; ++it) {
            cplx fz = eval(z);
            cplx dz = d.eval(z);
            if (std::abs(dz) == 0.0) break;
            cplx step = fz / dz;
            z -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
        }
        return z;
    }

    std::vector<Root> solve_closed_form() const {
        const int n = degree();
        std::vector<cplx> raw;
        if (n <= 0) {
            return {};
        } else if (n == 1) {
            raw = {-coeffs_[0] / coeffs_[1]};
        } else if (n == 2) {
            raw = solve_quadratic(coeffs_[2], coeffs_[1], coeffs_[0]);
        } else if (n == 3) {
            raw = solve_cubic(coeffs_[3], coeffs_[2], coeffs_[1], coeffs_[0]);
        } else {
            raw = solve_quartic(coeffs_[4], coeffs_[3], coeffs_[2], coeffs_[1], coeffs_[0]);
        }
        for (cplx& z : raw) z = newton_polish(z);
        std::vector<Root> out = cluster_roots(std::move(raw));
        // re-verify by evaluation, per the type contract
        double scale = coeff_scale();
        for (const Root& r : out) {
            double m = std::abs(eval(r.location));
            double local = scale * std::pow(1.0 + std::abs(r.location), degree());
            if (!(m <= 1e-7 * local))
                throw ConstructionError("closed-form root failed residual re-verification");
        }
        return out;
    }

    static std::vector<cplx> solve_quadratic(cplx a, cplx b, cplx c) {
        cplx disc = std::sqrt(b * b - 4.0 * a * c);
        // pick the sign that avoids cancellation in -b -/+ disc
        cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                         : -0.5 * (b - disc);
        std::vector<cplx> out;
        if (std::abs(q) > 0.0) {
            out = {q / a, c / q};
        } else {
            out = {cplx(0.0), -b / a};
        }
        return out;
    }

    static std::vector<cplx> solve_cubic(cplx a, cplx b, cplx c, cplx d) {
        // depressed cubic t^3 + p t + q with z = t - b/(3a)
        cplx shift = b / (3.0 * a);
        cplx p = c / a - shift * shift * 3.0;
        cplx q = 2.0 * shift * shift * shift - shift * (c / a) + d / a;
        cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        cplx u3 = -q / 2.0 + disc;
        if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
        cplx u = std::pow(u3, 1.0 / 3.0);
        std::vector<cplx> out;
        const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
        for (int k = 0; k < 3; ++k) {
            cplx uk = u;
            for (int i = 0; i < k; ++i) uk *= omega;
            cplx t = (std::abs(uk) > 0.0) ? uk - p / (3.0 * uk) : cplx(0.0);
            out.push_back(t - shift);
        }
        return out;
    }

    static std::vector<cplx> solve_quartic(cplx a, cplx b, cplx c, cplx d, cplx e) {
        // Ferrari: depress with z = t - b/(4a), then factor through a resolvent cubic.
        cplx A = b / a, B = c / a, C = d / a, D = e / a;
        cplx shift = A / 4.0;
        cplx p = B - 3.0 * A * A / 8.0;
        cplx q = C - A * B / 2.0 + A * A * A / 8.0;
        cplx r = D - A * C / 4.0 + A * A * B / 16.0 - 3.0 * A * A * A * A / 256.0;
        std::vector<cplx> out;
        if (std::abs(q) <= 1e-14 * (1.0 + std::abs(p) + std::abs(r))) {
            // biquadratic
            std::vector<cplx> w = solve_quadratic(cplx(1.0), p, r);
            for (cplx wi : w) {
                cplx s = std::sqrt(wi);
                out.push_back(s - shift);
                out.push_back(-s - shift);
            }
            return out;
        }
        std::vector<cplx> res =
            solve_cubic(cplx(1.0), 2.0 * p, p * p - 4.0 * r, -q * q);
        cplx y = res[0];
        for (cplx cand : res)
            if (std::abs(cand) > std::abs(y)) y = cand;
        cplx w = std::sqrt(y);
        cplx t1 = (p + y - q / w) / 2.0;
        cplx t2 = (p + y + q / w) / 2.0;
        for (cplx z : solve_quadratic(cplx(1.0), w, t1)) out.push_back(z - shift);
        for (cplx z : solve_quadratic(cplx(1.0), -w, t2)) out.push_back(z - shift);
        return out;
    }
};

}  // namespace bernlab

#endif  // BERNLAB_POLYNOMIAL_HPP
