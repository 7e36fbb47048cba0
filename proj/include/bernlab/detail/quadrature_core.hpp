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

#ifndef BERNLAB_DETAIL_QUADRATURE_CORE_HPP
#define BERNLAB_DETAIL_QUADRATURE_CORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

namespace bernlab::detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants)
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    std::complex<double> value;
    double error;
};

/// One Gauss-Kronrod 7-15 pass over [a, b].
template <typename F>
PanelResult gk15(const F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    std::complex<double> acc_k(0.0), acc_g(0.0);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGK15Nodes[j];
        const std::complex<double> pair = f(mid - dx) + f(mid + dx);
        acc_k += kGK15WeightsK[j] * pair;
        if (j % 2 == 1) acc_g += kGK15WeightsG[j / 2] * pair;
    }
    const std::complex<double> centre = f(mid);
    acc_k += kGK15WeightsK[7] * centre;
    acc_g += kGK15WeightsG[3] * centre;
    return {acc_k * half, std::abs(acc_k - acc_g) * std::abs(half)};
}

struct Segment {
    double a, b;
    std::complex<double> value;
    double error;
};

struct IntegralEstimate {
    std::complex<double> value{0.0};
    double error = 0.0;
    int panels = 0;
    bool tolerance_met = true;
};

/// Neumaier-compensated, position-ordered summation: deterministic for a
/// given segment set regardless of the subdivision history.
inline IntegralEstimate sum_segments(std::vector<Segment>& segs) {
    std::sort(segs.begin(), segs.end(),
              [](const Segment& s, const Segment& t) { return s.a < t.a; });
    std::complex<double> sum(0.0), comp(0.0);
    double err = 0.0;
    for (const Segment& s : segs) {
        std::complex<double> t = sum + s.value;
        std::complex<double> corr(
            std::abs(sum.real()) >= std::abs(s.value.real())
                ? (sum.real() - t.real()) + s.value.real()
                : (s.value.real() - t.real()) + sum.real(),
            std::abs(sum.imag()) >= std::abs(s.value.imag())
                ? (sum.imag() - t.imag()) + s.value.imag()
                : (s.value.imag() - t.imag()) + sum.imag());
        comp += corr;
        sum = t;
        err += s.error;
    }
    IntegralEstimate out;
    out.value = sum + comp;
    out.error = err;
    out.panels = static_cast<int>(segs.size());
    return out;
}

/**
 * Adaptive panel integration on [a, b].  Initial panels are bounded by the
 * supplied breakpoints (integrand kinks or jumps) and by max_initial_len;
 * panels are then split worst-error-first until the accumulated error
 * estimate meets the tolerance or the panel budget is exhausted.
 */
template <typename F>
IntegralEstimate adaptive_integrate(const F& f, double a, double b,
                                    std::vector<double> breakpoints, double tol,
                                    double max_initial_len, int max_panels = 20000) {
    IntegralEstimate out;
    if (!(b > a)) return out;

    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> edges;
    for (double x : breakpoints) {
        if (x < a || x > b) continue;
        if (!edges.empty() && x - edges.back() < 1e-14 * (1.0 + std::abs(x))) continue;
        edges.push_back(x);
    }
    if (edges.empty() || edges.front() > a) edges.insert(edges.begin(), a);
    if (edges.back() < b) edges.push_back(b);

    auto cmp = [](const Segment& s, const Segment& t) {
        if (s.error != t.error) return s.error < t.error;
        return s.a > t.a;
    };
    std::priority_queue<Segment, std::vector<Segment>, decltype(cmp)> queue(cmp);
    double total_err = 0.0;
    int panels = 0;

    auto push_panel = [&](double lo, double hi) {
        PanelResult pr = gk15(f, lo, hi);
        queue.push(Segment{lo, hi, pr.value, pr.error});
        total_err += pr.error;
        ++panels;
    };

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_initial_len)));
        for (int p = 0; p < pieces; ++p)
            push_panel(lo + (hi - lo) * p / pieces, lo + (hi - lo) * (p + 1) / pieces);
    }

    while (total_err > tol && panels < max_panels) {
        Segment worst = queue.top();
        if (worst.error <= tol / (4.0 * panels + 4.0)) break;
        queue.pop();
        total_err -= worst.error;
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // cannot split further
            queue.push(worst);
            total_err += worst.error;
            break;
        }
        push_panel(worst.a, mid);
        push_panel(mid, worst.b);
    }

    std::vector<Segment> segs;
    segs.reserve(static_cast<std::size_t>(panels));
    while (!queue.empty()) {
        segs.push_back(queue.top());
        queue.pop();
    }
    out = sum_segments(segs);
    out.tolerance_met = out.error <= tol;
    return out;
}

}  // namespace bernlab::detail

#endif  // BERNLAB_DETAIL_QUADRATURE_CORE_HPP
