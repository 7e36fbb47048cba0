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

#include "bernlab/functionals.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "bernlab/catalog.hpp"

using namespace bernlab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSincSqNorm = 4.934802200544679;  // pi^2/2

// power-series oracle for the sine integral Si(x) = sum (-1)^k x^{2k+1}/((2k+1)(2k+1)!)
double si_series(double x) {
    double acc = 0.0, power = x;
    double factorial = 1.0;
    for (int k = 0; k <= 24; ++k) {
        int m = 2 * k + 1;
        if (k > 0) {
            power *= x * x;
            factorial *= (2.0 * k) * (2.0 * k + 1.0);
        }
        acc += ((k % 2 == 0) ? 1.0 : -1.0) * power / (m * factorial);
    }
    return acc;
}

// the l-th near-coincident zero pair of the example34 function at sigma=pi:
// x = (2/pi) sqrt((pi/2 + pi l)^2 - eps^2) just below y = 1 + 2l
std::pair<double, double> example34_pair(double eps, int l) {
    double t = kPi / 2.0 + kPi * l;
    return {(2.0 / kPi) * std::sqrt(t * t - eps * eps), 1.0 + 2.0 * l};
}

}  // namespace

TEST(Functionals, ExposingFunctionalNormalizesItself) {
    QuadratureConfig cfg;
    for (const char* name : {"thm46", "example34"}) {
        std::map<std::string, double> params{{"sigma", kPi}};
        if (std::string(name) == "example34") params["eps"] = 1.0;
        BandlimitedFunction f = normalize(make_catalog(name, params), cfg);
        LineIntegralResult r = exposing_apply(f, f, cfg);
        EXPECT_NEAR(r.value.real(), 1.0, 1e-6) << name;
        EXPECT_NEAR(r.value.imag(), 0.0, 1e-8) << name;
    }
}

TEST(Functionals, ExposingFunctionalIsLinear) {
    QuadratureConfig cfg;
    BandlimitedFunction f = normalize(make_thm46(kPi), cfg);
    BandlimitedFunction rotated = f.with_alpha(f.alpha() * cplx(0.0, 1.0));
    LineIntegralResult r = exposing_apply(f, rotated, cfg);
    EXPECT_NEAR(r.value.real(), 0.0, 1e-6);
    EXPECT_NEAR(r.value.imag(), 1.0, 1e-6);
}

TEST(Functionals, PinchedTermMatchesIntervalMassIdentity) {
    QuadratureConfig cfg;
    BandlimitedFunction f = normalize(make_example34(kPi, 1.0), cfg);
    auto [x_n, y_n] = example34_pair(1.0, 3);
    BandlimitedFunction fn = normalize(make_prop35_term(f, x_n, y_n, 0.0), cfg);
    double phi =
        pair_integral(fn, WeightKernel::unimodular(f), cfg, {x_n, y_n}).value.real();
    double mass = interval_mass(fn, x_n, y_n, cfg);
    EXPECT_NEAR(phi, 1.0 - 2.0 * mass, 1e-6);
    EXPECT_GT(mass, 0.0);
    EXPECT_LT(phi, 1.0);
}

TEST(Functionals, SignSeriesCoefficients) {
    FourierCoeffs fc = sign_fourier_coeffs(kPi, 32);
    EXPECT_NEAR(fc.c0, -1.0 / 3.0, 1e-8);
    EXPECT_NEAR(fc.cn[0], 2.0 * std::sqrt(3.0) / kPi, 1e-8);  // (4/pi) sin(pi/3)
    EXPECT_NEAR(fc.cn[2], 0.0, 1e-8);                          // sin(pi) = 0
    for (int n = 1; n <= 32; ++n) {
        double expect = (4.0 / kPi) * std::sin(kPi * n / 3.0) / n;
        EXPECT_NEAR(fc.cn[static_cast<std::size_t>(n - 1)], expect, 1e-8) << n;
    }
}

TEST(Functionals, SignSeriesReconstruction) {
    // thresholded partial sums reproduce the sign away from the jumps, and the
    // period-averaged error shrinks as the truncation grows
    const double edge = kPi / (3.0 * kPi);
    auto avg_error = [&](int N) {
        WeightKernel w = WeightKernel::truncated_sign_series(kPi, N);
        double acc = 0.0;
        int count = 0;
        for (int k = 0; k < 2000; ++k) {
            double x = -1.0 + 2.0 * (k + 0.5) / 2000.0;
            double truth = 2.0 * std::cos(kPi * x) - 1.0 > 0.0 ? 1.0 : -1.0;
            double series = -1.0 / 3.0 + w.eval(x).real();
            acc += std::abs(series - truth);
            ++count;
            if (std::abs(std::abs(x) - edge) > 0.1) {
                EXPECT_EQ(series > 0.0, truth > 0.0) << "N=" << N << " x=" << x;
            }
        }
        return acc / count;
    };
    double e16 = avg_error(16);
    double e64 = avg_error(64);
    EXPECT_LT(e64, e16);
    EXPECT_LT(e64, 0.2);
}

TEST(Functionals, DecompositionSplitsTheFunctional) {
    QuadratureConfig cfg;
    BandlimitedFunction f = normalize(make_thm46(kPi), cfg);
    PhiDecomposition d = decompose_phi(f, f, 64, cfg);
    double phi = exposing_apply(f, f, cfg).value.real();
    EXPECT_NEAR(d.I.real() + d.K.real(), phi, 1e-5);
    EXPECT_NEAR(phi, 1.0, 1e-6);

    // I is -(1/3) of the plain integral
    BandlimitedFunction g = make_shifted_sinc_sq(kPi, 0.0);
    PhiDecomposition dg = decompose_phi(f, g, 64, cfg);
    EXPECT_NEAR(dg.I.real(), -kSincSqNorm / 3.0, 1e-6);  // -pi^2/6

    EXPECT_THROW(decompose_phi(f, g, 4, cfg), Error);
}

TEST(Functionals, DecompositionResidualStableInTruncation) {
    QuadratureConfig cfg;
    BandlimitedFunction f = normalize(make_thm46(kPi), cfg);
    double phi = exposing_apply(f, f, cfg).value.real();
    double prev = std::numeric_limits<double>::infinity();
    for (int N : {8, 16, 32, 64, 128}) {
        PhiDecomposition d = decompose_phi(f, f, N, cfg);
        double resid = std::abs(phi - (d.I.real() + d.K.real()));
        // cosine moments of a bandlimited input vanish, so the residual sits at
        // quadrature level for every N; it must never grow past the slack
        EXPECT_LT(resid, prev + 5e-7) << "N=" << N;
        EXPECT_LT(resid, 1e-5) << "N=" << N;
        prev = resid;
    }
}

TEST(Functionals, FarShiftKillsTheCompactPart) {
    QuadratureConfig cfg;
    BandlimitedFunction f = normalize(make_thm46(kPi), cfg);
    double prev = 1.0;
    for (int n : {10, 20, 30}) {
        BandlimitedFunction gn = make_shifted_sinc_sq(kPi, n);
        PhiDecomposition d = decompose_phi(f, gn, 64, cfg);
        EXPECT_LT(std::abs(d.K), prev);
        if (n == 30) EXPECT_LT(std::abs(d.K), 0.05);
        prev = std::abs(d.K);
    }
}

TEST(Functionals, LowpassProjectionOfWiderSinc) {
    // spectral indicators multiply: projecting sin(2 pi t)/(pi t) onto type pi
    // leaves sin(pi t)/(pi t)
    QuadratureConfig cfg;
    LowpassProjection proj = lowpass_project(psi_sinc(2.0 * kPi), kPi, cfg);
    for (int k = 0; k < 10; ++k) {
        double x = -3.0 + 6.0 * (k + 0.5) / 10.0;
        EXPECT_NEAR(proj.eval(x).real(), detail::sinc_value(kPi, x), 1e-6) << x;
    }
}

TEST(Functionals, LowpassProjectionOfBoxAtZero) {
    QuadratureConfig cfg;
    LowpassProjection proj = lowpass_project(psi_box(-1.0, 1.0, 1.0), kPi, cfg);
    double expect = (2.0 / kPi) * si_series(kPi);
    EXPECT_NEAR(si_series(kPi), 1.8519370, 2e-7);  // frozen oracle value
    EXPECT_NEAR(proj.eval(0.0).real(), expect, 1e-8);
    EXPECT_NEAR(expect, 1.1789797, 1e-6);
}

TEST(Functionals, ProjectionReproducesBandlimitedInputs) {
    QuadratureConfig cfg;
    BandlimitedFunction f = normalize(make_thm46(kPi), cfg);
    std::vector<double> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(-4.5 + k);
    EXPECT_LT(reproducing_check(f, pts, cfg), 1e-6);
}

TEST(Functionals, ProjectionIdempotence) {
    QuadratureConfig cfg;
    cfg.abs_tolerance = 1e-9;
    LowpassProjection once = lowpass_project(psi_box(-1.0, 1.0, 1.0), kPi, cfg);
    LowpassProjection twice = lowpass_project(once.as_descriptor(), kPi, cfg);
    for (int k = 0; k < 10; ++k) {
        double x = -4.0 + 8.0 * (k + 0.5) / 10.0;
        EXPECT_NEAR(twice.eval(x).real(), once.eval(x).real(), 1e-6) << x;
    }
}

TEST(Functionals, ProjectionBandConcentration) {
    QuadratureConfig cfg;
    LowpassProjection proj = lowpass_project(psi_box(-1.0, 1.0, 1.0), kPi, cfg);
    EXPECT_LT(proj.out_of_band_ratio(), 0.02);
}

TEST(Functionals, AnnihilatorChecks) {
    QuadratureConfig cfg;
    std::vector<BandlimitedFunction> tests;
    tests.push_back(normalize(make_thm46(kPi), cfg));
    tests.push_back(normalize(make_example34(kPi, 1.0), cfg));

    // psi already bandlimited to sigma: the projection changes nothing
    LowpassProjection fixed = lowpass_project(psi_sinc(kPi), kPi, cfg);
    EXPECT_LT(annihilator_check(fixed, tests, cfg), 1e-6);

    LowpassProjection boxp = lowpass_project(psi_box(-1.0, 1.0, 1.0), kPi, cfg);
    EXPECT_LT(annihilator_check(boxp, tests, cfg), 1e-5);

    LowpassProjection wide = lowpass_project(psi_sinc(2.0 * kPi), kPi, cfg);
    EXPECT_LT(annihilator_check(wide, tests, cfg), 1e-5);
}

TEST(Functionals, ReproducingTrivialCases) {
    QuadratureConfig cfg;
    BandlimitedFunction zero(constant(cplx(0.0)), kPi, cplx(1.0), "zero");
    EXPECT_EQ(reproducing_check(zero, {0.0, 1.0}, cfg), 0.0);

    BandlimitedFunction g = make_shifted_sinc_sq(kPi, 0.0);
    EXPECT_LT(reproducing_check(g, {0.0}, cfg), 1e-6);
}

TEST(Functionals, WeakStarWitnessRows) {
    QuadratureConfig cfg;
    auto rows = weak_star_witness(kPi, {0, 25, 40}, 10.0, cfg);
    ASSERT_EQ(rows.size(), 3u);

    EXPECT_NEAR(rows[0].sup_abs, (kPi / 2.0) * (kPi / 2.0), 1e-9);
    EXPECT_LE(rows[1].sup_abs, 1.0 / (15.0 * 15.0));
    EXPECT_LE(rows[2].sup_abs, 1.0 / (30.0 * 30.0));

    for (const auto& row : rows)
        EXPECT_NEAR(row.I_value.real(), -kSincSqNorm / 3.0, 1e-6) << row.n;

    // shift invariance of the constant-mean column, tighter than the assertion
    EXPECT_NEAR(rows[0].I_value.real(), rows[2].I_value.real(), 1e-8);
}

TEST(Functionals, NormBoundWithEqualityOnlyForRotations) {
    QuadratureConfig cfg;
    BandlimitedFunction f = normalize(make_thm46(kPi), cfg);
    BandlimitedFunction g = normalize(make_example34(kPi, 1.0), cfg);
    double cross = std::abs(exposing_apply(f, g, cfg).value);
    EXPECT_LE(cross, 1.0 + 1e-6);
    EXPECT_LT(cross, 0.999);  // strictly inside for a genuinely different input

    cplx rot = std::exp(cplx(0.0, 0.7));
    BandlimitedFunction fr = f.with_alpha(f.alpha() * rot);
    cplx aligned = exposing_apply(f, fr, cfg).value;
    EXPECT_NEAR(std::abs(aligned), 1.0, 1e-6);
    EXPECT_NEAR(std::arg(aligned), 0.7, 1e-6);
}
