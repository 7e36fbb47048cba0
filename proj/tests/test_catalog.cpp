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

#include "bernlab/catalog.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace bernlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Catalog, Example34RejectsEpsOutOfRange) {
    EXPECT_THROW(make_example34(kPi, kPi), ConstructionError);
    EXPECT_THROW(make_example34(kPi, 1.6), ConstructionError);
    EXPECT_THROW(make_example34(kPi, 0.0), ConstructionError);
    EXPECT_NO_THROW(make_example34(kPi, 1.5));
}

TEST(Catalog, Thm46MatchesDirectFormula) {
    BandlimitedFunction f = make_thm46(kPi);
    for (double x : {0.05, 0.21, 0.8, 2.6, -1.4}) {
        double expect = (2.0 * std::cos(kPi * x) - 1.0) /
                        (std::pow(3.0 * kPi * x, 2.0) - kPi * kPi);
        EXPECT_NEAR(f.evaluate(cplx(x)).real(), expect, 1e-12 * (1.0 + std::abs(expect)));
        EXPECT_NEAR(f.evaluate(cplx(x)).imag(), 0.0, 1e-14);
    }
}

TEST(Catalog, Example34MatchesDirectFormula) {
    const double eps = 1.0;
    BandlimitedFunction f = make_example34(kPi, eps);
    for (double x : {0.3, 0.77, 2.15, -3.3}) {
        double half = kPi * x / 2.0;
        double expect = std::cos(half) * std::cos(std::sqrt(half * half + eps * eps)) /
                        (kPi * kPi * x * x - kPi * kPi);
        EXPECT_NEAR(f.evaluate(cplx(x)).real(), expect, 1e-12 * (1.0 + std::abs(expect)));
    }
}

TEST(Catalog, ShiftedSincSqPeak) {
    BandlimitedFunction g = make_shifted_sinc_sq(kPi, 0.0);
    EXPECT_NEAR(g.evaluate(cplx(0.0)).real(), (kPi / 2.0) * (kPi / 2.0), 1e-10);
    BandlimitedFunction g5 = make_shifted_sinc_sq(kPi, 5.0);
    EXPECT_NEAR(g5.evaluate(cplx(5.0)).real(), (kPi / 2.0) * (kPi / 2.0), 1e-10);
    // plain formula away from the peak
    double x = 7.3;
    double expect = std::pow(std::sin(kPi * (x - 5.0) / 2.0) / (x - 5.0), 2.0);
    EXPECT_NEAR(g5.evaluate(cplx(x)).real(), expect, 1e-12);
}

TEST(Catalog, SinetypeQuotientDegrees) {
    for (int deg = 1; deg <= 4; ++deg) {
        BandlimitedFunction f = make_sinetype_quotient_canonical(kPi, deg);
        EXPECT_TRUE(std::isfinite(f.evaluate(cplx(0.4)).real()));
    }
    EXPECT_THROW(make_sinetype_quotient_canonical(kPi, 5), ConstructionError);
    EXPECT_THROW(make_sinetype_quotient_canonical(kPi, 0), ConstructionError);
}

TEST(Catalog, SinetypeQuotientRejectsForeignZeros) {
    BandlimitedFunction F(
        sum(product(constant(cplx(2.0)), cos_scaled(kPi)), constant(cplx(-1.0))), kPi);
    // 0.5 is not a zero of 2cos(pi x) - 1
    Polynomial q = Polynomial::from_roots(std::vector<cplx>{cplx(0.5)});
    EXPECT_THROW(make_sinetype_quotient(F, q), ConstructionError);
}

TEST(Catalog, Prop35TermRejectsZeroAnchor) {
    BandlimitedFunction f = make_example34(kPi, 1.0);
    // x = 1 is a zero of the numerator cos(pi x / 2), so f(1) = 0
    EXPECT_THROW(make_prop35_term(f, 3.0, 2.932, 1.0), ConstructionError);
}

TEST(Catalog, Prop35TermVanishesExactlyAtAnchor) {
    BandlimitedFunction f = make_example34(kPi, 1.0);
    // x_n, y_n close to the l = 1 zero pair of f
    double y_n = 3.0;
    double x_n = (2.0 / kPi) * std::sqrt(std::pow(kPi / 2.0 + kPi, 2.0) - 1.0);
    BandlimitedFunction fn = make_prop35_term(f, x_n, y_n, 0.25);
    cplx v = fn.evaluate(cplx(0.25));
    EXPECT_EQ(v.real(), 0.0);
    EXPECT_EQ(v.imag(), 0.0);
}

TEST(Catalog, DescriptorIsCanonical) {
    BandlimitedFunction f = make_example34(kPi, 1.0);
    EXPECT_EQ(f.descriptor(),
              "example34(eps=1,sigma=3.14159265358979)[alpha=1]");
    BandlimitedFunction g = f.with_alpha(cplx(0.25));
    EXPECT_EQ(g.descriptor(),
              "example34(eps=1,sigma=3.14159265358979)[alpha=0.25]");
}

TEST(Catalog, DispatchByNameAndUnknownRejected) {
    auto f = make_catalog("thm46", {{"sigma", kPi}});
    EXPECT_EQ(f.name(), "thm46");
    EXPECT_THROW(make_catalog("nope", {}), ConstructionError);
    EXPECT_THROW(make_catalog("example34", {{"sigma", kPi}}), ConstructionError);
    EXPECT_FALSE(catalog_entries().empty());
}
