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

#include "bernlab/polynomial.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using bernlab::cplx;
using bernlab::Polynomial;

namespace {

void expect_roots_match(const Polynomial& p, std::vector<cplx> expected, double tol) {
    auto roots = p.roots();
    std::vector<cplx> found;
    for (const auto& r : roots)
        for (int i = 0; i < r.multiplicity; ++i) found.push_back(r.location);
    ASSERT_EQ(found.size(), expected.size());
    std::sort(expected.begin(), expected.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (std::size_t i = 0; i < found.size(); ++i)
        EXPECT_NEAR(std::abs(found[i] - expected[i]), 0.0, tol)
            << "root " << i << " found " << found[i] << " expected " << expected[i];
}

}  // namespace

TEST(Polynomial, EvalAndDerivative) {
    Polynomial p({cplx(1.0), cplx(-2.0), cplx(3.0)});  // 1 - 2z + 3z^2
    EXPECT_NEAR(std::abs(p.eval(cplx(2.0)) - cplx(9.0)), 0.0, 1e-14);
    Polynomial d = p.derivative();
    EXPECT_EQ(d.degree(), 1);
    EXPECT_NEAR(std::abs(d.eval(cplx(2.0)) - cplx(10.0)), 0.0, 1e-14);
}

TEST(Polynomial, LinearAndQuadraticRoots) {
    expect_roots_match(Polynomial({cplx(-6.0), cplx(2.0)}), {cplx(3.0)}, 1e-14);
    // z^2 + 1 -> +-i
    expect_roots_match(Polynomial({cplx(1.0), cplx(0.0), cplx(1.0)}),
                       {cplx(0.0, 1.0), cplx(0.0, -1.0)}, 1e-14);
}

TEST(Polynomial, CubicAndQuarticAgainstConstructedRoots) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        int deg = 3 + (trial % 2);
        std::vector<cplx> roots;
        for (int i = 0; i < deg; ++i) roots.emplace_back(u(rng), u(rng));
        Polynomial built = Polynomial::from_roots(roots, cplx(u(rng) + 3.0, u(rng)));
        // rebuild coefficients only, then solve from scratch
        Polynomial blind(built.coefficients());
        expect_roots_match(blind, roots, 2e-7);
    }
}

TEST(Polynomial, FromRootsTracksMultiplicity) {
    std::vector<cplx> roots = {cplx(1.0), cplx(1.0), cplx(-2.0)};
    Polynomial p = Polynomial::from_roots(roots);
    ASSERT_TRUE(p.roots_known());
    auto rs = p.roots();
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(rs[0].multiplicity, 1);  // -2
    EXPECT_EQ(rs[1].multiplicity, 2);  // +1
}

TEST(Polynomial, ProductMergesKnownRoots) {
    Polynomial a = Polynomial::from_roots(std::vector<cplx>{cplx(1.0)});
    Polynomial b = Polynomial::from_roots(std::vector<cplx>{cplx(1.0), cplx(2.0)});
    Polynomial c = a * b;
    ASSERT_TRUE(c.roots_known());
    auto rs = c.roots();
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(rs[0].multiplicity, 2);
    EXPECT_EQ(rs[1].multiplicity, 1);
    EXPECT_EQ(c.degree(), 3);
}

TEST(Polynomial, PowKeepsRootsWithoutSolving) {
    Polynomial q({cplx(-1.0), cplx(0.0), cplx(1.0)});  // z^2 - 1
    Polynomial q4 = q.pow(4);                          // degree 8
    ASSERT_TRUE(q4.roots_known());
    auto rs = q4.roots();
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(rs[0].multiplicity, 4);
    EXPECT_EQ(rs[1].multiplicity, 4);
}

TEST(Polynomial, UnknownHighDegreeSolveRejected) {
    Polynomial p({cplx(1.0), cplx(1.0), cplx(1.0), cplx(1.0), cplx(1.0), cplx(1.0)});
    EXPECT_THROW(p.roots(), bernlab::ConstructionError);
}

TEST(Polynomial, TaylorShiftIsExact) {
    Polynomial p({cplx(1.0), cplx(2.0), cplx(3.0), cplx(4.0)});
    cplx z0(0.5, -0.25);
    auto t = p.taylor_at(z0);
    // check p(z0 + d) == sum t_k d^k at a few displacements
    for (double d : {0.1, -0.3, 0.7}) {
        cplx expect = p.eval(z0 + d);
        cplx acc(0.0), dk(1.0);
        for (const auto& c : t) {
            acc += c * dk;
            dk *= d;
        }
        EXPECT_NEAR(std::abs(acc - expect), 0.0, 1e-13);
    }
}

TEST(Polynomial, ThmQuotientDenominatorRoots) {
    const double pi = std::numbers::pi;
    const double sigma = pi;
    Polynomial q({cplx(-pi * pi), cplx(0.0), cplx(9.0 * sigma * sigma)});
    expect_roots_match(q, {cplx(1.0 / 3.0), cplx(-1.0 / 3.0)}, 1e-14);
}
