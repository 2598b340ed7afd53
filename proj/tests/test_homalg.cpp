#include <random>

#include <gtest/gtest.h>

#include "fpell/homalg.hpp"
#include "fpell/resolution.hpp"

using namespace fpell;

namespace {

AlgebraPresentation make(unsigned p, std::vector<MonogenicFactor> f, bool hopf = false) {
    AlgebraPresentation a;
    a.p = p;
    a.factors = std::move(f);
    a.hopf = hopf;
    a.validate();
    return a;
}

AlgebraPresentation random_hopf(std::mt19937& rng, unsigned p) {
    std::uniform_int_distribution<int> cnt(0, 4), kind(0, 2), half(1, 5), e(1, 2);
    AlgebraPresentation a;
    a.p = p;
    a.hopf = true;
    for (int i = cnt(rng); i > 0; --i) {
        const int k = kind(rng);
        if (k == 0) a.factors.push_back(MonogenicFactor::exterior(p == 2 ? half(rng) : 2 * half(rng) - 1));
        if (k == 1) a.factors.push_back(MonogenicFactor::polynomial(p == 2 ? half(rng) : 2 * half(rng)));
        if (k == 2) {
            int h = 1;
            for (int j = e(rng); j > 0; --j) h *= static_cast<int>(p);
            a.factors.push_back(MonogenicFactor::truncated(p == 2 ? half(rng) : 2 * half(rng), h));
        }
    }
    a.validate();
    return a;
}

}  // namespace

TEST(Homalg, PolynomialClosedForm) {
    for (int k = 1; k <= 20; ++k) {
        auto t = ext_table(make(2, {MonogenicFactor::polynomial(k)}));
        ASSERT_EQ(t.entries.size(), 1u);
        EXPECT_EQ(t.entries.begin()->first, (Bidegree{1, k}));
        EXPECT_EQ(t.entries.begin()->second, 1);
    }
}

TEST(Homalg, TruncatedClosedForm) {
    for (int k = 1; k <= 20; ++k)
        for (int n = 2; n <= 10; ++n) {
            auto t = ext_table(make(2, {MonogenicFactor::truncated(k, n)}));
            ASSERT_EQ(t.entries.size(), 1u);
            EXPECT_EQ(t.entries.begin()->first, (Bidegree{0, -static_cast<long>(k) * (n - 1)}));
        }
}

TEST(Homalg, KunnethExample) {
    auto t = ext_table(make(3, {MonogenicFactor::polynomial(2), MonogenicFactor::truncated(2, 4)}));
    ASSERT_EQ(t.entries.size(), 1u);
    EXPECT_EQ(t.entries.begin()->first, (Bidegree{1, -4}));
}

TEST(Homalg, Depth) {
    EXPECT_EQ(depth(AlgebraPresentation::unit(2)).value, 0);
    auto a = make(3, {MonogenicFactor::polynomial(2), MonogenicFactor::polynomial(4), MonogenicFactor::exterior(3)});
    EXPECT_EQ(depth(a).value, 2);
    a.infinite_tensor = true;
    EXPECT_TRUE(depth(a).infinite());
    EXPECT_EQ(depth(a).to_string(), "infinite");
}

TEST(Homalg, Gorenstein) {
    auto g = is_gorenstein(make(2, {MonogenicFactor::polynomial(2)}));
    EXPECT_TRUE(g.is_gorenstein);
    EXPECT_EQ(*g.socle, (Bidegree{1, 2}));
    g = is_gorenstein(make(3, {MonogenicFactor::exterior(3)}));
    EXPECT_TRUE(g.is_gorenstein);
    EXPECT_EQ(*g.socle, (Bidegree{0, -3}));
    auto inf = make(2, {MonogenicFactor::polynomial(2)});
    inf.infinite_tensor = true;
    EXPECT_FALSE(is_gorenstein(inf).is_gorenstein);
    EXPECT_TRUE(ext_table(inf).entries.empty());
    g = is_gorenstein(make(3, {MonogenicFactor::polynomial(2), MonogenicFactor::exterior(3)}));
    EXPECT_EQ(*g.socle, (Bidegree{1, -1}));
}

TEST(Homalg, AdditivityRandom) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const unsigned p = trial % 2 ? 2 : 3;
        auto a = random_hopf(rng, p), b = random_hopf(rng, p);
        if (trial % 17 == 0) a.infinite_tensor = true;
        auto ab = tensor(a, b);
        EXPECT_EQ(depth(ab), depth(a) + depth(b));
        EXPECT_EQ(is_gorenstein(ab).is_gorenstein, is_gorenstein(a).is_gorenstein && is_gorenstein(b).is_gorenstein);
        if (!ab.infinite_tensor) {
            EXPECT_EQ(*depth(ab).value, static_cast<int>(ab.polynomial_factor_count()));
            EXPECT_EQ(*depth(ab).value, growth_class(poincare_series(ab)).k0);
            EXPECT_LE(*depth(ab).value, static_cast<int>(ab.factors.size()));
        }
    }
}

TEST(Homalg, EllipticFourWay) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_hopf(rng, trial % 2 ? 2 : 3);
        if (trial % 7 == 0) a.infinite_tensor = true;
        auto r = is_elliptic(a);
        EXPECT_TRUE(r.conditions_agree) << trial;
        EXPECT_EQ(r.elliptic, !a.infinite_tensor);
        if (!a.infinite_tensor) EXPECT_EQ(r.nilpotency_stage, 1);
    }
}

TEST(Homalg, EllipticFiniteDimensional) {
    auto r = is_elliptic(make(2, {MonogenicFactor::truncated(2, 4), MonogenicFactor::exterior(3)}, true));
    EXPECT_TRUE(r.elliptic);
    EXPECT_TRUE(r.gorenstein);
    EXPECT_EQ(r.growth_exponent, 0);
}

TEST(Homalg, EllipticNeedsHopfFlag) {
    EXPECT_THROW(is_elliptic(make(2, {MonogenicFactor::polynomial(2)})), InvalidInput);
}

TEST(Homalg, EllipticCommutativeLoopHomologyOddPrime) {
    AlgebraPresentation a;
    a.p = 3;
    a.graded_commutative = false;
    a.hopf = true;
    a.factors = {MonogenicFactor::polynomial(2), MonogenicFactor::polynomial(3)};
    auto r = is_elliptic(a);
    EXPECT_TRUE(r.elliptic);
    EXPECT_EQ(r.nilpotency_stage, 2);
    EXPECT_EQ(r.growth_exponent, 2);
}

TEST(Homalg, MinimalResolutionMatchesClosedForms) {
    for (int k = 1; k <= 4; ++k) {
        std::vector<unsigned> primes = {2};
        if (k % 2 == 0) primes.push_back(3);
        for (unsigned p : primes) {
            for (int n = 2; n <= 4; ++n) {
                auto a = make(p, {MonogenicFactor::truncated(k, n)});
                if (p != 2 && n == 2 && k % 2 != 0) continue;
                QuotientAlgebra A(to_finite(a, 60));
                MinimalResolution R(A, 4);
                EXPECT_EQ(R.ext_window(20), ext_table(a)) << "k=" << k << " n=" << n << " p=" << p;
            }
            auto poly = make(p, {MonogenicFactor::polynomial(k)});
            QuotientAlgebra A(to_finite(poly, 60));
            MinimalResolution R(A, 3);
            EXPECT_EQ(R.generator_degrees(2).size(), 0u);
            EXPECT_EQ(R.ext_window(20), ext_table(poly)) << "k=" << k << " p=" << p;
        }
    }
}

TEST(Homalg, MinimalResolutionShapeTruncated) {
    // F[x]/(x^n): generators in degrees 0, k, kn, kn + k, 2kn, ...
    auto a = make(3, {MonogenicFactor::truncated(2, 3)});
    QuotientAlgebra A(to_finite(a, 40));
    MinimalResolution R(A, 4);
    EXPECT_EQ(R.generator_degrees(1), (std::vector<int>{2}));
    EXPECT_EQ(R.generator_degrees(2), (std::vector<int>{6}));
    EXPECT_EQ(R.generator_degrees(3), (std::vector<int>{8}));
    EXPECT_EQ(R.generator_degrees(4), (std::vector<int>{12}));
}

TEST(Homalg, MinimalResolutionOfTensorProduct) {
    auto a = make(3, {MonogenicFactor::polynomial(2), MonogenicFactor::exterior(3)});
    QuotientAlgebra A(to_finite(a, 50));
    MinimalResolution R(A, 4);
    EXPECT_EQ(R.ext_window(15), ext_table(a));
}
