#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fpell/spectral.hpp"
#include "spectral_fixtures.hpp"

using namespace fpell;
using namespace fpell::testing;

namespace {

std::set<int> nonzero_columns(const SSPage& page) {
    std::set<int> out;
    for (Bideg b : page.bidegrees())
        if (page.dim(b) > 0) out.insert(-b.s);
    return out;
}

}  // namespace

TEST(Spectral, E2ColumnsOfQ4) {
    for (unsigned p : {2u, 3u}) {
        auto A = q4_e2(p, 12);
        auto page = SSPage::e2(A);
        EXPECT_EQ(nonzero_columns(page), (std::set<int>{0, 3, 4, 7}));
        EXPECT_EQ(page.dim({-7, 5}), 1u);  // a*b*u*v
        EXPECT_EQ(page.dim({-3, 6}), 2u);  // a*u^3, a*v^2
        EXPECT_EQ(page.state({1, 0}), EntryState::ZeroBySupport);
        EXPECT_EQ(page.state({-8, 0}), EntryState::ZeroBySupport);
        EXPECT_EQ(page.state({0, 13}), EntryState::Indeterminate);
    }
}

TEST(Spectral, UnitLoopHomologyConcentratesInRowZero) {
    auto A = build_e2(q4_cohomology(3), AlgebraPresentation::unit(3), 7, 10);
    auto page = SSPage::e2(A);
    for (Bideg b : page.bidegrees()) {
        if (b.t > 0) {
            EXPECT_EQ(page.dim(b), 0u);
            continue;
        }
        EXPECT_EQ(page.dim(b), A->cohomology().dim(-b.s));
    }
}

TEST(Spectral, DiagonalSumsAreSeriesConvolution) {
    const int T = 20;
    auto A = q4_e2(2, T);
    auto page = SSPage::e2(A);
    const auto h = coefficients(poincare_series(q4_cohomology(2)), T);
    const auto l = coefficients(poincare_series(q4_loop(2)), T);
    const auto conv = convolve(h, l, T);
    for (int k = 0; k <= T; ++k) {
        BigInt sum = 0;
        for (int sp = 0; sp <= 7 && sp <= k; ++sp) sum += page.dim({-sp, k - sp});
        EXPECT_EQ(sum, conv[k]) << k;
    }
}

TEST(Spectral, BuildRejectsBadData) {
    AlgebraPresentation h;
    h.p = 2;
    h.factors = {MonogenicFactor::exterior(1, "x"), MonogenicFactor::exterior(3, "y")};
    EXPECT_THROW(build_e2(h, AlgebraPresentation::unit(2), 4, 10), InvalidInput);  // H^1 != 0
    EXPECT_NO_THROW(build_e2(h, AlgebraPresentation::unit(2), 4, 10, false));
    EXPECT_THROW(build_e2(q4_cohomology(2), q4_loop(2), 5, 10), InvalidInput);  // nonzero above n
    EXPECT_THROW(build_e2(q4_cohomology(2), q4_loop(3), 7, 10), InvalidInput);
    auto clash = q4_loop(2);
    clash.factors[0].name = "a";
    EXPECT_THROW(build_e2(q4_cohomology(2), clash, 7, 10), InvalidInput);
}

TEST(Spectral, ProductSignsAndEvaluation) {
    auto A = q4_e2(3, 12);
    const auto av = el(*A, "a*v"), va = el(*A, "v*a");
    EXPECT_EQ(av.bidegree, (Bideg{-3, 3}));
    EXPECT_EQ(va.coords, A->field().scale(av.coords, A->field().neg(1)));
    EXPECT_EQ(el(*A, "b*v").coords, el(*A, "v*b").coords);
    EXPECT_TRUE(el(*A, "a*a").is_zero());
    EXPECT_FALSE(el(*A, "v^2").is_zero());  // loop homology is commutative without signs
}

TEST(Spectral, ZeroDifferentialLeavesPageUnchanged) {
    auto A = q4_e2(2, 14);
    auto e2 = SSPage::e2(A);
    Differential zero;
    zero.r = 2;
    auto e3 = turn_page(e2, zero);
    EXPECT_EQ(e3.r(), 3);
    for (Bideg b : e3.bidegrees()) {
        if (!e3.known(b)) {
            EXPECT_GT(b.t + 1, 14) << b.to_string();  // only the top row loses its neighbourhood
            continue;
        }
        EXPECT_EQ(e3.dim(b), e2.dim(b));
    }
}

TEST(Spectral, D3FamilyIsValidAndKillsClasses) {
    for (unsigned p : {2u, 3u}) {
        auto A = q4_e2(p, 16);
        FamilySpec f{Family::D3, {1, 1, 1}};
        auto run = run_family(A, f);
        const auto& d3 = run.extensions[1];
        EXPECT_TRUE(d3.report.valid) << d3.report.detail;
        EXPECT_GT(d3.report.pairs_checked, 500u);
        const auto& e3 = run.ss.page(3);
        const auto& e4 = run.ss.page(4);
        // d_3(u) = a u^2 is nonzero, so u dies and a u^2 is a boundary
        EXPECT_LT(e4.dim({0, 2}), e3.dim({0, 2}));
        EXPECT_LT(e4.dim({-3, 4}), e3.dim({-3, 4}));
        // u^p is a cycle: p u^{p-1} a u^2 = 0
        const auto up = A->loop_homology().power(2, A->loop_homology().generator_class(0), p);
        EXPECT_TRUE(e4.classify({0, 2 * static_cast<int>(p)}, *up).has_value());
    }
}

TEST(Spectral, D3ImageOnDecomposablesFollowsLeibniz) {
    auto A = q4_e2(2, 12);
    auto e2 = SSPage::e2(A);
    Differential zero;
    zero.r = 2;
    auto e3 = turn_page(e2, zero);
    auto ext = extend_derivation(e3, family_images(*A, {Family::D3, {1, 1, 1}}, 3));
    ASSERT_TRUE(ext.report.valid) << ext.report.detail;
    EXPECT_EQ(ext.unspanned_classes, 0u);
    // d(u v) = a u^2 v + u a u v = 2 a u^2 v = 0 at p = 2
    auto uv = el(*A, "u*v");
    auto img = ext.d.apply(e3, uv.bidegree, *e3.classify(uv.bidegree, uv.coords));
    EXPECT_TRUE(img.is_zero());
    // d(b u) = a b u^2 + b a u^2 = 0 (b even, a b = b a)
    auto bu = el(*A, "b*u");
    EXPECT_TRUE(ext.d.apply(e3, bu.bidegree, *e3.classify(bu.bidegree, bu.coords)).is_zero());
    // d(v^2) = 2 a u v^2 vanishes at p = 2; d(u^3) = 3 a u^4 does not
    auto u3 = el(*A, "u^3");
    EXPECT_EQ(ext.d.apply(e3, u3.bidegree, *e3.classify(u3.bidegree, u3.coords)).coords,
              *e3.classify({-3, 8}, el(*A, "a*u^4").coords));
}

TEST(Spectral, InconsistentGeneratorImageIsRejected) {
    auto A = q4_e2(2, 12);
    auto page = SSPage::e2(A);
    // bidegree check on the generator image itself
    std::vector<GeneratorImage> bad = {{el(*A, "u"), el(*A, "a*u")}};
    EXPECT_THROW(extend_derivation(page, bad), InvalidInput);
}

TEST(Spectral, ValidatorRejectsStructuralErrors) {
    auto A = q4_e2(2, 12);
    auto page = SSPage::e2(A);
    Differential d;
    d.r = 3;
    EXPECT_EQ(validate(page, d).failed_check, "page");
    d.r = 2;
    d.images[{0, 2}] = {};  // wrong number of images
    d.images[{0, 2}].resize(3);
    EXPECT_EQ(validate(page, d).failed_check, "shape");
    d.images.clear();
    d.images[{0, 2}] = {PageElement{{-2, 3}, {{0, 1}}}};  // H^2 = 0, so index out of range
    EXPECT_FALSE(validate(page, d).valid);
    d.images[{0, 12}].assign(page.dim({0, 12}), PageElement{{-2, 13}, {{0, 1}}});
    d.images.erase({0, 2});
    EXPECT_FALSE(validate(page, d).valid);
}

TEST(Spectral, SquareZeroViolationDetected) {
    // H^* = F_2[x_3]/(x^3), loop homology P[w_2]; d(w^2) = x w^3 and d(x w^3) = x^2 w^4 compose to a nonzero map
    AlgebraPresentation h;
    h.p = 2;
    h.factors = {MonogenicFactor::truncated(3, 3, "x")};
    AlgebraPresentation l;
    l.p = 2;
    l.factors = {MonogenicFactor::polynomial(2, "w")};
    auto A = build_e2(h, l, 6, 10);
    Differential zero;
    zero.r = 2;
    auto e3 = turn_page(SSPage::e2(A), zero);
    Differential d;
    d.r = 3;
    d.images[{0, 4}] = {el(*A, "x*w^3")};
    d.images[{-3, 6}] = {el(*A, "x^2*w^4")};
    EXPECT_EQ(validate(e3, d).failed_check, "square-zero");
}

TEST(Spectral, LeibnizViolationDetected) {
    // w -> x w^2 alone: d(w y) must be x y w^2 but is left at zero
    AlgebraPresentation h;
    h.p = 2;
    h.factors = {MonogenicFactor::exterior(3, "x"), MonogenicFactor::exterior(5, "y")};
    AlgebraPresentation l;
    l.p = 2;
    l.factors = {MonogenicFactor::polynomial(2, "w")};
    auto A = build_e2(h, l, 8, 10);
    Differential zero;
    zero.r = 2;
    auto e3 = turn_page(SSPage::e2(A), zero);
    Differential d;
    d.r = 3;
    d.images[{0, 2}] = {el(*A, "x*w^2")};
    auto rep = validate(e3, d);
    EXPECT_EQ(rep.failed_check, "leibniz");
    EXPECT_NE(rep.detail.find("w"), std::string::npos);
    // the derivation extension repairs it
    auto ext = extend_derivation(e3, {{el(*A, "w"), el(*A, "x*w^2")}});
    EXPECT_TRUE(ext.report.valid) << ext.report.detail;
}

TEST(Spectral, RandomFamiliesAreValidAndMutationsRejected) {
    std::mt19937 rng(20261016);
    int rejected = 0, mutations = 0;
    for (int trial = 0; trial < 24; ++trial) {
        const unsigned p = trial % 2 ? 2 : 3;
        auto A = q4_e2(p, 16);
        FamilySpec f = random_family(rng, p);
        FamilyRun run;
        ASSERT_NO_THROW(run = run_family(A, f)) << trial;
        for (const auto& ext : run.extensions) EXPECT_TRUE(ext.report.valid);
        for (int r = 2; r <= 7; ++r) {
            const Differential& d = run.ss.differentials[static_cast<std::size_t>(r - 2)];
            if (d.is_zero() && r != 3) continue;
            auto [m, kind] = mutate(run.ss.page(r), d, rng);
            ++mutations;
            if (!validate(run.ss.page(r), m).valid) ++rejected;
        }
    }
    EXPECT_EQ(rejected, mutations);
    EXPECT_GT(mutations, 20);
}

TEST(Spectral, EulerCharacteristicBookkeeping) {
    const int T = 18;
    for (unsigned p : {2u, 3u})
        for (Family fam : {Family::D3, Family::D4, Family::D7}) {
            auto run = run_family(q4_e2(p, T), {fam, {1, 2, 1, 1}});
            for (int r = 2; r <= 7; ++r) {
                const SSPage& before = run.ss.page(r);
                const SSPage& after = run.ss.page(r + 1);
                const Differential& d = run.ss.differentials[static_cast<std::size_t>(r - 2)];
                int checked = 0;
                for (int m = 0; m <= T - 8; ++m) {
                    auto c0 = euler_characteristic_through(before, m);
                    auto c1 = euler_characteristic_through(after, m);
                    auto rk = differential_rank_into(before, d, m);
                    if (!c0 || !c1 || !rk) continue;
                    const long long sign = (m + 1) % 2 == 0 ? 1 : -1;
                    EXPECT_EQ(*c1, *c0 + sign * static_cast<long long>(*rk)) << "p=" << p << " r=" << r << " m=" << m;
                    ++checked;
                }
                EXPECT_GT(checked, 0) << r;
            }
        }
}

TEST(Spectral, SurvivalExponent) {
    EXPECT_EQ(survival_exponent(2, 7, {0, 3, 4, 7}), 8u);
    EXPECT_EQ(survival_exponent(3, 7, {0, 3, 4, 7}), 27u);
    EXPECT_EQ(survival_exponent(5, 9, {0, 9}), 5u);
    std::vector<int> all;
    for (int d = 0; d <= 10; ++d)
        if (d != 1 && d != 9) all.push_back(d);
    EXPECT_EQ(survival_exponent(2, 10, all), 1u << 8);
    EXPECT_THROW(survival_exponent(2, 7, {1}), InvalidInput);
    EXPECT_THROW(survival_exponent(2, 7, {6}), InvalidInput);
    EXPECT_THROW(survival_exponent(2, 7, {8}), InvalidInput);
    EXPECT_THROW(survival_exponent(2, 1, {}), InvalidInput);
    // S^2: the one differential d_2 can hit column 2, so the exponent is p
    EXPECT_EQ(survival_exponent(3, 2, {0, 2}), 3u);
    for (int n = 3; n <= 12; ++n) {
        std::vector<int> degs;
        for (int d = 0; d <= n; ++d)
            if (d != 1 && d != n - 1) degs.push_back(d);
        EXPECT_LE(survival_exponent(3, n, degs), checked_power(3, std::max(0, n - 2)));
    }
}

TEST(Spectral, CertificateForGeneratorsOfTheCenter) {
    for (unsigned p : {2u, 3u}) {
        auto A = q4_e2(p, 40);
        auto run = run_family(A, {Family::D3, {1, 1, 1}});
        const auto& L = A->loop_homology();
        // u: d_3 u = a u^2 != 0, so u^p
        auto cu = certify_central_power(run.ss, 2, L.generator_class(0));
        EXPECT_EQ(cu.status, CertificateStatus::Certified);
        EXPECT_EQ(cu.exponent, p);
        EXPECT_EQ(cu.bound, checked_power(p, 3));
        EXPECT_LE(cu.exponent, checked_power(p, 5));
        if (2 * cu.bound <= 40) EXPECT_TRUE(cu.bound_power_is_permanent);
        // v^2: d_3(v^2) = 2 a u v^2, zero exactly at p = 2
        auto v2 = L.power(3, L.generator_class(1), 2);
        auto cv = certify_central_power(run.ss, 6, *v2);
        EXPECT_EQ(cv.status, CertificateStatus::Certified);
        EXPECT_EQ(cv.exponent, p == 2 ? 1u : p);
    }
}

TEST(Spectral, CertificateTrivialWhenAlreadyACycle) {
    auto A = q4_e2(2, 20);
    auto run = run_family(A, {Family::Zero, {}});
    auto c = certify_central_power(run.ss, 2, A->loop_homology().generator_class(0));
    EXPECT_EQ(c.exponent, 1u);
    for (const auto& w : c.pages) EXPECT_FALSE(w.image_nonzero);
}

TEST(Spectral, CertificateRequiresEffectiveCentralElement) {
    auto A = q4_e2(3, 20);
    auto run = run_family(A, {Family::Zero, {}});
    EXPECT_THROW(certify_central_power(run.ss, 3, A->loop_homology().generator_class(1)), InvalidInput);
}

TEST(Spectral, CertificateIndeterminateAtLowTruncation) {
    auto A = q4_e2(2, 6);
    auto run = run_family(A, {Family::D3, {1, 1, 1}});
    auto c = certify_central_power(run.ss, 2, A->loop_homology().generator_class(0));
    EXPECT_EQ(c.status, CertificateStatus::Indeterminate);
    EXPECT_GT(c.required_truncation, 6);
}

TEST(Spectral, FiltrationOfQ4HasProductsOfLengthTwo) {
    auto A = q4_e2(2, 12);
    auto run = run_family(A, {Family::Zero, {}});
    auto model = filtered_model(run.ss.e_infinity(), 6);
    auto chk = filtration_nilpotency_check(model, 7);
    EXPECT_TRUE(chk.ok()) << chk.violation;
    EXPECT_EQ(chk.max_nonzero_length, 2);  // a * b
}

TEST(Spectral, FiltrationOfTorusReachesLengthN) {
    for (int n = 2; n <= 6; ++n) {
        AlgebraPresentation h;
        h.p = 2;
        for (int i = 0; i < n; ++i) h.factors.push_back(MonogenicFactor::exterior(1, "x" + std::to_string(i)));
        auto A = build_e2(h, AlgebraPresentation::unit(2), n, n, false);
        auto run = run_spectral_sequence(A, {});
        auto chk = filtration_nilpotency_check(filtered_model(run.e_infinity(), 0), n);
        EXPECT_TRUE(chk.ok());
        EXPECT_EQ(chk.max_nonzero_length, n);
    }
}

TEST(Spectral, FiltrationDetectsBrokenTables) {
    std::mt19937 rng(7);
    int detected = 0;
    for (int trial = 0; trial < 100; ++trial) {
        FilteredAlgebraModel m;
        m.p = 3;
        std::uniform_int_distribution<int> col(-4, 0);
        for (int i = 0; i < 6; ++i) m.column.push_back(col(rng));
        m.column.push_back(0);
        m.column.push_back(-1);
        // a consistent product, then one landing in the wrong column
        std::uniform_int_distribution<std::size_t> pick(0, 7);
        const std::size_t i = pick(rng), j = pick(rng);
        std::size_t k = pick(rng);
        while (m.column[k] == m.column[i] + m.column[j]) k = (k + 1) % 8;
        m.products[{i, j}] = {{k, 1}};
        auto chk = filtration_nilpotency_check(m, 4);
        if (!chk.additivity_ok) ++detected;
    }
    EXPECT_EQ(detected, 100);
    FilteredAlgebraModel bad;
    bad.column = {1};
    EXPECT_FALSE(filtration_nilpotency_check(bad, 3).support_ok);
}
