#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fpell/catalog.hpp"

using namespace fpell;

namespace {

bool fired(const Verdict& v, const std::string& rule, std::optional<unsigned> p) {
    for (const auto& r : v.rules)
        if (r.rule == rule && r.prime == p && r.fired) return true;
    return false;
}

void expect_chain_shape(const Verdict& v) {
    for (const auto& r : v.rules) {
        if (!r.fired) {
            EXPECT_FALSE(r.reason.empty()) << v.space << " " << r.rule;
            continue;
        }
        ASSERT_GE(r.steps.size(), 3u);
        EXPECT_EQ(r.steps.front().citation, "record");
        EXPECT_TRUE(r.steps.back().axiom);
        EXPECT_EQ(r.steps.back().citation, cite::gromoll_meyer);
        for (const auto& st : r.steps)
            if (st.citation == cite::computed) EXPECT_FALSE(st.facts.empty()) << v.space << ": " << st.claim;
    }
}

}  // namespace

TEST(Catalog, SphereBundlesFireExactlyAtDividingPrimes) {
    for (int n = 2; n <= 6; ++n)
        for (long long e : {1LL, 2LL, 3LL, 6LL, 10LL, 7LL, 13LL}) {
            const Verdict v = verdict(make_sphere_bundle(n, e));
            expect_chain_shape(v);
            bool any = false;
            for (unsigned p : catalog_primes()) {
                const bool divides = e % static_cast<long long>(p) == 0;
                EXPECT_EQ(fired(v, "polynomial-growth", p), divides) << v.space << " p=" << p;
                any = any || divides;
            }
            EXPECT_FALSE(fired(v, "rational", 0u)) << v.space;
            EXPECT_EQ(v.conclusion == Conclusion::InfinitelyManyGeodesics, any) << v.space;
            if (!any) EXPECT_EQ(v.unknown_kind, UnknownKind::Mathematical);
        }
}

TEST(Catalog, TrivialBundleFiresRationally) {
    const Verdict v = verdict(make_sphere_bundle(2, 0));
    EXPECT_TRUE(fired(v, "rational", 0u));
    EXPECT_EQ(v.primary()->rule, "rational");
    expect_chain_shape(v);
}

TEST(Catalog, StiefelAndGrassmannian) {
    for (int n = 2; n <= 6; ++n) {
        const Verdict s = verdict(make_stiefel(n));
        EXPECT_EQ(s.conclusion, Conclusion::InfinitelyManyGeodesics);
        EXPECT_TRUE(fired(s, "polynomial-growth", 2u));
        EXPECT_EQ(s.primary()->prime, std::optional<unsigned>(2));
        expect_chain_shape(s);

        const Verdict g = verdict(make_grassmannian(n));
        EXPECT_EQ(g.conclusion, Conclusion::InfinitelyManyGeodesics) << g.space;
        EXPECT_TRUE(fired(g, "polynomial-growth", 2u)) << g.space;
        EXPECT_FALSE(fired(g, "rational", 0u));
        for (unsigned p : {3u, 5u, 7u}) EXPECT_FALSE(fired(g, "polynomial-growth", p));
        expect_chain_shape(g);
    }
}

TEST(Catalog, OneGeneratedSpacesStayUnknown) {
    for (int n = 2; n <= 8; ++n) {
        for (const auto& s : {make_sphere(n), make_complex_projective(n)}) {
            const Verdict v = verdict(s);
            EXPECT_EQ(v.conclusion, Conclusion::Unknown) << s.name;
            EXPECT_EQ(v.unknown_kind, UnknownKind::Mathematical) << s.name;
            EXPECT_EQ(v.primary(), nullptr);
        }
    }
}

TEST(Catalog, StubsAreDataMissing) {
    for (const auto& s : homogeneous_stubs()) {
        EXPECT_TRUE(s.is_stub());
        const Verdict v = verdict(s);
        EXPECT_EQ(v.conclusion, Conclusion::Unknown) << s.name;
        EXPECT_EQ(v.unknown_kind, UnknownKind::DataMissing) << s.name;
    }
}

TEST(Catalog, StubWithSuppliedCohomologyFires) {
    SpaceRecord s = homogeneous_stubs()[1];
    ASSERT_EQ(s.name, "Sp(2)/SU(2)");
    AlgebraPresentation h;
    h.p = 2;
    h.factors = {MonogenicFactor::exterior(3, "a"), MonogenicFactor::exterior(4, "b")};
    s.mod_p[2].cohomology = h;
    const Verdict v = verdict(s);
    EXPECT_EQ(v.conclusion, Conclusion::InfinitelyManyGeodesics);
    const RuleOutcome* r = v.primary();
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->rule, "polynomial-growth");
    EXPECT_EQ(r->steps[1].citation, cite::homogeneous);
    EXPECT_TRUE(r->steps[1].axiom);
    expect_chain_shape(v);
}

TEST(Catalog, NotSimplyConnected) {
    SpaceRecord s = make_sphere_bundle(2, 2);
    s.simply_connected = false;
    const Verdict v = verdict(s);
    ASSERT_EQ(v.rules.size(), 1u);
    EXPECT_EQ(v.rules[0].rule, "simply-connected");
    EXPECT_EQ(v.conclusion, Conclusion::Unknown);
    EXPECT_EQ(v.unknown_kind, UnknownKind::Mathematical);
}

TEST(Catalog, GrowthFiringImpliesCentreFiring) {
    for (const auto& s : builtin_catalog(6)) {
        const Verdict v = verdict(s);
        for (const auto& [p, d] : s.mod_p) {
            if (!d.loop_homology || !fired(v, "polynomial-growth", p)) continue;
            EXPECT_TRUE(fired(v, "centre", p)) << s.name << " p=" << p;
        }
    }
}

TEST(Catalog, VerdictIgnoresRecordOrdering) {
    std::mt19937 rng(5);
    auto cat = builtin_catalog(5);
    std::vector<Verdict> base;
    for (const auto& s : cat) base.push_back(verdict(s));
    for (int round = 0; round < 3; ++round) {
        std::vector<std::size_t> idx(cat.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i : idx) {
            SpaceRecord s = cat[i];
            std::reverse(s.aliases.begin(), s.aliases.end());
            EXPECT_EQ(verdict(s), base[i]) << s.name;
        }
    }
}

TEST(Catalog, VerdictIgnoresFactorOrdering) {
    SpaceRecord s = make_sphere_bundle(3, 6);
    SpaceRecord t = s;
    for (auto& [p, d] : t.mod_p) {
        std::reverse(d.cohomology->factors.begin(), d.cohomology->factors.end());
        std::reverse(d.loop_homology->factors.begin(), d.loop_homology->factors.end());
    }
    const Verdict a = verdict(s), b = verdict(t);
    EXPECT_EQ(a.conclusion, b.conclusion);
    ASSERT_EQ(a.rules.size(), b.rules.size());
    for (std::size_t i = 0; i < a.rules.size(); ++i) EXPECT_EQ(a.rules[i].fired, b.rules[i].fired) << a.rules[i].rule;
}

TEST(Catalog, BuiltinIsSortedAndValid) {
    const auto cat = builtin_catalog(10);
    EXPECT_TRUE(std::is_sorted(cat.begin(), cat.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
    for (const auto& s : cat) EXPECT_NO_THROW(s.validate()) << s.name;
    EXPECT_THROW(builtin_catalog(1), InvalidInput);
}

TEST(Catalog, RecordValidation) {
    SpaceRecord s = make_sphere(4);
    s.dimension = 3;
    EXPECT_THROW(s.validate(), InvalidInput);
    s = make_sphere_bundle(2, 2);
    s.mod_p[2].cohomology->p = 3;
    EXPECT_THROW(s.validate(), InvalidInput);
    s = make_sphere(3);
    s.mod_p[4] = PrimeData{};
    EXPECT_THROW(s.validate(), InvalidInput);
    s = make_sphere(5);
    s.rational_cohomology->factors.push_back(MonogenicFactor::exterior(1, "e"));
    s.rational_cohomology->factors.back().degree = 1;
    s.dimension = 6;
    EXPECT_THROW(s.validate(), InvalidInput);
}

TEST(Catalog, FindSpace) {
    EXPECT_EQ(find_space("Q_{4,2}").name, "Q_{4,2}");
    EXPECT_EQ(find_space("q4,2").name, "Q_{4,2}");
    EXPECT_EQ(find_space("S^3").dimension, 3);
    EXPECT_EQ(find_space("cp^2").name, "CP^2");
    EXPECT_EQ(find_space("V2(R^5)").aliases.front(), "Q_{4,2}");
    EXPECT_EQ(find_space("G2+(R^7)").dimension, 10);
    EXPECT_EQ(find_space("Sp(2)/SU(2)").dimension, 7);
    EXPECT_EQ(find_space("Q_{6,-3}").name, "Q_{6,-3}");
    EXPECT_THROW(find_space("Q_{5,2}"), InvalidInput);
    EXPECT_THROW(find_space("V2(R^4)"), InvalidInput);
    EXPECT_THROW(find_space("S^99999999999999999999"), InvalidInput);
    try {
        find_space("Sp(2)/SU(3)");
        FAIL();
    } catch (const UnknownSpace& e) {
        ASSERT_FALSE(e.near_matches().empty());
        EXPECT_EQ(e.near_matches().front(), "Sp(2)/SU(2)");
    }
}

TEST(Catalog, Golden) {
    std::ostringstream os;
    for (const auto& s : builtin_catalog(6)) os << render(verdict(s));
    const std::string path = std::string(FPELL_SOURCE_DIR) + "/tests/golden/verdicts.txt";
    if (std::getenv("FPELL_UPDATE_GOLDEN")) std::ofstream(path) << os.str();
    std::ifstream in(path);
    ASSERT_TRUE(in) << "missing " << path;
    std::stringstream expected;
    expected << in.rdbuf();
    EXPECT_EQ(os.str(), expected.str());
}
