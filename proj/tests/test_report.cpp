#include <gtest/gtest.h>

#include "fpell/commands.hpp"

using namespace fpell;

namespace {

Source src(std::string name, std::string text) { return {std::move(name), std::move(text)}; }

const char* kQ4Cohomology = "prime: 2\ngenerator: a 3 exterior\ngenerator: b 4 exterior\n";
const char* kQ4Loop = "prime: 2\nhopf: true\ngenerator: u 2\ngenerator: v 3\n";

std::vector<Report> sample_reports() {
    std::vector<Report> out;
    out.push_back(cmd_series(src("unit", "prime: 2\n"), 6, {"unit", "--max-degree", "6"}));
    out.push_back(cmd_series(src("rel", "prime: 3\ngenerator: x 2\nrelation: x^4\n"), 10));
    out.push_back(cmd_depth(src("pe", "prime: 3\ngenerator: x 2\ngenerator: y 3 exterior\n")));
    out.push_back(cmd_elliptic(src("loop", kQ4Loop)));
    out.push_back(cmd_ss(src("h", kQ4Cohomology), src("l", kQ4Loop), {7, 2u, 12, true},
                         src("d", "page: 3\nd(u) = a*u^2\nd(v) = a*u*v\nd(b) = a*b*u\n")));
    out.push_back(cmd_verdict_name("V2(R^5)", std::nullopt));
    out.push_back(cmd_catalog(3, 3u));
    out.push_back(cmd_check(9, 10));
    out.push_back(error_report("series", {"x"}, ParseError("f", 3, 4, "bad")));
    return out;
}

}  // namespace

TEST(Report, Fnv1aVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Report, JsonRoundTrip) {
    for (const auto& r : sample_reports()) {
        const Report back = parse_report(emit_json(r));
        EXPECT_EQ(back, r) << r.command;
        EXPECT_EQ(emit_json(back), emit_json(r));
    }
}

TEST(Report, TextIsDeterministic) {
    const auto a = sample_reports(), b = sample_reports();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(emit_text(a[i]), emit_text(b[i]));
}

TEST(Report, MalformedJsonRejected) {
    EXPECT_THROW(parse_report("{"), InvalidInput);
    EXPECT_THROW(parse_report("{}"), InvalidInput);
    Json j = to_json(sample_reports().front());
    j["exit_code"] = 2;
    EXPECT_THROW(report_from_json(j), InvalidInput);
    j = to_json(sample_reports().front());
    j["format"] = "other";
    EXPECT_THROW(report_from_json(j), InvalidInput);
}

TEST(Commands, SeriesOfUnit) {
    const Report r = cmd_series(src("unit", "prime: 2\n"), 8);
    EXPECT_EQ(r.results["coefficients"], Json({1, 0, 0, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(r.status, ReportStatus::Ok);
}

TEST(Commands, SeriesValuesAreReproducible) {
    const Report r = cmd_series(src("loop", kQ4Loop), 40);
    AlgebraPresentation a = *parse_presentation(kQ4Loop).structured;
    const auto c = coefficients(poincare_series(a), 40);
    ASSERT_EQ(r.results["coefficients"].size(), 41u);
    for (int d = 0; d <= 40; ++d) EXPECT_EQ(r.results["coefficients"][d].get<long long>(), static_cast<long long>(c[d]));
    EXPECT_EQ(r.results["growth"]["k0"], 2);
    EXPECT_EQ(r.results["oracle"]["agrees"], true);
    EXPECT_EQ(r.results["one_generated"], "false");
    EXPECT_EQ(r.inputs.front().digest, fnv1a_hex(kQ4Loop));
}

TEST(Commands, DepthExample) {
    const Report r = cmd_depth(src("pe", "prime: 3\ngenerator: x 2\ngenerator: y 3 exterior\n"));
    EXPECT_EQ(r.results["depth"], 1);
    EXPECT_EQ(r.results["gorenstein"], true);
    EXPECT_EQ(r.results["socle"], Json({{"s", 1}, {"t", -1}}));
}

TEST(Commands, DepthRejectsRelations) {
    EXPECT_THROW(cmd_depth(src("rel", "prime: 3\ngenerator: x 2\nrelation: x^4\n")), InvalidInput);
}

TEST(Commands, VerdictCarriesChainVerbatim) {
    const Report r = cmd_verdict_name("V2(R^5)", std::nullopt);
    EXPECT_EQ(r.results["conclusion"], "InfinitelyManyGeodesics");
    const Verdict v = verdict(find_space("V2(R^5)"));
    ASSERT_EQ(r.results["rules"].size(), v.rules.size());
    for (std::size_t i = 0; i < v.rules.size(); ++i)
        for (std::size_t k = 0; k < v.rules[i].steps.size(); ++k) {
            EXPECT_EQ(r.results["rules"][i]["steps"][k]["citation"], v.rules[i].steps[k].citation);
            EXPECT_EQ(r.results["rules"][i]["steps"][k]["axiom"], v.rules[i].steps[k].axiom);
        }
    EXPECT_EQ(exit_code(r.status), 0);
}

TEST(Commands, VerdictExitCodes) {
    EXPECT_EQ(cmd_verdict_name("S^5", std::nullopt).status, ReportStatus::Ok);
    EXPECT_EQ(cmd_verdict_name("SU(2)/SO(3)", std::nullopt).status, ReportStatus::UnknownData);
    EXPECT_THROW(cmd_verdict_name("T^3", std::nullopt), UnknownSpace);
}

TEST(Commands, PrimeBoundDropsData) {
    // Q_{4,3} fires only at p = 3
    const Report r = cmd_verdict_name("Q_{4,3}", 2u);
    EXPECT_EQ(r.results["conclusion"], "Unknown");
    EXPECT_EQ(cmd_verdict_name("Q_{4,3}", 3u).results["conclusion"], "InfinitelyManyGeodesics");
}

TEST(Commands, SsRejectsInvalidFixtureWithLine) {
    try {
        cmd_ss(src("h", kQ4Cohomology), src("l", kQ4Loop), {7, std::nullopt, 20, true},
               src("d", "page: 3\nd(u) = a*u^2\n\nd(u^2) = a*u^3\n"));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4);
    }
}

TEST(Commands, SsCertificates) {
    const Report r = cmd_ss(src("h", kQ4Cohomology), src("l", kQ4Loop), {7, 2u, 24, true},
                            src("d", "page: 3\nd(u) = a*u^2\nd(v) = a*u*v\nd(b) = a*b*u\n"));
    EXPECT_EQ(r.status, ReportStatus::Ok);
    EXPECT_EQ(r.results["survival_bound"], 8);
    ASSERT_EQ(r.results["certificates"].size(), 2u);
    EXPECT_EQ(r.results["certificates"][0]["element"], "u");
    EXPECT_EQ(r.results["certificates"][0]["exponent"], 2);
    EXPECT_EQ(r.results["filtration"]["ok"], true);
    EXPECT_THROW(cmd_ss(src("h", kQ4Cohomology), src("l", kQ4Loop), {7, 3u, 24, true}, std::nullopt), InvalidInput);
}

TEST(Commands, CheckIsSeeded) {
    EXPECT_EQ(cmd_check(4, 30), cmd_check(4, 30));
    EXPECT_EQ(cmd_check(4, 30).status, ReportStatus::Ok);
    EXPECT_THROW(cmd_check(4, 0), InvalidInput);
}

TEST(Commands, ErrorReportPosition) {
    const Report r = error_report("series", {}, ParseError("f.pres", 3, 7, "boom"));
    EXPECT_EQ(exit_code(r.status), 2);
    EXPECT_EQ(r.results["position"]["line"], 3);
    EXPECT_EQ(r.results["position"]["column"], 7);
}
