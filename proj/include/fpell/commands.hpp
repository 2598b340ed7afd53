#pragma once

/**
 * @file commands.hpp
 * @brief The command layer behind the CLI: every command turns its inputs into a Report.
 *
 * Commands throw ParseError or InvalidInput on bad input; error_report turns
 * those into a report with exit code 2.
 */

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fpell/catalog.hpp"
#include "fpell/homalg.hpp"
#include "fpell/parse.hpp"
#include "fpell/random.hpp"
#include "fpell/report.hpp"
#include "fpell/series.hpp"
#include "fpell/spectral.hpp"
#include "fpell/structure.hpp"

namespace fpell {

/// A named text input.
struct Source {
    std::string name;
    std::string text;
};

inline Source read_source(const std::string& path) { return {path, detail::read_file(path)}; }

namespace detail {

inline Json big_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

inline std::string bideg_string(const Bidegree& b) { return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")"; }

inline AlgebraPresentation require_structured(const PresentationDoc& d, const std::string& what) {
    if (!d.structured)
        throw InvalidInput(d.source + ": " + what + " needs a presentation by monogenic factors (no 'relation' lines)");
    return *d.structured;
}

inline Json presentation_json(const AlgebraPresentation& a) {
    Json j;
    j["prime"] = a.p;
    j["hopf"] = a.hopf;
    j["infinite_tensor"] = a.infinite_tensor;
    j["multiplication"] = a.graded_commutative ? "graded-commutative" : "commutative";
    j["factors"] = Json::array();
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const auto& f = a.factors[i];
        Json fj;
        fj["name"] = a.factor_name(i);
        fj["degree"] = f.degree;
        fj["kind"] = f.kind == FactorKind::Exterior ? "exterior" : (f.kind == FactorKind::Polynomial ? "polynomial" : "truncated");
        if (f.kind == FactorKind::Truncated) fj["height"] = f.height;
        j["factors"].push_back(fj);
    }
    return j;
}

inline std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
    return out;
}

inline Json verdict_json(const Verdict& v) {
    Json j;
    j["space"] = v.space;
    j["conclusion"] = to_string(v.conclusion);
    j["unknown_kind"] = to_string(v.unknown_kind);
    j["rules"] = Json::array();
    for (const auto& r : v.rules) {
        Json rj;
        rj["rule"] = r.rule;
        rj["field"] = !r.prime ? "" : (*r.prime == 0 ? "Q" : "F_" + std::to_string(*r.prime));
        rj["fired"] = r.fired;
        rj["reason"] = r.reason;
        rj["steps"] = Json::array();
        for (const auto& st : r.steps)
            rj["steps"].push_back({{"claim", st.claim}, {"citation", st.citation}, {"axiom", st.axiom}, {"facts", st.facts}});
        j["rules"].push_back(rj);
    }
    j["notes"] = v.notes;
    return j;
}

inline std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) nl = s.size();
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

}  // namespace detail

/// Largest degree accepted by `series`.
inline constexpr int kMaxSeriesDegree = 4096;
/// Degree through which `series` cross-checks a structured presentation against the quotient oracle.
inline constexpr int kSeriesOracleDegree = 40;

inline Report cmd_series(const Source& src, int max_degree, std::vector<std::string> args = {}) {
    if (max_degree < 0 || max_degree > kMaxSeriesDegree)
        throw InvalidInput("--max-degree must lie in [0, " + std::to_string(kMaxSeriesDegree) + "]");
    Report r;
    r.command = "series";
    r.arguments = std::move(args);
    r.inputs.push_back(file_input(src.name, src.text));
    const PresentationDoc doc = parse_presentation(src.text, src.name);
    if (doc.structured && doc.structured->infinite_tensor)
        throw InvalidInput(src.name + ": an infinite tensor product has no finite list of factors to expand");
    Json& j = r.results;
    j["max_degree"] = max_degree;
    j["prime"] = doc.p;
    if (doc.structured) {
        const PoincareSeries s = poincare_series(*doc.structured);
        const auto c = coefficients(s, max_degree);
        j["series"] = s.to_string();
        j["coefficients"] = Json::array();
        for (const auto& x : c) j["coefficients"].push_back(detail::big_json(x));
        const GrowthClass g = growth_class(s);
        j["growth"] = {{"class", to_string(g.tag)}, {"k0", g.k0}};
        r.text.push_back("series: " + s.to_string());
        std::string cs;
        for (const auto& x : c) cs += (cs.empty() ? "" : " ") + x.str();
        r.text.push_back("dimensions 0.." + std::to_string(max_degree) + ": " + cs);
        r.text.push_back("growth: " + std::string(to_string(g.tag)) + ", K0 = " + std::to_string(g.k0));
        if (doc.finite) {
            const int od = std::min(max_degree, kSeriesOracleDegree);
            QuotientAlgebra A(to_finite(*doc.structured, od));
            bool agree = true;
            for (int d = 0; d <= od; ++d) agree = agree && BigInt(A.dim(d)) == c[d];
            j["oracle"] = {{"degree", od}, {"agrees", agree}};
            r.text.push_back("monomial-basis oracle " + std::string(agree ? "agrees" : "DISAGREES") + " through degree " +
                             std::to_string(od));
        } else {
            j["oracle"] = nullptr;
        }
        const int qd = std::max(1, detail::max_factor_degree(*doc.structured));
        const Tri og = one_generated(indecomposables(*doc.structured, qd));
        j["one_generated"] = std::string(to_string(og));
        r.text.push_back("generated by one element: " + std::string(to_string(og)));
    } else {
        FinitePresentation f = *doc.finite;
        f.cutoff = max_degree;
        QuotientAlgebra A(f);
        j["series"] = nullptr;
        j["coefficients"] = Json::array();
        std::vector<std::size_t> dims;
        for (int d = 0; d <= max_degree; ++d) {
            dims.push_back(A.dim(d));
            j["coefficients"].push_back(A.dim(d));
        }
        j["growth"] = nullptr;
        j["oracle"] = {{"degree", max_degree}, {"agrees", true}};
        r.text.push_back("dimensions 0.." + std::to_string(max_degree) + " (monomial basis): " + detail::join_sizes(dims));
        const Tri og = one_generated(indecomposables(A, max_degree));
        j["one_generated"] = std::string(to_string(og));
        r.text.push_back("generated by one element: " + std::string(to_string(og)) + " (through degree " +
                         std::to_string(max_degree) + ")");
    }
    return r;
}

inline Report cmd_depth(const Source& src, std::vector<std::string> args = {}) {
    Report r;
    r.command = "depth";
    r.arguments = std::move(args);
    r.inputs.push_back(file_input(src.name, src.text));
    const AlgebraPresentation a = detail::require_structured(parse_presentation(src.text, src.name), "depth");
    const ExtTable t = ext_table(a);
    const DepthResult dp = depth(t);
    const GorensteinResult g = is_gorenstein(t);
    Json& j = r.results;
    j["presentation"] = detail::presentation_json(a);
    j["ext"] = Json::array();
    std::string ext;
    for (const auto& [b, d] : t.entries) {
        j["ext"].push_back({{"s", b.first}, {"t", b.second}, {"dim", detail::big_json(d)}});
        ext += (ext.empty() ? "" : ", ") + detail::bideg_string(b) + ": " + d.str();
    }
    j["ext_finite"] = t.finite;
    j["depth"] = dp.value ? Json(*dp.value) : Json("infinite");
    j["gorenstein"] = g.is_gorenstein;
    j["socle"] = g.socle ? Json{{"s", g.socle->first}, {"t", g.socle->second}} : Json(nullptr);
    r.text.push_back("Ext_A(F,A) nonzero entries (s,t): " + (ext.empty() ? std::string("none") : ext));
    r.text.push_back("depth: " + dp.to_string());
    r.text.push_back("Gorenstein: " + std::string(g.is_gorenstein ? "yes" : "no") +
                     (g.socle ? ", socle " + detail::bideg_string(*g.socle) : std::string()));
    return r;
}

inline Report cmd_elliptic(const Source& src, std::vector<std::string> args = {}) {
    Report r;
    r.command = "elliptic";
    r.arguments = std::move(args);
    r.inputs.push_back(file_input(src.name, src.text));
    const AlgebraPresentation a = detail::require_structured(parse_presentation(src.text, src.name), "elliptic");
    const EllipticReport e = is_elliptic(a);
    Json& j = r.results;
    j["presentation"] = detail::presentation_json(a);
    j["elliptic"] = e.elliptic;
    j["conditions"] = {{"finitely_generated_and_nilpotent", e.fg_and_nilpotent},
                       {"nilpotent", e.nilpotent},
                       {"polynomial_growth", e.polynomial_growth},
                       {"gorenstein", e.gorenstein}};
    j["finitely_generated"] = e.finitely_generated;
    j["finite_depth"] = e.finite_depth;
    j["conditions_agree"] = e.conditions_agree;
    j["growth_exponent"] = e.growth_exponent;
    j["nilpotency_stage"] = e.nilpotency_stage;
    j["oracle_cutoff"] = e.oracle_cutoff;
    j["note"] = e.note;
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    r.text.push_back("elliptic (finitely generated and nilpotent): " + yn(e.fg_and_nilpotent));
    r.text.push_back("nilpotent: " + yn(e.nilpotent) + (e.nilpotency_stage >= 0 ? " (lower central series stage " +
                                                             std::to_string(e.nilpotency_stage) + ", checked through degree " +
                                                             std::to_string(e.oracle_cutoff) + ")"
                                                       : std::string()));
    r.text.push_back("polynomial growth: " + yn(e.polynomial_growth) + ", K0 = " + std::to_string(e.growth_exponent));
    r.text.push_back("Gorenstein: " + yn(e.gorenstein));
    r.text.push_back("conditions agree: " + yn(e.conditions_agree));
    if (!e.note.empty()) r.text.push_back("note: " + e.note);
    return r;
}

struct SsOptions {
    int dimension = 0;
    std::optional<unsigned> prime;
    int truncation = 24;
    bool simply_connected = true;
};

/// Largest truncation accepted by `ss`.
inline constexpr int kMaxTruncation = 200;

inline Report cmd_ss(const Source& hsrc, const Source& lsrc, const SsOptions& opt, const std::optional<Source>& dsrc,
                     std::vector<std::string> args = {}) {
    if (opt.truncation < 0 || opt.truncation > kMaxTruncation)
        throw InvalidInput("--truncate must lie in [0, " + std::to_string(kMaxTruncation) + "]");
    if (opt.dimension < 2) throw InvalidInput("--dim must be at least 2");
    Report r;
    r.command = "ss";
    r.arguments = std::move(args);
    r.inputs.push_back(file_input(hsrc.name, hsrc.text));
    r.inputs.push_back(file_input(lsrc.name, lsrc.text));
    if (dsrc) r.inputs.push_back(file_input(dsrc->name, dsrc->text));
    const AlgebraPresentation H = detail::require_structured(parse_presentation(hsrc.text, hsrc.name), "ss");
    const AlgebraPresentation L = detail::require_structured(parse_presentation(lsrc.text, lsrc.name), "ss");
    if (opt.prime && (H.p != *opt.prime || L.p != *opt.prime))
        throw InvalidInput("--prime " + std::to_string(*opt.prime) + " does not match the presentations");
    const auto A = build_e2(H, L, opt.dimension, opt.truncation, opt.simply_connected);
    const int n = A->dimension();
    std::optional<DifferentialFixture> fx;
    if (dsrc) {
        fx = parse_differentials(dsrc->text, dsrc->name);
        for (const auto& [page, lines] : fx->pages)
            if (page > n && !lines.empty())
                throw ParseError(dsrc->name, lines.front().line, 1,
                                 "page " + std::to_string(page) + " exceeds the dimension; d_r vanishes for r > n");
    }
    Json& j = r.results;
    j["dimension"] = n;
    j["prime"] = A->prime();
    j["truncation"] = A->truncation();
    j["pages"] = Json::array();
    SpectralSequence ss;
    ss.pages.push_back(SSPage::e2(A));
    for (int rr = 2; rr <= n; ++rr) {
        const SSPage& page = ss.pages.back();
        std::vector<GeneratorImage> specs;
        if (fx) specs = fx->images(*A, rr);
        // on failure, the shortest failing prefix of the fixture names the offending line
        auto attempt = [&](std::size_t k) -> std::optional<ExtendResult> {
            try {
                ExtendResult e = extend_derivation(page, {specs.begin(), specs.begin() + static_cast<std::ptrdiff_t>(k)});
                if (!e.report.valid) return std::nullopt;
                return e;
            } catch (const InvalidInput&) {
                return std::nullopt;
            }
        };
        auto offending_line = [&]() {
            for (std::size_t k = 1; k <= specs.size(); ++k)
                if (!attempt(k)) return fx->pages.at(rr)[k - 1].line;
            return fx->pages.at(rr).front().line;
        };
        ExtendResult ext;
        try {
            ext = extend_derivation(page, specs);
        } catch (const InvalidInput& e) {
            if (!fx || specs.empty()) throw;
            throw ParseError(dsrc->name, offending_line(), 1, "d_" + std::to_string(rr) + ": " + e.what());
        }
        const ValidationReport& v = ext.report;
        Json pj{{"r", rr},
                {"generator_images", specs.size()},
                {"valid", v.valid},
                {"failed_check", v.failed_check},
                {"detail", v.detail},
                {"pairs_checked", v.pairs_checked},
                {"pairs_skipped", v.pairs_skipped},
                {"unspanned_classes", ext.unspanned_classes}};
        j["pages"].push_back(pj);
        if (!v.valid) {
            r.status = ReportStatus::Error;
            const int line = fx && !specs.empty() ? offending_line() : 0;
            j["error"] = {{"page", rr}, {"check", v.failed_check}, {"detail", v.detail}, {"line", line}};
            r.text.push_back("d_" + std::to_string(rr) + " rejected (" + v.failed_check + "): " + v.detail +
                             (line ? " [" + (dsrc ? dsrc->name : std::string()) + ":" + std::to_string(line) + "]" : ""));
            return r;
        }
        r.text.push_back("d_" + std::to_string(rr) + ": " + std::to_string(specs.size()) +
                         " generator images, derivation valid (" + std::to_string(v.pairs_checked) + " Leibniz pairs checked, " +
                         std::to_string(v.pairs_skipped) + " beyond the truncation)");
        ss.pages.push_back(turn_page(page, ext.d));
        ss.differentials.push_back(std::move(ext.d));
    }
    const SSPage& einf = ss.e_infinity();
    j["e_infinity_column_zero"] = Json::array();
    std::string col0;
    for (int t = 0; t <= A->truncation(); ++t) {
        const bool known = einf.known({0, t});
        j["e_infinity_column_zero"].push_back(known ? Json(einf.dim({0, t})) : Json(nullptr));
        col0 += (t ? " " : "") + (known ? std::to_string(einf.dim({0, t})) : std::string("?"));
    }
    r.text.push_back("E_inf^{0,t}, t = 0.." + std::to_string(A->truncation()) + " (? = beyond what the truncation determines): " +
                     col0);

    const unsigned long long bound = survival_exponent(A->prime(), n, nonzero_cohomology_degrees(*A));
    j["survival_bound"] = bound;
    j["certificates"] = Json::array();
    r.text.push_back("survival bound p^m = " + std::to_string(bound));
    const QuotientAlgebra& LA = A->loop_homology();
    AlgebraPresentation lp = L;
    lp.hopf = false;
    bool indeterminate = false;
    for (const auto& g : effective_center_generators(lp)) {
        if (g.degree > A->truncation()) continue;
        const auto x = LA.power(L.factors[g.factor].degree, LA.generator_class(g.factor), static_cast<unsigned long long>(g.power));
        if (!x || x->empty()) continue;
        SurvivalCertificate c;
        try {
            c = certify_central_power(ss, g.degree, *x);
        } catch (const InvalidInput&) {
            continue;  // not central in this algebra
        }
        Json cj{{"element", c.element},
                {"degree", c.degree},
                {"status", c.status == CertificateStatus::Certified ? "certified" : "indeterminate"},
                {"exponent", c.exponent},
                {"bound", c.bound},
                {"bound_power_is_permanent", c.bound_power_is_permanent},
                {"required_truncation", c.required_truncation},
                {"note", c.note},
                {"pages", Json::array()}};
        for (const auto& w : c.pages)
            cj["pages"].push_back({{"r", w.r},
                                   {"exponent_in", w.exponent_in},
                                   {"image_nonzero", w.image_nonzero},
                                   {"image", w.image},
                                   {"exponent_out", w.exponent_out}});
        j["certificates"].push_back(cj);
        if (c.status == CertificateStatus::Certified) {
            r.text.push_back("(" + c.element + ")^" + std::to_string(c.exponent) + " is a permanent cycle (exponent <= " +
                             std::to_string(c.bound) + ")");
        } else {
            indeterminate = true;
            r.text.push_back(c.element + ": indeterminate, needs truncation " + std::to_string(c.required_truncation) +
                             (c.note.empty() ? "" : " (" + c.note + ")"));
        }
    }
    const int max_t = std::min(A->truncation(), 8);
    const FiltrationCheck fc = filtration_nilpotency_check(filtered_model(einf, max_t), n);
    j["filtration"] = {{"ok", fc.ok()},
                       {"fibre_degree_limit", max_t},
                       {"max_nonzero_length", fc.max_nonzero_length},
                       {"witness", fc.witness},
                       {"violation", fc.violation}};
    r.text.push_back("filtration: products of " + std::to_string(n + 1) + " elements of F^{-1} vanish: " +
                     (fc.ok() ? "yes" : "NO, " + fc.violation) + "; longest nonzero product " +
                     std::to_string(fc.max_nonzero_length) + (fc.witness.empty() ? "" : " (" + fc.witness + ")"));
    if (indeterminate) r.status = ReportStatus::UnknownData;
    return r;
}

namespace detail {

inline SpaceRecord restrict_primes(SpaceRecord s, std::optional<unsigned> prime_bound) {
    if (!prime_bound) return s;
    for (auto it = s.mod_p.begin(); it != s.mod_p.end();)
        it = it->first > *prime_bound ? s.mod_p.erase(it) : std::next(it);
    return s;
}

inline Report verdict_report(const SpaceRecord& s, std::optional<unsigned> prime_bound, Report r) {
    r.command = "verdict";
    const Verdict v = verdict(restrict_primes(s, prime_bound));
    r.results = verdict_json(v);
    if (prime_bound) r.results["prime_bound"] = *prime_bound;
    r.text = lines_of(render(v));
    if (v.conclusion == Conclusion::Unknown && v.unknown_kind == UnknownKind::DataMissing) r.status = ReportStatus::UnknownData;
    return r;
}

}  // namespace detail

/// Verdict for a catalog name; family parameters are not limited by the catalog bound.
inline Report cmd_verdict_name(const std::string& name, std::optional<unsigned> prime_bound, std::vector<std::string> args = {}) {
    Report r;
    r.arguments = std::move(args);
    r.inputs.push_back(name_input(name));
    return detail::verdict_report(find_space(name), prime_bound, std::move(r));
}

inline Report cmd_verdict_record(const Source& src, std::optional<unsigned> prime_bound, std::vector<std::string> args = {}) {
    Report r;
    r.arguments = std::move(args);
    r.inputs.push_back(file_input(src.name, src.text));
    return detail::verdict_report(parse_record(src.text, src.name), prime_bound, std::move(r));
}

inline Report cmd_catalog(int bound, std::optional<unsigned> prime_bound, std::vector<std::string> args = {}) {
    Report r;
    r.command = "catalog";
    r.arguments = std::move(args);
    r.results["bound"] = bound;
    r.results["records"] = Json::array();
    std::size_t positive = 0, unknown_math = 0, unknown_data = 0;
    for (const auto& s : builtin_catalog(bound)) {
        const Verdict v = verdict(detail::restrict_primes(s, prime_bound));
        const RuleOutcome* pr = v.primary();
        std::string via;
        if (pr) via = pr->rule + (pr->prime ? (*pr->prime == 0 ? " (Q)" : " (p=" + std::to_string(*pr->prime) + ")") : "");
        r.results["records"].push_back({{"space", v.space},
                                        {"family", s.family},
                                        {"conclusion", to_string(v.conclusion)},
                                        {"unknown_kind", to_string(v.unknown_kind)},
                                        {"primary_rule", via}});
        std::string line = v.space + ": " + to_string(v.conclusion);
        if (pr) line += " via " + via;
        else line += " (" + std::string(to_string(v.unknown_kind)) + ")";
        r.text.push_back(line);
        if (pr) ++positive;
        else if (v.unknown_kind == UnknownKind::DataMissing) ++unknown_data;
        else ++unknown_math;
    }
    r.results["summary"] = {{"infinitely_many", positive}, {"unknown_mathematical", unknown_math}, {"unknown_data_missing", unknown_data}};
    r.text.push_back(std::to_string(positive) + " positive, " + std::to_string(unknown_math) + " open, " +
                     std::to_string(unknown_data) + " missing data");
    return r;
}

/// Seeded property checks over random Borel-form presentations.
inline Report cmd_check(unsigned long long seed, int count, std::vector<std::string> args = {}) {
    if (count < 1 || count > 100000) throw InvalidInput("--count must lie in [1, 100000]");
    Report r;
    r.command = "check";
    r.arguments = std::move(args);
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    const std::vector<unsigned> primes = {2, 3, 5};
    std::size_t depth_fail = 0, gor_fail = 0, four_way_fail = 0, oracle_fail = 0;
    std::vector<std::string> failures;
    for (int i = 0; i < count; ++i) {
        const unsigned p = primes[static_cast<std::size_t>(i) % primes.size()];
        AlgebraPresentation a = random_borel_hopf(rng, p), b = random_borel_hopf(rng, p);
        const AlgebraPresentation ab = tensor(a, b);
        if (!(depth(ab) == depth(a) + depth(b)) ||
            *depth(ab).value != static_cast<int>(ab.polynomial_factor_count()) ||
            *depth(ab).value != growth_class(poincare_series(ab)).k0) {
            ++depth_fail;
            failures.push_back("depth additivity, case " + std::to_string(i));
        }
        if (is_gorenstein(ab).is_gorenstein != (is_gorenstein(a).is_gorenstein && is_gorenstein(b).is_gorenstein)) {
            ++gor_fail;
            failures.push_back("Gorenstein tensor closure, case " + std::to_string(i));
        }
        if (i % 5 == 0) a.infinite_tensor = true;
        if (!is_elliptic(a).conditions_agree) {
            ++four_way_fail;
            failures.push_back("ellipticity conditions, case " + std::to_string(i));
        }
        const AlgebraPresentation c = random_borel(rng, p);
        QuotientAlgebra Q(to_finite(c, 24));
        const auto co = coefficients(poincare_series(c), 24);
        for (int d = 0; d <= 24; ++d)
            if (BigInt(Q.dim(d)) != co[d]) {
                ++oracle_fail;
                failures.push_back("series against oracle, case " + std::to_string(i));
                break;
            }
    }
    r.results = {{"seed", seed},
                 {"count", count},
                 {"depth_additivity_failures", depth_fail},
                 {"gorenstein_closure_failures", gor_fail},
                 {"elliptic_agreement_failures", four_way_fail},
                 {"oracle_failures", oracle_fail},
                 {"failures", failures}};
    r.text.push_back("seed " + std::to_string(seed) + ", " + std::to_string(count) + " cases");
    r.text.push_back("depth additivity: " + std::to_string(count - static_cast<int>(depth_fail)) + "/" + std::to_string(count));
    r.text.push_back("Gorenstein tensor closure: " + std::to_string(count - static_cast<int>(gor_fail)) + "/" + std::to_string(count));
    r.text.push_back("ellipticity conditions agree: " + std::to_string(count - static_cast<int>(four_way_fail)) + "/" +
                     std::to_string(count));
    r.text.push_back("series equals monomial basis through degree 24: " + std::to_string(count - static_cast<int>(oracle_fail)) +
                     "/" + std::to_string(count));
    for (const auto& f : failures) r.text.push_back("FAIL " + f);
    if (!failures.empty()) r.status = ReportStatus::Error;
    return r;
}

/// The report for a command that failed on its input.
inline Report error_report(std::string command, std::vector<std::string> args, const std::exception& e) {
    Report r;
    r.command = std::move(command);
    r.arguments = std::move(args);
    r.status = ReportStatus::Error;
    r.results["error"] = e.what();
    if (const auto* pe = dynamic_cast<const ParseError*>(&e))
        r.results["position"] = {{"source", pe->source()}, {"line", pe->line()}, {"column", pe->column()}};
    if (const auto* us = dynamic_cast<const UnknownSpace*>(&e)) r.results["near_matches"] = us->near_matches();
    r.text.push_back("error: " + std::string(e.what()));
    return r;
}

}  // namespace fpell
