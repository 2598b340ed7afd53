#pragma once

// Q_{4,e} fixtures shared by the spectral tests and the acceptance binary.
// H^*(Q) = E[a_3, b_4] (n = 7) and H_*(Omega Q) = P[u_2, v_3] for p | e.

#include <random>
#include <string>
#include <vector>

#include "fpell/expr.hpp"
#include "fpell/spectral.hpp"

namespace fpell::testing {

inline AlgebraPresentation q4_cohomology(unsigned p) {
    AlgebraPresentation h;
    h.p = p;
    h.factors = {MonogenicFactor::exterior(3, "a"), MonogenicFactor::truncated(4, 2, "b")};
    return h;
}

inline AlgebraPresentation q4_loop(unsigned p) {
    AlgebraPresentation l;
    l.p = p;
    l.graded_commutative = p == 2;
    l.factors = {MonogenicFactor::polynomial(2, "u"), MonogenicFactor::polynomial(3, "v")};
    return l;
}

inline std::shared_ptr<const E2Algebra> q4_e2(unsigned p, int T) {
    return build_e2(q4_cohomology(p), q4_loop(p), 7, T);
}

inline PageElement el(const E2Algebra& A, const std::string& s) { return A.evaluate(parse_expr(s)); }

/// Which page carries the nontrivial differential.
enum class Family { D3, D4, D7, Zero };

struct FamilySpec {
    Family family = Family::Zero;
    std::vector<long long> coeffs;  ///< one per generator image
};

/// Generator images of a family on page r, as (generator, image expression) pairs scaled by the coefficients.
inline std::vector<GeneratorImage> family_images(const E2Algebra& A, const FamilySpec& f, int r) {
    std::vector<std::pair<std::string, std::string>> rows;
    if (f.family == Family::D3 && r == 3) rows = {{"u", "a*u^2"}, {"v", "a*u*v"}, {"b", "a*b*u"}};
    // at odd p, v^2 != 0 and b*u*v, a*b*v fail to commute with v as a derivation image must, so only v moves
    if (f.family == Family::D4 && r == 4) {
        rows = {{"v", "b*u^3"}, {"v", "b*v^2"}};
        if (A.prime() == 2) rows.insert(rows.end(), {{"u", "b*u*v"}, {"a", "a*b*v"}});
    }
    if (f.family == Family::D7 && r == 7) rows = {{"u", "a*b*u^4"}, {"v", "a*b*u^3*v"}};
    std::vector<GeneratorImage> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const long long c = i < f.coeffs.size() ? f.coeffs[i] : 1;
        PageElement src = el(A, rows[i].first);
        PageElement img = el(A, rows[i].second);
        img.coords = A.field().scale(img.coords, A.field().from_int(c));
        bool merged = false;
        for (auto& g : out)
            if (g.source.bidegree == src.bidegree && g.source.coords == src.coords) {
                g.image.coords = A.field().axpy(g.image.coords, 1, img.coords);
                merged = true;
            }
        if (!merged) out.push_back({src, img});
    }
    return out;
}

inline FamilySpec random_family(std::mt19937& rng, unsigned p) {
    std::uniform_int_distribution<int> fam(0, 3);
    std::uniform_int_distribution<long long> coef(0, static_cast<long long>(p) - 1);
    FamilySpec f;
    f.family = static_cast<Family>(fam(rng));
    for (int i = 0; i < 4; ++i) f.coeffs.push_back(coef(rng));
    return f;
}

struct FamilyRun {
    SpectralSequence ss;
    std::vector<ExtendResult> extensions;  ///< one per page 2..n
};

/// Runs the sequence, extending each page's generator images to a derivation.
inline FamilyRun run_family(std::shared_ptr<const E2Algebra> A, const FamilySpec& f) {
    FamilyRun run;
    run.ss.pages.push_back(SSPage::e2(A));
    for (int r = 2; r <= A->dimension(); ++r) {
        const SSPage& page = run.ss.pages.back();
        ExtendResult ext = extend_derivation(page, family_images(*A, f, r));
        if (!ext.report.valid) throw InvalidInput("family differential invalid: " + ext.report.detail);
        run.ss.pages.push_back(turn_page(page, ext.d));
        run.ss.differentials.push_back(ext.d);
        run.extensions.push_back(std::move(ext));
    }
    return run;
}

/// A corrupted copy of a nonzero differential; the second member names the kind of corruption.
inline std::pair<Differential, std::string> mutate(const SSPage& page, const Differential& d, std::mt19937& rng) {
    const auto& A = page.algebra();
    std::vector<Bideg> candidates;
    const std::vector<Bideg> generator_bidegrees = {{0, 2}, {0, 3}, {-3, 0}, {-4, 0}};
    for (Bideg b : page.bidegrees()) {
        const Bideg tg = d_target(b, d.r);
        if (!page.known(b) || page.dim(b) == 0 || !page.known(tg) || page.dim(tg) == 0) continue;
        if (std::find(generator_bidegrees.begin(), generator_bidegrees.end(), b) != generator_bidegrees.end()) continue;
        candidates.push_back(b);
    }
    Differential m = d;
    std::uniform_int_distribution<int> kind(0, 3);
    const int k = candidates.empty() ? 0 : kind(rng);
    if (k == 0) {
        // wrong bidegree on some nonzero image, or a nonzero image placed one step off
        for (auto& [b, imgs] : m.images)
            for (auto& e : imgs)
                if (!e.is_zero()) {
                    e.bidegree.t += 1;
                    return {m, "bidegree"};
                }
        Bideg b = page.bidegrees().front();
        for (Bideg x : page.bidegrees())
            if (page.known(x) && page.dim(x) > 0 && page.dim({x.s - d.r, x.t + d.r}) > 0) b = x;
        m.images[b] = std::vector<PageElement>(page.dim(b));
        m.images[b][0] = {{b.s - d.r, b.t + d.r}, {{0, 1}}};
        return {m, "bidegree"};
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const Bideg b = candidates[pick(rng)];
    const Bideg tg = d_target(b, d.r);
    auto& imgs = m.images[b];
    if (imgs.empty()) imgs.assign(page.dim(b), PageElement{tg, {}});
    std::uniform_int_distribution<std::size_t> cls(0, page.dim(b) - 1), coord(0, page.dim(tg) - 1);
    std::uniform_int_distribution<Coeff> cf(1, A.prime() - 1);
    auto& e = imgs[cls(rng)];
    e.bidegree = tg;
    e.coords = A.field().axpy(e.coords, cf(rng), SparseVector{{coord(rng), 1}});
    return {m, "leibniz"};
}

}  // namespace fpell::testing
