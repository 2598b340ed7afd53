#pragma once

/**
 * @file spectral.hpp
 * @brief Truncated second-quadrant multiplicative spectral sequences with
 *        E_2^{s,t} = H^{-s}(M) (x) H_t(Omega M).
 *
 * Conventions:
 *  - bidegree (s, t) with -n <= s <= 0 and t >= 0; total degree s + t;
 *  - product (a (x) x)(b (x) y) = (-1)^{|x||b|} ab (x) xy;
 *  - d_r has bidegree (-r, r-1) and d(xy) = d(x) y + (-1)^{s+t} x d(y) for x of bidegree (s, t);
 *  - the truncation T bounds the fibre degree t. A bidegree stays Known on
 *    page r+1 only if its d_r-neighbourhood was Known on page r, so page
 *    turns never invent zeros at the edge.
 *
 * Page r is stored inside E_2: per bidegree a subspace B_r of boundaries and
 * representatives of a basis of E_r = Z_r / B_r.
 */

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpell/field.hpp"
#include "fpell/presentation.hpp"
#include "fpell/quotient.hpp"
#include "fpell/structure.hpp"

namespace fpell {

struct Bideg {
    int s = 0;
    int t = 0;
    int total() const { return s + t; }
    friend auto operator<=>(const Bideg&, const Bideg&) = default;
    friend Bideg operator+(Bideg a, Bideg b) { return {a.s + b.s, a.t + b.t}; }
    friend Bideg operator-(Bideg a, Bideg b) { return {a.s - b.s, a.t - b.t}; }
    std::string to_string() const { return "(" + std::to_string(s) + "," + std::to_string(t) + ")"; }
};

/// Target of d_r.
inline Bideg d_target(Bideg b, int r) { return {b.s - r, b.t + r - 1}; }

/// A homogeneous element of a page: bidegree plus coordinates in that bidegree's basis.
struct PageElement {
    Bideg bidegree;
    SparseVector coords;
    bool is_zero() const { return coords.empty(); }
    friend bool operator==(const PageElement&, const PageElement&) = default;
};

/// The bigraded algebra E_2 = H (x) L through fibre degree T.
class E2Algebra {
public:
    E2Algebra(FinitePresentation cohomology, FinitePresentation loop, int n, int T, bool simply_connected = true)
        : H_(prepare_cohomology(std::move(cohomology), n)), L_(prepare_loop(std::move(loop), T)), F_(H_.prime()), n_(n),
          T_(T) {
        if (H_.prime() != L_.prime()) throw InvalidInput("cohomology and loop homology over different primes");
        if (n < 1) throw InvalidInput("manifold dimension must be positive");
        for (int d = n + 1; d <= H_.cutoff(); ++d)
            if (H_.dim(d) != 0) throw InvalidInput("cohomology is nonzero in degree " + std::to_string(d) + " > n");
        if (simply_connected && (H_.dim(1) != 0 || (n >= 2 && H_.dim(n - 1) != 0)))
            throw InvalidInput("simply connected manifold must have H^1 = H^{n-1} = 0");
        for (const auto& g : H_.presentation().generators)
            if (L_.presentation().generator_index(g.name))
                throw InvalidInput("generator name '" + g.name + "' used in both algebras");
        hprod_.resize(static_cast<std::size_t>(n) + 1);
        for (int a = 0; a <= n; ++a)
            for (int b = 0; a + b <= n; ++b) {
                std::vector<SparseVector> tab;
                for (std::size_t i = 0; i < H_.dim(a); ++i)
                    for (std::size_t j = 0; j < H_.dim(b); ++j) tab.push_back(H_.basis_product(a, i, b, j));
                hprod_[a].push_back(std::move(tab));
            }
        lprod_.resize(static_cast<std::size_t>(T) + 1);
        for (int a = 0; a <= T; ++a)
            for (int b = 0; a + b <= T; ++b) {
                std::vector<SparseVector> tab;
                for (std::size_t i = 0; i < L_.dim(a); ++i)
                    for (std::size_t j = 0; j < L_.dim(b); ++j) tab.push_back(L_.basis_product(a, i, b, j));
                lprod_[a].push_back(std::move(tab));
            }
    }

    const QuotientAlgebra& cohomology() const { return H_; }
    const QuotientAlgebra& loop_homology() const { return L_; }
    const PrimeField& field() const { return F_; }
    unsigned prime() const { return H_.prime(); }
    int dimension() const { return n_; }
    int truncation() const { return T_; }

    static bool in_support(Bideg b, int n) { return b.s <= 0 && b.s >= -n && b.t >= 0; }
    bool in_support(Bideg b) const { return in_support(b, n_); }
    bool in_range(Bideg b) const { return in_support(b) && b.t <= T_; }

    std::size_t dim(Bideg b) const { return in_range(b) ? H_.dim(-b.s) * L_.dim(b.t) : 0; }

    /// Coordinate of h_i (x) l_j.
    std::size_t index(Bideg b, std::size_t i, std::size_t j) const { return i * L_.dim(b.t) + j; }

    /// Product of E_2 elements; the result bidegree must be in range or outside the support.
    SparseVector multiply(Bideg a, const SparseVector& x, Bideg b, const SparseVector& y) const {
        const Bideg c = a + b;
        if (!in_support(c)) return {};
        if (c.t > T_) throw InvalidInput("product " + c.to_string() + " beyond the truncation");
        const int ha = -a.s, hb = -b.s;
        const std::size_t la = L_.dim(a.t), lb = L_.dim(b.t), lc = L_.dim(c.t);
        const std::size_t hbd = H_.dim(hb);
        const bool odd = (a.t % 2 != 0) && (hb % 2 != 0);
        std::vector<std::pair<std::size_t, Coeff>> acc;
        for (const auto& [ix, cx] : x) {
            const std::size_t i1 = ix / la, j1 = ix % la;
            for (const auto& [iy, cy] : y) {
                const std::size_t i2 = iy / lb, j2 = iy % lb;
                const SparseVector& h = hprod_[ha][hb][i1 * hbd + i2];
                if (h.empty()) continue;
                const SparseVector& l = lprod_[a.t][b.t][j1 * lb + j2];
                if (l.empty()) continue;
                Coeff c0 = F_.mul(cx, cy);
                if (odd) c0 = F_.neg(c0);
                for (const auto& [hi, hc] : h)
                    for (const auto& [li, lcf] : l) acc.emplace_back(hi * lc + li, F_.mul(c0, F_.mul(hc, lcf)));
            }
        }
        return F_.collect(std::move(acc));
    }

    std::string element_string(Bideg b, const SparseVector& v) const {
        if (v.empty()) return "0";
        std::string out;
        const std::size_t lb = L_.dim(b.t);
        for (const auto& [idx, c] : v) {
            if (!out.empty()) out += " + ";
            if (c != 1) out += std::to_string(c) + "*";
            const std::string hs = H_.basis_string(-b.s, idx / lb), ls = L_.basis_string(b.t, idx % lb);
            out += hs == "1" ? ls : (ls == "1" ? hs : hs + "*" + ls);
        }
        return out;
    }

    struct Generator {
        std::string name;
        PageElement element;
    };

    /// Algebra generators of E_2: cohomology generators (x) 1 and 1 (x) loop generators.
    std::vector<Generator> generators() const {
        std::vector<Generator> out;
        const auto& hp = H_.presentation();
        for (std::size_t g = 0; g < hp.generators.size(); ++g) {
            const int k = hp.generators[g].degree;
            if (k > n_) continue;
            out.push_back({hp.generators[g].name, {{-k, 0}, H_.generator_class(g)}});
        }
        const auto& lp = L_.presentation();
        for (std::size_t g = 0; g < lp.generators.size(); ++g) {
            const int k = lp.generators[g].degree;
            if (k > T_) continue;
            out.push_back({lp.generators[g].name, {{0, k}, L_.generator_class(g)}});
        }
        return out;
    }

    /// Evaluates a polynomial in the generators of both algebras (products in written order).
    PageElement evaluate(const Expr& e) const {
        const auto gens = generators();
        auto find = [&](const ExprFactor& f) -> const Generator& {
            for (const auto& g : gens)
                if (g.name == f.name) return g;
            throw InvalidInput("unknown generator '" + f.name + "'");
        };
        std::optional<Bideg> bd;
        SparseVector acc;
        for (const auto& term : e.terms) {
            Bideg b{0, 0};
            SparseVector v{{0, 1}};
            for (const auto& f : term.factors) {
                const Generator& g = find(f);
                for (unsigned k = 0; k < f.exponent; ++k) {
                    const Bideg nb = b + g.element.bidegree;
                    v = (in_support(nb) && nb.t <= T_) ? multiply(b, v, g.element.bidegree, g.element.coords)
                                                       : SparseVector{};
                    if (nb.t > T_ && in_support(nb)) throw InvalidInput("expression exceeds the truncation");
                    b = nb;
                }
            }
            const Coeff c = F_.from_int(term.coeff);
            if (bd && *bd != b) throw InvalidInput("expression is not bihomogeneous");
            bd = b;
            acc = F_.axpy(acc, c, v);
        }
        return {bd.value_or(Bideg{0, 0}), acc};
    }

private:
    static FinitePresentation prepare_cohomology(FinitePresentation f, int n) {
        f.cutoff = n + std::max(1, f.max_generator_degree());
        return f;
    }
    static FinitePresentation prepare_loop(FinitePresentation f, int T) {
        if (T < 0) throw InvalidInput("truncation must be nonnegative");
        f.cutoff = T;
        return f;
    }

    QuotientAlgebra H_;
    QuotientAlgebra L_;
    PrimeField F_;
    int n_;
    int T_;
    std::vector<std::vector<std::vector<SparseVector>>> hprod_;
    std::vector<std::vector<std::vector<SparseVector>>> lprod_;
};

/// E_2 from Borel-form data; cohomology must vanish above n.
inline std::shared_ptr<const E2Algebra> build_e2(const AlgebraPresentation& cohomology,
                                                 const AlgebraPresentation& loop, int n, int T,
                                                 bool simply_connected = true) {
    if (cohomology.p != loop.p) throw InvalidInput("cohomology and loop homology over different primes");
    if (cohomology.infinite_tensor || loop.infinite_tensor) throw InvalidInput("E_2 needs finite presentations");
    if (!poincare_series(cohomology).is_finite() || poincare_series(cohomology).top_degree() > n)
        throw InvalidInput("cohomology does not vanish above the dimension");
    AlgebraPresentation l = loop;
    l.hopf = false;
    AlgebraPresentation h = cohomology;
    h.hopf = false;
    return std::make_shared<const E2Algebra>(to_finite(h, n), to_finite(l, T), n, T, simply_connected);
}

enum class EntryState { Known, ZeroBySupport, Indeterminate };

inline const char* to_string(EntryState s) {
    switch (s) {
        case EntryState::Known: return "known";
        case EntryState::ZeroBySupport: return "zero-by-support";
        default: return "indeterminate";
    }
}

class SSPage {
public:
    /// The E_2 page: every bidegree within the truncation is Known with the standard basis.
    static SSPage e2(std::shared_ptr<const E2Algebra> alg) {
        SSPage p(std::move(alg), 2);
        const int n = p.alg_->dimension(), T = p.alg_->truncation();
        for (int s = 0; s >= -n; --s)
            for (int t = 0; t <= T; ++t) {
                Entry e(p.alg_->field());
                e.state = EntryState::Known;
                e.standard = true;
                e.dim = p.alg_->dim({s, t});
                p.entries_.emplace(Bideg{s, t}, std::move(e));
            }
        return p;
    }

    int r() const { return r_; }
    const E2Algebra& algebra() const { return *alg_; }
    std::shared_ptr<const E2Algebra> algebra_ptr() const { return alg_; }

    EntryState state(Bideg b) const {
        if (!alg_->in_support(b)) return EntryState::ZeroBySupport;
        auto it = entries_.find(b);
        return it == entries_.end() ? EntryState::Indeterminate : it->second.state;
    }
    bool known(Bideg b) const { return state(b) == EntryState::Known; }
    /// Known, or zero because it lies outside the second-quadrant strip.
    bool determined(Bideg b) const { return state(b) != EntryState::Indeterminate; }

    std::size_t dim(Bideg b) const {
        auto it = entries_.find(b);
        return (it == entries_.end() || it->second.state != EntryState::Known) ? 0 : it->second.dim;
    }

    /// Bidegrees in the strip within the truncation, in increasing order.
    std::vector<Bideg> bidegrees() const {
        std::vector<Bideg> out;
        for (const auto& [b, e] : entries_) out.push_back(b);
        return out;
    }

    /// E_2 coordinates of the k-th basis class.
    SparseVector representative(Bideg b, std::size_t k) const {
        const Entry& e = entry(b);
        return e.standard ? SparseVector{{k, 1}} : e.reps.at(k);
    }

    /// E_2 vector of a class.
    SparseVector lift(Bideg b, const SparseVector& cls) const {
        const Entry& e = entry(b);
        if (e.standard) return cls;
        SparseVector out;
        for (const auto& [k, c] : cls) out = alg_->field().axpy(out, c, e.reps.at(k));
        return out;
    }

    /// Class coordinates of an E_2 vector, or nullopt when it is not a cycle through this page.
    std::optional<SparseVector> classify(Bideg b, const SparseVector& v) const {
        const Entry& e = entry(b);
        if (e.standard) return v;
        const std::size_t w = alg_->dim(b);
        SparseVector red = e.classifier.reduce(v);
        SparseVector cls;
        const PrimeField& F = alg_->field();
        for (const auto& [col, c] : red) {
            if (col < w) return std::nullopt;
            cls.emplace_back(col - w, F.neg(c));
        }
        return cls;
    }

    /// Product of classes; nullopt when the result bidegree is Indeterminate.
    std::optional<SparseVector> multiply(Bideg a, const SparseVector& x, Bideg b, const SparseVector& y) const {
        const Bideg c = a + b;
        if (!alg_->in_support(c)) return SparseVector{};
        if (!known(c)) return std::nullopt;
        if (x.empty() || y.empty()) return SparseVector{};
        auto cls = classify(c, alg_->multiply(a, lift(a, x), b, lift(b, y)));
        if (!cls) throw InvalidInput("product of cycles is not a cycle at " + c.to_string());
        return cls;
    }

    std::string class_string(Bideg b, const SparseVector& cls) const {
        return alg_->element_string(b, lift(b, cls));
    }

private:
    friend class PageBuilder;
    friend SSPage turn_page(const SSPage&, const struct Differential&);

    struct Entry {
        explicit Entry(PrimeField F) : classifier(F) {}
        EntryState state = EntryState::Indeterminate;
        bool standard = false;
        std::size_t dim = 0;
        std::vector<SparseVector> boundaries;  ///< basis of B_r in E_2 coordinates
        std::vector<SparseVector> reps;        ///< representatives of a basis of E_r
        Echelon classifier;                    ///< rows [b | 0] and [rep_k | e_k]
    };

    SSPage(std::shared_ptr<const E2Algebra> alg, int r) : alg_(std::move(alg)), r_(r) {}

    const Entry& entry(Bideg b) const {
        auto it = entries_.find(b);
        if (it == entries_.end() || it->second.state != EntryState::Known)
            throw InvalidInput("bidegree " + b.to_string() + " is not known on page " + std::to_string(r_));
        return it->second;
    }

    std::shared_ptr<const E2Algebra> alg_;
    int r_;
    std::map<Bideg, Entry> entries_;
};

/// d_r given by the images of the basis classes of each source bidegree.
struct Differential {
    int r = 2;
    std::map<Bideg, std::vector<PageElement>> images;  ///< absent bidegree means zero

    /// Image of a class of bidegree b, in class coordinates at the target.
    PageElement apply(const SSPage& page, Bideg b, const SparseVector& cls) const {
        PageElement out{d_target(b, r), {}};
        auto it = images.find(b);
        if (it == images.end()) return out;
        const PrimeField& F = page.algebra().field();
        for (const auto& [k, c] : cls) {
            if (k >= it->second.size()) continue;
            out.coords = F.axpy(out.coords, c, it->second[k].coords);
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& [b, v] : images)
            for (const auto& e : v)
                if (!e.is_zero()) return false;
        return true;
    }
};

struct ValidationReport {
    bool valid = true;
    std::string failed_check;  ///< "page", "shape", "bidegree", "truncation", "square-zero", "leibniz"
    std::string detail;
    std::size_t pairs_checked = 0;
    std::size_t pairs_skipped = 0;  ///< products that leave the known region
};

namespace detail {

inline ValidationReport fail(std::string check, std::string detail) {
    ValidationReport r;
    r.valid = false;
    r.failed_check = std::move(check);
    r.detail = std::move(detail);
    return r;
}

}  // namespace detail

/// Bidegree (-r, r-1), d o d = 0 and the Leibniz rule on every pair of basis classes within the known region.
inline ValidationReport validate(const SSPage& page, const Differential& d) {
    if (d.r != page.r()) return detail::fail("page", "differential d_" + std::to_string(d.r) + " applied to page " + std::to_string(page.r()));
    const int r = d.r;
    const auto& alg = page.algebra();
    for (const auto& [b, imgs] : d.images) {
        if (!page.known(b)) {
            bool all_zero = std::all_of(imgs.begin(), imgs.end(), [](const auto& e) { return e.is_zero(); });
            if (all_zero) continue;
            return detail::fail("truncation", "images given on non-known bidegree " + b.to_string());
        }
        if (imgs.size() != page.dim(b))
            return detail::fail("shape", "bidegree " + b.to_string() + " has " + std::to_string(page.dim(b)) +
                                             " classes but " + std::to_string(imgs.size()) + " images");
        const Bideg tg = d_target(b, r);
        for (std::size_t k = 0; k < imgs.size(); ++k) {
            const auto& e = imgs[k];
            if (e.is_zero()) continue;
            if (e.bidegree != tg)
                return detail::fail("bidegree", "d_" + std::to_string(r) + "(" + page.class_string(b, {{k, 1}}) + ") at " +
                                                     b.to_string() + " lands in " + e.bidegree.to_string() +
                                                     ", expected " + tg.to_string());
            if (!page.known(tg))
                return detail::fail("truncation", "image of a class at " + b.to_string() + " lies outside the known region");
            if (e.coords.back().first >= page.dim(tg))
                return detail::fail("shape", "image coordinate out of range at " + tg.to_string());
        }
    }

    ValidationReport rep;
    // precomputed images of basis classes
    std::map<Bideg, std::vector<SparseVector>> dimg;
    for (Bideg b : page.bidegrees()) {
        if (!page.known(b)) continue;
        auto& v = dimg[b];
        for (std::size_t k = 0; k < page.dim(b); ++k) v.push_back(d.apply(page, b, {{k, 1}}).coords);
    }
    auto d_of = [&](Bideg b, const SparseVector& cls) { return d.apply(page, b, cls).coords; };

    // square zero
    for (const auto& [b, v] : dimg) {
        const Bideg tg = d_target(b, r);
        if (!page.known(tg)) continue;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k].empty()) continue;
            if (!page.determined(d_target(tg, r))) continue;
            if (!d_of(tg, v[k]).empty())
                return detail::fail("square-zero", "d_" + std::to_string(r) + " o d_" + std::to_string(r) + "(" +
                                                      page.class_string(b, {{k, 1}}) + ") != 0 at " + b.to_string());
        }
    }

    // Leibniz
    const PrimeField& F = alg.field();
    for (const auto& [b1, v1] : dimg) {
        for (const auto& [b2, v2] : dimg) {
            const Bideg b = b1 + b2;
            if (!alg.in_support(b)) continue;
            const Bideg tg = d_target(b, r);
            if (!alg.in_support(tg)) continue;  // every term vanishes
            if (!page.known(b) || !page.known(tg) || !page.determined(d_target(b1, r)) ||
                !page.determined(d_target(b2, r))) {
                rep.pairs_skipped += v1.size() * v2.size();
                continue;
            }
            const Coeff sign = b1.total() % 2 != 0 ? F.neg(1) : 1;
            for (std::size_t k1 = 0; k1 < v1.size(); ++k1) {
                for (std::size_t k2 = 0; k2 < v2.size(); ++k2) {
                    const SparseVector x{{k1, 1}}, y{{k2, 1}};
                    auto xy = page.multiply(b1, x, b2, y);
                    auto left = page.multiply(d_target(b1, r), v1[k1], b2, y);
                    auto right = page.multiply(b1, x, d_target(b2, r), v2[k2]);
                    if (!xy || !left || !right) {
                        ++rep.pairs_skipped;
                        continue;
                    }
                    const SparseVector lhs = d_of(b, *xy);
                    const SparseVector rhs = F.axpy(*left, sign, *right);
                    ++rep.pairs_checked;
                    if (lhs != rhs)
                        return detail::fail("leibniz", "d(x*y) != d(x)*y + (-1)^|x| x*d(y) for x = " +
                                                           page.class_string(b1, x) + " " + b1.to_string() + ", y = " +
                                                           page.class_string(b2, y) + " " + b2.to_string() + ": " +
                                                           page.class_string(tg, lhs) + " vs " + page.class_string(tg, rhs));
                }
            }
        }
    }
    return rep;
}

/// E_{r+1} = H(E_r, d_r). The differential must be valid.
inline SSPage turn_page(const SSPage& page, const Differential& d) {
    const ValidationReport v = validate(page, d);
    if (!v.valid) throw InvalidInput("invalid differential (" + v.failed_check + "): " + v.detail);
    const int r = d.r;
    const auto& alg = page.algebra();
    const PrimeField& F = alg.field();
    SSPage next(page.algebra_ptr(), r + 1);
    for (const auto& [b, old] : page.entries_) {
        SSPage::Entry e(F);
        const Bideg tg = d_target(b, r), src = {b.s + r, b.t - r + 1};
        const bool ok = old.state == EntryState::Known && page.determined(tg) && page.determined(src);
        if (!ok) {
            next.entries_.emplace(b, std::move(e));
            continue;
        }
        e.state = EntryState::Known;
        // cycles of d_r in class coordinates
        std::vector<SparseVector> outs;
        for (std::size_t k = 0; k < old.dim; ++k) outs.push_back(d.apply(page, b, {{k, 1}}).coords);
        const std::vector<SparseVector> cycles = kernel(F, outs);
        const bool zero_out = std::all_of(outs.begin(), outs.end(), [](const auto& x) { return x.empty(); });
        // boundaries landing here
        Echelon bd(F);
        if (page.known(src))
            for (std::size_t k = 0; k < page.dim(src); ++k) bd.insert(d.apply(page, src, {{k, 1}}).coords);
        if (old.standard && bd.rank() == 0 && zero_out) {
            e.standard = true;
            e.dim = old.dim;
            next.entries_.emplace(b, std::move(e));
            continue;
        }
        e.boundaries = old.boundaries;
        for (const auto& [p, row] : bd.rows()) e.boundaries.push_back(page.lift(b, row));
        Echelon span = bd;
        const auto& basis = zero_out ? [&] {
            static thread_local std::vector<SparseVector> all;
            all.clear();
            for (std::size_t k = 0; k < old.dim; ++k) all.push_back({{k, 1}});
            return std::cref(all);
        }()
                                     : std::cref(cycles);
        for (const auto& z : basis.get())
            if (span.insert(z) != Echelon::npos) e.reps.push_back(page.lift(b, z));
        e.dim = e.reps.size();
        const std::size_t w = alg.dim(b);
        for (const auto& x : e.boundaries) e.classifier.insert(x);
        for (std::size_t k = 0; k < e.reps.size(); ++k) {
            SparseVector row = e.reps[k];
            row.emplace_back(w + k, 1);
            e.classifier.insert(row);
        }
        next.entries_.emplace(b, std::move(e));
    }
    return next;
}

/// Image of a named generator, as used by extend_derivation.
struct GeneratorImage {
    PageElement source;  ///< E_2 vector of the generator
    PageElement image;   ///< E_2 vector of its image; must be a cycle through the current page
};

struct ExtendResult {
    Differential d;
    ValidationReport report;
    std::size_t unspanned_classes = 0;  ///< classes neither decomposable nor generators, given image zero
};

/**
 * Extends generator images to a derivation of the page. Generators of E_2
 * that are not listed map to zero. Each class is solved for as a
 * combination of products g*y with y of lower degree, whose images follow
 * from the Leibniz rule.
 */
inline ExtendResult extend_derivation(const SSPage& page, const std::vector<GeneratorImage>& specs) {
    const int r = page.r();
    const auto& alg = page.algebra();
    const PrimeField& F = alg.field();
    struct Gen {
        Bideg b;
        SparseVector cls;
        SparseVector value;  // class coordinates at d_target(b)
        bool specified;
    };
    std::vector<Gen> gens;
    for (const auto& sp : specs) {
        auto cls = page.known(sp.source.bidegree) ? page.classify(sp.source.bidegree, sp.source.coords) : std::nullopt;
        if (!cls) throw InvalidInput("generator at " + sp.source.bidegree.to_string() + " is not a class on page " + std::to_string(r));
        SparseVector value;
        if (!sp.image.is_zero()) {
            const Bideg tg = d_target(sp.source.bidegree, r);
            if (sp.image.bidegree != tg)
                throw InvalidInput("image of " + alg.element_string(sp.source.bidegree, sp.source.coords) + " has bidegree " +
                                   sp.image.bidegree.to_string() + ", expected " + tg.to_string());
            if (!page.known(tg)) throw InvalidInput("image bidegree " + tg.to_string() + " is outside the known region");
            auto ic = page.classify(tg, sp.image.coords);
            if (!ic) throw InvalidInput("image at " + tg.to_string() + " is not a cycle on page " + std::to_string(r));
            value = *ic;
        }
        gens.push_back({sp.source.bidegree, *cls, value, true});
    }
    for (const auto& g : alg.generators()) {
        const Bideg b = g.element.bidegree;
        if (!page.known(b)) continue;
        auto cls = page.classify(b, g.element.coords);
        if (!cls || cls->empty()) continue;
        bool listed = false;
        for (const auto& x : gens)
            if (x.b == b && x.cls == *cls) listed = true;
        if (!listed) gens.push_back({b, *cls, {}, false});
    }

    ExtendResult res;
    res.d.r = r;
    std::vector<Bideg> order;
    for (Bideg b : page.bidegrees())
        if (page.known(b) && page.dim(b) > 0) order.push_back(b);
    std::stable_sort(order.begin(), order.end(), [](Bideg a, Bideg b) { return a.t - a.s < b.t - b.s; });

    std::map<Bideg, std::vector<SparseVector>> values;  // d of each basis class, class coordinates at the target
    for (Bideg b : order) {
        if (b == Bideg{0, 0}) continue;  // d(1) = 0
        const Bideg tg = d_target(b, r);
        const bool target_zero = !alg.in_support(tg);
        if (!target_zero && !page.known(tg)) continue;
        const std::size_t dimb = page.dim(b);
        struct Row {
            SparseVector cls;
            SparseVector value;
        };
        std::vector<Row> rows;
        for (const auto& g : gens) {
            if (g.b == b) continue;
            const Bideg by = b - g.b;
            if (!page.known(by) || page.dim(by) == 0) continue;
            auto vit = values.find(by);
            const bool have_dy = vit != values.end();
            const Coeff sign = g.b.total() % 2 != 0 ? F.neg(1) : 1;
            for (std::size_t k = 0; k < page.dim(by); ++k) {
                const SparseVector y{{k, 1}};
                auto prod = page.multiply(g.b, g.cls, by, y);
                if (!prod || prod->empty()) continue;
                SparseVector value;
                if (!target_zero) {
                    const SparseVector dy = have_dy ? vit->second[k] : SparseVector{};
                    if (!have_dy && alg.in_support(d_target(by, r)) && !page.known(d_target(by, r))) continue;
                    auto a = page.multiply(d_target(g.b, r), g.value, by, y);
                    auto c = page.multiply(g.b, g.cls, d_target(by, r), dy);
                    if (!a || !c) continue;
                    value = F.axpy(*a, sign, *c);
                }
                rows.push_back({*prod, value});
            }
        }
        const std::size_t nprod = rows.size();
        for (const auto& g : gens)
            if (g.b == b) rows.push_back({g.cls, target_zero ? SparseVector{} : g.value});
        // echelon of [cls | tag]
        Echelon ech(F);
        std::vector<bool> independent(rows.size(), false);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            SparseVector aug = rows[i].cls;
            aug.emplace_back(dimb + i, 1);
            SparseVector red = ech.reduce(aug);
            const bool indep = !red.empty() && red.front().first < dimb;
            if (!indep && i >= nprod) {
                // a listed generator that is decomposable on this page: its image is forced
                SparseVector implied;
                for (const auto& [col, c] : red) implied = F.axpy(implied, c, rows[col - dimb].value);
                // red = aug - combination; aug has tag e_i, so implied includes value_i once
                if (!implied.empty()) {
                    const Gen* gp = nullptr;
                    for (const auto& g : gens)
                        if (g.b == b && g.cls == rows[i].cls) gp = &g;
                    if (gp && gp->specified)
                        throw InvalidInput("image of decomposable generator at " + b.to_string() +
                                           " conflicts with the Leibniz rule");
                }
            }
            if (indep) {
                ech.insert(aug);
                independent[i] = true;
            }
        }
        std::vector<SparseVector> vals(dimb);
        for (std::size_t k = 0; k < dimb; ++k) {
            SparseVector aug{{k, 1}};
            SparseVector red = ech.reduce(aug);
            if (!red.empty() && red.front().first < dimb) {
                ++res.unspanned_classes;
                continue;
            }
            // e_k - sum c_i row_i reduces to the tags -c_i
            SparseVector v;
            for (const auto& [col, c] : red) v = F.axpy(v, F.neg(c), rows[col - dimb].value);
            vals[k] = v;
        }
        values[b] = vals;
        bool nonzero = false;
        for (const auto& v : vals)
            if (!v.empty()) nonzero = true;
        if (nonzero) {
            auto& out = res.d.images[b];
            for (auto& v : vals) out.push_back({tg, std::move(v)});
        }
    }
    res.report = validate(page, res.d);
    return res;
}

/// The pages E_2, ..., E_{n+1}; the last one is E_infinity since d_r = 0 for r > n.
struct SpectralSequence {
    std::vector<SSPage> pages;
    std::vector<Differential> differentials;  ///< d_2, ..., d_n

    const SSPage& page(int r) const { return pages.at(static_cast<std::size_t>(r - 2)); }
    const SSPage& e_infinity() const { return pages.back(); }
};

/// Runs the sequence with the given differentials (missing pages get d_r = 0).
inline SpectralSequence run_spectral_sequence(std::shared_ptr<const E2Algebra> alg, const std::map<int, Differential>& ds) {
    SpectralSequence ss;
    ss.pages.push_back(SSPage::e2(alg));
    const int n = alg->dimension();
    for (const auto& [r, d] : ds)
        if (r < 2 || r > n) {
            if (!d.is_zero()) throw InvalidInput("d_" + std::to_string(r) + " must vanish on this manifold");
        }
    for (int r = 2; r <= n; ++r) {
        Differential d;
        d.r = r;
        auto it = ds.find(r);
        if (it != ds.end()) d = it->second;
        ss.pages.push_back(turn_page(ss.pages.back(), d));
        ss.differentials.push_back(d);
    }
    return ss;
}

/// Number of pages r in [2, n] on which d_r can be nonzero on column 0, i.e. H^r != 0.
inline int survival_steps(int n, const std::vector<int>& nonzero_degrees, bool simply_connected = true) {
    if (n < 2) throw InvalidInput("dimension must be at least 2");
    int m = 0;
    std::vector<int> seen;
    for (int d : nonzero_degrees) {
        if (d < 0 || d > n) throw InvalidInput("cohomology degree " + std::to_string(d) + " outside [0, n]");
        if (simply_connected && (d == 1 || d == n - 1))
            throw InvalidInput("degree " + std::to_string(d) + " is excluded for a simply connected manifold");
        if (d == 0 || std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
        seen.push_back(d);
        if (d >= 2) ++m;
    }
    return m;
}

inline unsigned long long checked_power(unsigned long long p, int m) {
    unsigned long long e = 1;
    for (int i = 0; i < m; ++i) {
        if (e > std::numeric_limits<unsigned long long>::max() / p) throw InvalidInput("exponent overflows 64 bits");
        e *= p;
    }
    return e;
}

/// p^m with m = survival_steps; at most p^{n-2} for simply connected M.
inline unsigned long long survival_exponent(unsigned p, int n, const std::vector<int>& nonzero_degrees) {
    return checked_power(p, survival_steps(n, nonzero_degrees));
}

/// Nonzero cohomology degrees of the E_2 algebra.
inline std::vector<int> nonzero_cohomology_degrees(const E2Algebra& alg) {
    std::vector<int> out;
    for (int d = 0; d <= alg.dimension(); ++d)
        if (alg.cohomology().dim(d) != 0) out.push_back(d);
    return out;
}

enum class CertificateStatus { Certified, Indeterminate };

struct PageWitness {
    int r = 2;
    unsigned long long exponent_in = 1;
    bool image_nonzero = false;        ///< d_r of the incoming power
    std::string image;                 ///< d_r of the incoming power, as text
    unsigned long long exponent_out = 1;
};

struct SurvivalCertificate {
    CertificateStatus status = CertificateStatus::Certified;
    std::string element;
    int degree = 0;
    unsigned long long exponent = 1;
    unsigned long long bound = 1;  ///< survival_exponent for this manifold
    std::vector<PageWitness> pages;
    bool bound_power_is_permanent = false;  ///< x^bound checked to be a d_r-cycle on every page
    int required_truncation = 0;           ///< fibre degree needed to finish, when Indeterminate
    std::string note;
};

/**
 * Greedy page-by-page certificate that a power of a central x in E_2^{0,*}
 * is a permanent cycle: whenever d_r(y) != 0, y is replaced by y^p, which
 * d_r kills because d_r(y^p) = p y^{p-1} d_r(y).
 */
inline SurvivalCertificate certify_central_power(const SpectralSequence& ss, int degree, const SparseVector& x) {
    const auto& alg = ss.pages.front().algebra();
    const auto& L = alg.loop_homology();
    const unsigned p = alg.prime();
    const int n = alg.dimension();
    const int T = alg.truncation();
    if (degree < 1 || degree > T) throw InvalidInput("element degree outside the truncation");
    if (x.empty()) throw InvalidInput("the zero element needs no certificate");
    SurvivalCertificate cert;
    cert.degree = degree;
    cert.element = L.element_string(degree, x);
    cert.bound = survival_exponent(p, n, nonzero_cohomology_degrees(alg));
    const Tri central = is_effective_central(L, degree, x);
    if (central == Tri::False)
        throw InvalidInput("element " + cert.element + " is not effective-central; the Leibniz argument does not apply");
    if (central == Tri::Unknown) {
        cert.status = CertificateStatus::Indeterminate;
        cert.required_truncation = degree + L.presentation().max_generator_degree();
        cert.note = "centrality not decidable within the truncation";
        return cert;
    }
    auto required = [&] {
        return static_cast<int>(std::min<unsigned long long>(1ULL << 30, static_cast<unsigned long long>(degree) * cert.bound)) + n - 1;
    };
    unsigned long long e = 1;
    for (int r = 2; r <= n; ++r) {
        const SSPage& page = ss.page(r);
        PageWitness w;
        w.r = r;
        w.exponent_in = e;
        const int te = static_cast<int>(static_cast<unsigned long long>(degree) * e);
        const Bideg b{0, te};
        const Bideg tg = d_target(b, r);
        auto classify_power = [&](unsigned long long ex) -> std::optional<SparseVector> {
            auto y = L.power(degree, x, ex);
            if (!y) return std::nullopt;
            return page.classify({0, static_cast<int>(degree * ex)}, *y);
        };
        if (!alg.in_support(tg) || alg.cohomology().dim(r) == 0) {
            w.exponent_out = e;
            cert.pages.push_back(w);
            continue;
        }
        if (!page.known(b) || !page.known(tg)) {
            cert.status = CertificateStatus::Indeterminate;
            cert.required_truncation = required();
            cert.note = "page " + std::to_string(r) + " is not known at " + b.to_string();
            return cert;
        }
        auto cls = classify_power(e);
        if (!cls) throw InvalidInput("power of x is not a cycle on page " + std::to_string(r));
        const PageElement img = ss.differentials[static_cast<std::size_t>(r - 2)].apply(page, b, *cls);
        w.image_nonzero = !img.is_zero();
        w.image = page.class_string(tg, img.coords);
        if (w.image_nonzero) {
            e = e * p;
            const int te2 = static_cast<int>(static_cast<unsigned long long>(degree) * e);
            if (!page.known({0, te2}) || !page.known(d_target({0, te2}, r))) {
                cert.status = CertificateStatus::Indeterminate;
                cert.required_truncation = required();
                cert.note = "power x^" + std::to_string(e) + " leaves the truncation on page " + std::to_string(r);
                return cert;
            }
            auto cls2 = classify_power(e);
            if (!cls2) throw InvalidInput("x^" + std::to_string(e) + " is not a cycle on page " + std::to_string(r));
            const PageElement img2 = ss.differentials[static_cast<std::size_t>(r - 2)].apply(page, {0, te2}, *cls2);
            if (!img2.is_zero())
                throw InvalidInput("d_" + std::to_string(r) + "(x^" + std::to_string(e) + ") != 0 for a central x");
        }
        w.exponent_out = e;
        cert.pages.push_back(w);
    }
    cert.exponent = e;
    // the worst case power as well, when it fits
    if (static_cast<unsigned long long>(degree) * cert.bound <= static_cast<unsigned long long>(T)) {
        const int tb = static_cast<int>(degree * cert.bound);
        bool permanent = true;
        for (int r = 2; r <= n && permanent; ++r) {
            const SSPage& page = ss.page(r);
            const Bideg b{0, tb};
            if (!page.known(b)) {
                permanent = false;
                break;
            }
            auto cls = page.classify(b, *L.power(degree, x, cert.bound));
            if (!cls) {
                permanent = false;
                break;
            }
            if (alg.in_support(d_target(b, r)) &&
                !ss.differentials[static_cast<std::size_t>(r - 2)].apply(page, b, *cls).is_zero())
                permanent = false;
        }
        cert.bound_power_is_permanent = permanent;
    }
    return cert;
}

/// Associated graded algebra model: basis elements with a filtration column and a product table.
struct FilteredAlgebraModel {
    unsigned p = 2;
    std::vector<int> column;                                    ///< filtration index (<= 0) of each basis element
    std::vector<std::string> labels;
    std::map<std::pair<std::size_t, std::size_t>, SparseVector> products;  ///< nonzero products only
};

struct FiltrationCheck {
    bool additivity_ok = true;
    bool support_ok = true;
    bool nilpotent_ok = true;
    int max_nonzero_length = 0;  ///< longest nonzero product of elements of F^{-1}
    std::string witness;         ///< a nonzero product of that length
    std::string violation;
    bool ok() const { return additivity_ok && support_ok && nilpotent_ok; }
};

/**
 * F^{-i} F^{-j} lies in F^{-i-j} and F^{-n-1} = 0, so every product of n+1
 * elements of F^{-1} vanishes. Checks column additivity and support on the
 * table, then computes the iterated products (F^{-1})^k until they vanish.
 */
inline FiltrationCheck filtration_nilpotency_check(const FilteredAlgebraModel& m, int n) {
    FiltrationCheck res;
    const PrimeField F(m.p);
    for (std::size_t i = 0; i < m.column.size(); ++i)
        if (m.column[i] > 0 || m.column[i] < -n) {
            res.support_ok = false;
            res.violation = "basis element " + std::to_string(i) + " in column " + std::to_string(m.column[i]);
            return res;
        }
    for (const auto& [ij, v] : m.products) {
        const int c = m.column[ij.first] + m.column[ij.second];
        for (const auto& [k, coef] : v)
            if (m.column.at(k) != c) {
                res.additivity_ok = false;
                res.violation = "product of elements " + std::to_string(ij.first) + " and " + std::to_string(ij.second) +
                                " has a component in column " + std::to_string(m.column[k]) + ", expected " +
                                std::to_string(c);
                return res;
            }
    }
    std::vector<std::size_t> f1;
    for (std::size_t i = 0; i < m.column.size(); ++i)
        if (m.column[i] <= -1) f1.push_back(i);
    auto label = [&](std::size_t i) { return i < m.labels.size() ? m.labels[i] : "e" + std::to_string(i); };
    // W_k as a list of (vector, description) spanning it
    std::vector<std::pair<SparseVector, std::string>> W;
    for (std::size_t i : f1) W.push_back({{{i, 1}}, label(i)});
    int k = W.empty() ? 0 : 1;
    if (k) res.witness = W.front().second;
    while (!W.empty() && k <= n + 1) {
        std::vector<std::pair<SparseVector, std::string>> next;
        Echelon span(F);
        for (const auto& [w, desc] : W)
            for (std::size_t x : f1) {
                SparseVector prod;
                for (const auto& [i, c] : w) {
                    auto it = m.products.find({i, x});
                    if (it != m.products.end()) prod = F.axpy(prod, c, it->second);
                }
                if (prod.empty()) continue;
                if (span.insert(prod) != Echelon::npos) next.push_back({prod, desc + " * " + label(x)});
            }
        if (next.empty()) break;
        ++k;
        res.witness = next.front().second;
        W = std::move(next);
    }
    res.max_nonzero_length = k;
    if (k > n) {
        res.nilpotent_ok = false;
        res.violation = "a product of " + std::to_string(k) + " elements of F^{-1} is nonzero";
    }
    return res;
}

/// The page as a filtered algebra model, restricted to fibre degree <= max_t (products leaving the known region are omitted).
inline FilteredAlgebraModel filtered_model(const SSPage& page, int max_t) {
    FilteredAlgebraModel m;
    m.p = page.algebra().prime();
    std::map<Bideg, std::size_t> offset;
    for (Bideg b : page.bidegrees()) {
        if (!page.known(b) || b.t > max_t || page.dim(b) == 0) continue;
        offset[b] = m.column.size();
        for (std::size_t k = 0; k < page.dim(b); ++k) {
            m.column.push_back(b.s);
            m.labels.push_back(page.class_string(b, {{k, 1}}));
        }
    }
    for (const auto& [b1, o1] : offset)
        for (const auto& [b2, o2] : offset) {
            const Bideg b = b1 + b2;
            auto it = offset.find(b);
            if (it == offset.end()) continue;
            for (std::size_t i = 0; i < page.dim(b1); ++i)
                for (std::size_t j = 0; j < page.dim(b2); ++j) {
                    auto prod = page.multiply(b1, {{i, 1}}, b2, {{j, 1}});
                    if (!prod || prod->empty()) continue;
                    m.products[{o1 + i, o2 + j}] = shifted(*prod, it->second);
                }
        }
    return m;
}

/// Sum of (-1)^{s+t} dim E_r^{s,t} over total degree <= m; nullopt if a needed bidegree is not known.
inline std::optional<long long> euler_characteristic_through(const SSPage& page, int m) {
    const int n = page.algebra().dimension();
    long long chi = 0;
    for (int s = 0; s >= -n; --s)
        for (int t = 0; s + t <= m; ++t) {
            const Bideg b{s, t};
            if (!page.known(b)) return std::nullopt;
            const long long d = static_cast<long long>(page.dim(b));
            chi += (b.total() % 2 == 0) ? d : -d;
        }
    return chi;
}

/// Rank of d_r from total degree m+1 to total degree m.
inline std::optional<std::size_t> differential_rank_into(const SSPage& page, const Differential& d, int m) {
    const int n = page.algebra().dimension();
    std::size_t rank = 0;
    for (int s = 0; s >= -n; --s) {
        const Bideg b{s, m + 1 - s};
        if (b.t < 0) continue;
        if (!page.known(b)) return std::nullopt;
        std::vector<SparseVector> imgs;
        for (std::size_t k = 0; k < page.dim(b); ++k) imgs.push_back(d.apply(page, b, {{k, 1}}).coords);
        rank += rank_of(page.algebra().field(), imgs);
    }
    return rank;
}

/// Dimensions of E_r^{0,t}: the permanent cycles in column 0 on the last page are the image of the edge map.
inline std::vector<std::size_t> column_zero_dims(const SSPage& page) {
    std::vector<std::size_t> out;
    for (int t = 0; t <= page.algebra().truncation(); ++t) out.push_back(page.known({0, t}) ? page.dim({0, t}) : 0);
    return out;
}

}  // namespace fpell
