#pragma once

/**
 * @file catalog.hpp
 * @brief Space records, the built-in catalog and the closed-geodesics verdict pipeline.
 *
 * A verdict is assembled from rules evaluated in a fixed order:
 *   simply-connected   the criteria below need pi_1(M) = 0
 *   rational           H^*(M;Q) not one-generated
 *   polynomial-growth  H_*(Omega M;F_p) of polynomial growth and H^*(M;F_p) not one-generated
 *   centre             effective centre of H_*(Omega M;F_p) contains a polynomial algebra on >= 2 generators
 * Facts consumed by a rule are recomputed here from the record's presentations.
 * Results quoted from the literature are marked as axioms in the chain.
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "fpell/homalg.hpp"
#include "fpell/presentation.hpp"
#include "fpell/quotient.hpp"
#include "fpell/series.hpp"
#include "fpell/structure.hpp"

namespace fpell {

/// Mod-p data of a space.
struct PrimeData {
    std::optional<AlgebraPresentation> cohomology;     ///< H^*(M;F_p)
    std::optional<AlgebraPresentation> loop_homology;  ///< H_*(Omega M;F_p)
    bool elliptic_homogeneous = false;                 ///< F_p-elliptic as a homogeneous space
};

struct SpaceRecord {
    std::string name;
    std::vector<std::string> aliases;
    std::string family;  ///< "sphere", "complex-projective", "sphere-bundle", "stiefel", "grassmannian", "homogeneous"
    int dimension = 0;   ///< 0 when unknown (stubs)
    bool simply_connected = true;
    bool closed_manifold = true;
    std::optional<AlgebraPresentation> rational_cohomology;  ///< p = 0, factor kinds only
    std::map<unsigned, PrimeData> mod_p;
    std::vector<std::string> notes;

    bool is_stub() const {
        for (const auto& [p, d] : mod_p)
            if (d.cohomology || d.loop_homology) return false;
        return !rational_cohomology;
    }

    void validate() const {
        if (name.empty()) throw InvalidInput("space record without a name");
        auto check_cohomology = [&](const AlgebraPresentation& a, const std::string& where) {
            a.validate();
            if (a.infinite_tensor) throw InvalidInput(name + ": " + where + " cohomology is an infinite tensor product");
            const PoincareSeries s = poincare_series(a);
            if (!s.is_finite()) throw InvalidInput(name + ": " + where + " cohomology is infinite dimensional");
            if (dimension == 0) return;
            if (s.top_degree() > dimension)
                throw InvalidInput(name + ": " + where + " cohomology is nonzero in degree " + std::to_string(s.top_degree()) +
                                   " > dimension " + std::to_string(dimension));
            const auto c = coefficients(s, dimension);
            if (closed_manifold && c[dimension] != 1)
                throw InvalidInput(name + ": " + where + " cohomology of a closed manifold needs a one-dimensional top degree");
            if (simply_connected && dimension >= 2 && (c[1] != 0 || c[dimension - 1] != 0))
                throw InvalidInput(name + ": simply connected but " + where + " cohomology has H^1 or H^{n-1}");
        };
        if (rational_cohomology) {
            if (rational_cohomology->p != 0) throw InvalidInput(name + ": rational cohomology must use p = 0");
            check_cohomology(*rational_cohomology, "rational");
        }
        for (const auto& [p, d] : mod_p) {
            if (p == 0 || !is_prime(p)) throw InvalidInput(name + ": mod-p data for non-prime " + std::to_string(p));
            const std::string where = "mod-" + std::to_string(p);
            if (d.cohomology) {
                if (d.cohomology->p != p) throw InvalidInput(name + ": " + where + " cohomology over the wrong prime");
                check_cohomology(*d.cohomology, where);
            }
            if (d.loop_homology) {
                if (d.loop_homology->p != p) throw InvalidInput(name + ": " + where + " loop homology over the wrong prime");
                d.loop_homology->validate();
            }
        }
    }
};

enum class Conclusion { InfinitelyManyGeodesics, Unknown };
enum class UnknownKind { None, Mathematical, DataMissing };

inline const char* to_string(Conclusion c) {
    return c == Conclusion::InfinitelyManyGeodesics ? "InfinitelyManyGeodesics" : "Unknown";
}

inline const char* to_string(UnknownKind k) {
    switch (k) {
        case UnknownKind::None: return "none";
        case UnknownKind::Mathematical: return "mathematical";
        default: return "data-missing";
    }
}

/// One link of a justification chain.
struct Step {
    std::string claim;
    std::string citation;
    bool axiom = false;
    std::vector<std::string> facts;  ///< computed facts the step consumed
    friend bool operator==(const Step&, const Step&) = default;
};

struct RuleOutcome {
    std::string rule;
    std::optional<unsigned> prime;
    bool fired = false;
    std::string reason;  ///< why it did not fire
    std::vector<Step> steps;
    friend bool operator==(const RuleOutcome&, const RuleOutcome&) = default;
};

struct Verdict {
    std::string space;
    Conclusion conclusion = Conclusion::Unknown;
    UnknownKind unknown_kind = UnknownKind::Mathematical;
    std::vector<RuleOutcome> rules;
    std::vector<std::string> notes;

    const RuleOutcome* primary() const {
        for (const auto& r : rules)
            if (r.fired) return &r;
        return nullptr;
    }
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

namespace cite {
inline const char* gromoll_meyer = "Gromoll-Meyer theorem";
inline const char* sullivan_vigue = "Sullivan-Vigue-Poirrier theorem";
inline const char* mccleary = "McCleary theorem on loop spaces";
inline const char* centre_edge = "Felix-Thomas-Vigue-Poirrier theorem: the edge homomorphism lands in the centre";
inline const char* homogeneous = "Felix-Halperin-Thomas: G/K is F_p-elliptic for G simply connected compact, K connected closed";
inline const char* elliptic_growth = "elliptic spaces have loop homology of polynomial growth";
inline const char* growth_criterion = "polynomial growth criterion for string homology";
inline const char* centre_criterion = "string homology contains P[x_1..x_k] iff the centre of H_*(Omega M) does";
inline const char* computed = "computed";
}  // namespace cite

namespace detail {

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

inline int max_factor_degree(const AlgebraPresentation& a) {
    int m = 1;
    for (const auto& f : a.factors) m = std::max(m, f.degree);
    return m;
}

/// Generator degrees of Q(A), listed with multiplicity.
inline std::vector<int> indecomposable_degrees(const Indecomposables& q) {
    std::vector<int> out;
    for (std::size_t d = 0; d < q.dims.size(); ++d)
        for (std::size_t k = 0; k < q.dims[d]; ++k) out.push_back(static_cast<int>(d));
    return out;
}

inline std::string degrees_string(const std::vector<int>& v) {
    std::vector<std::string> s;
    for (int d : v) s.push_back(std::to_string(d));
    return "{" + join(s, ", ") + "}";
}

struct OneGenFact {
    Tri one_generated = Tri::Unknown;
    std::string fact;
};

/// One-generation of a mod-p cohomology ring from the quotient oracle.
inline OneGenFact mod_p_one_generated(const AlgebraPresentation& a, int n) {
    AlgebraPresentation b = a;
    b.hopf = false;
    const int cutoff = std::max(n, max_factor_degree(a));
    QuotientAlgebra A(to_finite(b, cutoff));
    const Indecomposables q = indecomposables(A, cutoff);
    OneGenFact f;
    f.one_generated = one_generated(q);
    f.fact = "indecomposables of H^*(M;F_" + std::to_string(a.p) + ") in degrees " +
             degrees_string(indecomposable_degrees(q));
    return f;
}

struct CentreFact {
    std::size_t rank = 0;  ///< number of verified polynomial generators
    std::vector<std::string> facts;
};

/// Effective-central polynomial generators of loop homology, verified by the quotient oracle.
inline CentreFact centre_polynomial_rank(const AlgebraPresentation& loop) {
    CentreFact out;
    AlgebraPresentation l = loop;
    l.hopf = false;
    const auto gens = effective_center_generators(l);
    if (gens.empty()) {
        out.facts.push_back("no polynomial factors in H_*(Omega M)");
        return out;
    }
    int maxg = 1, maxe = 1;
    for (const auto& g : gens) maxe = std::max(maxe, g.degree);
    maxg = max_factor_degree(l);
    const int cutoff = std::min(2 * maxe + maxg, 96);
    QuotientAlgebra A(to_finite(l, cutoff));
    std::vector<std::pair<int, SparseVector>> elems;
    std::vector<std::string> names;
    for (const auto& g : gens) {
        const int dg = l.factors[g.factor].degree;
        auto v = A.power(dg, A.generator_class(g.factor), static_cast<unsigned long long>(g.power));
        if (!v || is_effective_central(A, g.degree, *v) != Tri::True) continue;
        elems.emplace_back(g.degree, *v);
        const std::string nm = l.factor_name(g.factor);
        names.push_back((g.power == 1 ? nm : nm + "^" + std::to_string(g.power)) + " (degree " +
                        std::to_string(g.degree) + ")");
    }
    const IndependenceResult ind = polynomial_independence(A, elems);
    if (!ind.independent) {
        out.facts.push_back("effective-central elements " + join(names, ", ") + " satisfy a relation in degree " +
                            std::to_string(ind.checked_through));
        return out;
    }
    out.rank = elems.size();
    out.facts.push_back("effective centre of H_*(Omega M;F_" + std::to_string(loop.p) + ") contains P[" + join(names, ", ") +
                        "]");
    out.facts.push_back("central and algebraically independent through degree " + std::to_string(ind.checked_through));
    return out;
}

inline Step gromoll_meyer_step(const std::string& field) {
    return {"H_*(LM;" + field + ") doubly infinite, so every metric has infinitely many geometrically distinct closed geodesics",
            cite::gromoll_meyer, true, {}};
}

}  // namespace detail

/// Applies the rules in order; the conclusion is positive when some rule fires.
inline Verdict verdict(const SpaceRecord& s) {
    s.validate();
    Verdict v;
    v.space = s.name;

    if (!s.simply_connected || !s.closed_manifold) {
        RuleOutcome r1{"simply-connected", std::nullopt, false, "", {}};
        r1.reason = !s.closed_manifold ? "M is not recorded as a closed manifold"
                                       : "pi_1(M) != 0: pass to the universal cover when pi_1 is finite; "
                                         "infinite pi_1 with finitely many conjugacy classes is open";
        v.rules.push_back(r1);
        v.unknown_kind = UnknownKind::Mathematical;
        v.notes.push_back("the criteria apply to simply connected closed manifolds");
        return v;
    }
    const Step hypothesis{"M is a simply connected closed manifold" +
                              (s.dimension ? " of dimension " + std::to_string(s.dimension) : std::string()),
                          "record", false, {}};

    bool any_data = false;
    // rational route
    {
        RuleOutcome r{"rational", 0u, false, "", {}};
        if (!s.rational_cohomology) {
            r.reason = "no rational cohomology data";
        } else {
            const Indecomposables q =
                indecomposables(*s.rational_cohomology, detail::max_factor_degree(*s.rational_cohomology));
            const Tri og = one_generated(q);
            const std::string fact = "indecomposables of H^*(M;Q) in degrees " +
                                     detail::degrees_string(detail::indecomposable_degrees(q));
            if (og == Tri::False) {
                any_data = true;
                r.fired = true;
                r.steps.push_back(hypothesis);
                r.steps.push_back({"H^*(M;Q) is not generated by one element", cite::computed, false, {fact}});
                r.steps.push_back({"H_*(LM;Q) is doubly infinite", cite::sullivan_vigue, true, {}});
                r.steps.push_back(detail::gromoll_meyer_step("Q"));
            } else {
                r.reason = "H^*(M;Q) is generated by one element (" + fact + ")";
            }
        }
        v.rules.push_back(r);
    }

    for (const auto& [p, d] : s.mod_p) {
        const std::string fp = "F_" + std::to_string(p);
        // polynomial growth route
        RuleOutcome r{"polynomial-growth", p, false, "", {}};
        std::vector<Step> growth;
        if (d.loop_homology && !d.loop_homology->infinite_tensor) {
            const PoincareSeries ls = poincare_series(*d.loop_homology);
            const GrowthClass g = growth_class(ls);
            std::vector<std::string> facts = {"H_*(Omega M;" + fp + ") has Poincare series " + ls.to_string(),
                                              "growth exponent K0 = " + std::to_string(g.k0)};
            if (g.k0 >= 1) {
                const ExponentWitness w = partial_sums_exponent_witness(ls, 64);
                facts.push_back("c n^K0 <= sum_{i<=n} dim <= C n^K0 for 2 <= n <= 64 with c = " + w.c_lower.str() +
                                ", C = " + w.c_upper.str());
            }
            growth.push_back({"H_*(Omega M;" + fp + ") has polynomial growth", cite::computed, false, facts});
        } else if (d.elliptic_homogeneous) {
            growth.push_back({"M is " + fp + "-elliptic", cite::homogeneous, true, {}});
            growth.push_back({"H_*(Omega M;" + fp + ") has polynomial growth", cite::elliptic_growth, true, {}});
        }
        if (growth.empty()) {
            r.reason = "no loop homology data and no ellipticity flag at p = " + std::to_string(p);
        } else if (!d.cohomology) {
            r.reason = "no mod-" + std::to_string(p) + " cohomology data";
        } else {
            any_data = true;
            const auto og = detail::mod_p_one_generated(*d.cohomology, s.dimension);
            if (og.one_generated == Tri::False) {
                r.fired = true;
                r.steps.push_back(hypothesis);
                r.steps.insert(r.steps.end(), growth.begin(), growth.end());
                r.steps.push_back({"H^*(M;" + fp + ") is not generated by one element", cite::computed, false, {og.fact}});
                r.steps.push_back({"H_*(Omega M;" + fp + ") is doubly infinite", cite::mccleary, true, {}});
                r.steps.push_back({"string homology HL_*(M;" + fp + ") contains a polynomial algebra on K0 >= 2 generators",
                                   cite::growth_criterion, false, {}});
                r.steps.push_back(detail::gromoll_meyer_step(fp));
            } else {
                r.reason = "H^*(M;" + fp + ") is generated by one element (" + og.fact + ")";
            }
        }
        v.rules.push_back(r);

        // centre route
        RuleOutcome c{"centre", p, false, "", {}};
        if (!d.loop_homology) {
            c.reason = "no loop homology data at p = " + std::to_string(p);
        } else if (d.loop_homology->infinite_tensor) {
            c.reason = "loop homology given as an infinite tensor product";
        } else {
            any_data = true;
            const auto cf = detail::centre_polynomial_rank(*d.loop_homology);
            if (cf.rank >= 2) {
                c.fired = true;
                c.steps.push_back(hypothesis);
                c.steps.push_back({"the effective centre of H_*(Omega M;" + fp + ") contains a polynomial algebra on " +
                                       std::to_string(cf.rank) + " generators",
                                   cite::computed, false, cf.facts});
                c.steps.push_back({"the image of HL_*(M) -> H_*(Omega M) is central", cite::centre_edge, true, {}});
                c.steps.push_back({"HL_*(M;" + fp + ") contains a polynomial algebra on " + std::to_string(cf.rank) + " generators",
                                   cite::centre_criterion, false, {}});
                c.steps.push_back({"H_*(LM;" + fp + ") = HL_{*-n}(M;" + fp + ") is doubly infinite", cite::computed, false,
                                   {"a polynomial algebra on >= 2 generators has unbounded graded dimensions"}});
                c.steps.push_back(detail::gromoll_meyer_step(fp));
            } else {
                c.reason = "effective centre has polynomial rank " + std::to_string(cf.rank) + " < 2 (" +
                           detail::join(cf.facts, "; ") + ")";
            }
        }
        v.rules.push_back(c);
    }

    if (v.primary()) {
        v.conclusion = Conclusion::InfinitelyManyGeodesics;
        v.unknown_kind = UnknownKind::None;
    } else {
        v.conclusion = Conclusion::Unknown;
        v.unknown_kind = any_data ? UnknownKind::Mathematical : UnknownKind::DataMissing;
        if (!any_data) v.notes.push_back("no rule had the data it needs; supply mod-p cohomology and loop homology");
    }
    for (const auto& n : s.notes) v.notes.push_back(n);
    return v;
}

/// Plain-text rendering; deterministic, used for golden files.
inline std::string render(const Verdict& v) {
    std::ostringstream os;
    os << v.space << ": " << to_string(v.conclusion);
    if (v.conclusion == Conclusion::Unknown) os << " (" << to_string(v.unknown_kind) << ")";
    os << "\n";
    for (const auto& r : v.rules) {
        os << "  [" << (r.fired ? "fired" : "skip") << "] " << r.rule;
        if (r.prime) os << (*r.prime == 0 ? " (Q)" : " (p=" + std::to_string(*r.prime) + ")");
        if (!r.fired) {
            os << ": " << r.reason << "\n";
            continue;
        }
        os << "\n";
        for (std::size_t i = 0; i < r.steps.size(); ++i) {
            const Step& st = r.steps[i];
            os << "    " << i + 1 << ". " << st.claim << "  <" << st.citation << ">" << (st.axiom ? " AXIOM" : "") << "\n";
            for (const auto& f : st.facts) os << "       - " << f << "\n";
        }
    }
    for (const auto& n : v.notes) os << "  note: " << n << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// built-in records

/// Primes carried by the parametrized records.
inline std::vector<unsigned> catalog_primes() { return {2, 3, 5, 7, 11, 13}; }

namespace detail {

inline AlgebraPresentation make_alg(unsigned p, std::vector<MonogenicFactor> f, bool graded = true) {
    AlgebraPresentation a;
    a.p = p;
    a.factors = std::move(f);
    a.graded_commutative = graded;
    return a;
}

/// H^*(S^k): exterior on one class; even classes use height-two truncation away from p = 2.
inline MonogenicFactor sphere_class(int k, unsigned p, const std::string& name) {
    if (k % 2 == 0 && p != 2) return MonogenicFactor::truncated(k, 2, name);
    return MonogenicFactor::exterior(k, name);
}

/// H_*(Omega S^k) = T(x_{k-1}), a polynomial algebra on one class (without signs when k-1 is odd and p is odd).
inline AlgebraPresentation loop_sphere(int k, unsigned p, const std::string& name) {
    const bool odd = (k - 1) % 2 != 0;
    AlgebraPresentation a = make_alg(p, {MonogenicFactor::polynomial(k - 1, name)}, !(odd && p != 2));
    a.hopf = true;
    return a;
}

inline std::vector<unsigned> prime_factors(long long e) {
    std::vector<unsigned> out;
    if (e < 0) e = -e;
    for (long long q = 2; q * q <= e; ++q)
        if (e % q == 0) {
            out.push_back(static_cast<unsigned>(q));
            while (e % q == 0) e /= q;
        }
    if (e > 1) out.push_back(static_cast<unsigned>(e));
    return out;
}

}  // namespace detail

inline SpaceRecord make_sphere(int n) {
    if (n < 2) throw InvalidInput("S^n needs n >= 2 for a simply connected sphere");
    SpaceRecord s;
    s.name = "S^" + std::to_string(n);
    s.family = "sphere";
    s.dimension = n;
    s.rational_cohomology = detail::make_alg(0, {detail::sphere_class(n, 0, "x")});
    for (unsigned p : catalog_primes()) {
        PrimeData d;
        d.cohomology = detail::make_alg(p, {detail::sphere_class(n, p, "x")});
        d.loop_homology = detail::loop_sphere(n, p, "y");
        s.mod_p[p] = d;
    }
    return s;
}

inline SpaceRecord make_complex_projective(int n) {
    if (n < 1) throw InvalidInput("CP^n needs n >= 1");
    SpaceRecord s;
    s.name = "CP^" + std::to_string(n);
    s.family = "complex-projective";
    s.dimension = 2 * n;
    s.rational_cohomology = detail::make_alg(0, {MonogenicFactor::truncated(2, n + 1, "x")});
    for (unsigned p : catalog_primes()) {
        PrimeData d;
        d.cohomology = detail::make_alg(p, {MonogenicFactor::truncated(2, n + 1, "x")});
        // Omega CP^n ~ S^1 x Omega S^{2n+1}
        d.loop_homology = detail::make_alg(p, {MonogenicFactor::exterior(1, "u"), MonogenicFactor::polynomial(2 * n, "w")});
        d.loop_homology->hopf = true;
        s.mod_p[p] = d;
    }
    return s;
}

/// Total space of the S^{2n-1}-bundle over S^{2n} with Euler class e (written Q_{2n,e}).
inline SpaceRecord make_sphere_bundle(int n, long long e) {
    if (n < 2) throw InvalidInput("Q_{2n,e} needs n >= 2");
    SpaceRecord s;
    s.name = "Q_{" + std::to_string(2 * n) + "," + std::to_string(e) + "}";
    s.family = "sphere-bundle";
    s.dimension = 4 * n - 1;
    const int a = 2 * n - 1, b = 2 * n;
    if (e == 0)
        s.rational_cohomology = detail::make_alg(0, {MonogenicFactor::exterior(a, "a"), detail::sphere_class(b, 0, "b")});
    else
        s.rational_cohomology = detail::make_alg(0, {MonogenicFactor::exterior(4 * n - 1, "z")});
    std::vector<unsigned> primes = catalog_primes();
    for (unsigned q : detail::prime_factors(e))
        if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    for (unsigned p : primes) {
        PrimeData d;
        if (e % static_cast<long long>(p) == 0) {
            d.cohomology = detail::make_alg(p, {MonogenicFactor::exterior(a, "a"), detail::sphere_class(b, p, "b")});
            // P[u_{2n-2}, v_{2n-1}]: v^2 != 0, so at odd p the algebra is commutative without signs
            d.loop_homology = detail::make_alg(p, {MonogenicFactor::polynomial(2 * n - 2, "u"), MonogenicFactor::polynomial(2 * n - 1, "v")},
                                               p == 2);
        } else {
            d.cohomology = detail::make_alg(p, {MonogenicFactor::exterior(4 * n - 1, "z")});
            d.loop_homology = detail::loop_sphere(4 * n - 1, p, "y");
        }
        d.loop_homology->hopf = true;
        s.mod_p[p] = d;
    }
    if (e != 0) s.notes.push_back("rational homology sphere: the rational route cannot apply");
    return s;
}

/// V_2(R^{2n+1}) = Q_{2n,2}.
inline SpaceRecord make_stiefel(int n) {
    SpaceRecord s = make_sphere_bundle(n, 2);
    s.aliases.push_back(s.name);
    s.name = "V2(R^" + std::to_string(2 * n + 1) + ")";
    s.family = "stiefel";
    s.notes.push_back("S^" + std::to_string(2 * n - 1) + "-bundle over S^" + std::to_string(2 * n) + " with Euler class 2");
    return s;
}

/// Oriented 2-planes in R^{2n+1}.
inline SpaceRecord make_grassmannian(int n) {
    if (n < 1) throw InvalidInput("G2+(R^{2n+1}) needs n >= 1");
    SpaceRecord s;
    s.name = "G2+(R^" + std::to_string(2 * n + 1) + ")";
    s.family = "grassmannian";
    s.dimension = 2 * (2 * n - 1);
    s.rational_cohomology = detail::make_alg(0, {MonogenicFactor::truncated(2, 2 * n, "x")});
    for (unsigned p : catalog_primes()) {
        PrimeData d;
        if (p == 2) {
            d.cohomology = detail::make_alg(2, {MonogenicFactor::truncated(2, n, "x"), MonogenicFactor::exterior(2 * n, "y")});
            d.loop_homology = detail::make_alg(2, {MonogenicFactor::exterior(1, "u"), MonogenicFactor::polynomial(2 * n - 2, "v"),
                                                   MonogenicFactor::polynomial(2 * n - 1, "w")});
            d.loop_homology->hopf = true;
        } else {
            d.cohomology = detail::make_alg(p, {MonogenicFactor::truncated(2, 2 * n, "x")});
        }
        s.mod_p[p] = d;
    }
    if (n == 1) {
        // G2+(R^3) = S^2; the p = 2 factor P[x]/(x^1) is the unit
        s.mod_p[2].cohomology = detail::make_alg(2, {MonogenicFactor::exterior(2, "y")});
        s.mod_p[2].loop_homology = detail::loop_sphere(2, 2, "w");
    }
    return s;
}

/// Homogeneous spaces recorded only by the ellipticity flag; cohomology data can be supplied in a record file.
inline std::vector<SpaceRecord> homogeneous_stubs() {
    std::vector<SpaceRecord> out;
    auto stub = [&](std::string name, int dim, std::string note) {
        SpaceRecord s;
        s.name = std::move(name);
        s.family = "homogeneous";
        s.dimension = dim;
        for (unsigned p : catalog_primes()) s.mod_p[p].elliptic_homogeneous = true;
        s.notes.push_back("F_p-elliptic for every p as a homogeneous space; some mod-p cohomology ring needs two generators");
        if (!note.empty()) s.notes.push_back(std::move(note));
        out.push_back(std::move(s));
    };
    stub("SU(2)/SO(3)", 0, "label kept as listed in the source; the dimension is left unset");
    stub("Sp(2)/SU(2)", 7, "");
    for (int i = 1; i <= 5; ++i) stub("G2-homogeneous-" + std::to_string(i), 0, "one of five G2 homogeneous spaces; not named in the source");
    return out;
}

/// Bound on the family parameter n; the Euler classes used for Q_{2n,e}.
inline std::vector<long long> catalog_euler_classes() { return {0, 1, 2, 3, 4, 5, 6, 7, 11, 13, 30030}; }

/// Every record, ordered by name; parametrized families are instantiated for parameters up to `bound`.
inline std::vector<SpaceRecord> builtin_catalog(int bound = 10) {
    if (bound < 2) throw InvalidInput("catalog bound must be at least 2");
    std::vector<SpaceRecord> out;
    for (int n = 2; n <= bound; ++n) out.push_back(make_sphere(n));
    for (int n = 2; n <= bound; ++n) out.push_back(make_complex_projective(n));
    for (int n = 2; n <= bound; ++n)
        for (long long e : catalog_euler_classes()) out.push_back(make_sphere_bundle(n, e));
    for (int n = 2; n <= bound; ++n) out.push_back(make_stiefel(n));
    for (int n = 2; n <= bound; ++n) out.push_back(make_grassmannian(n));
    for (auto& s : homogeneous_stubs()) out.push_back(std::move(s));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

/// A lookup miss; carries the closest catalog names.
class UnknownSpace : public InvalidInput {
public:
    UnknownSpace(const std::string& name, std::vector<std::string> near)
        : InvalidInput("unknown space '" + name + "'" + (near.empty() ? "" : "; did you mean " + detail::join(near, ", ") + "?")),
          near_(std::move(near)) {}
    const std::vector<std::string>& near_matches() const { return near_; }

private:
    std::vector<std::string> near_;
};

namespace detail {

inline std::string normalize_name(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}' && c != '_')
            out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace detail

/// Resolves a space name; family names accept any parameter, e.g. "Q_{4,2}", "V2(R^5)", "G2+(R^7)", "S^3", "CP^2".
inline SpaceRecord find_space(const std::string& name, int bound = 10) {
    const std::string k = detail::normalize_name(name);
    std::smatch m;
    static const std::regex sphere(R"(S\^?(\d+))"), cp(R"(CP\^?(\d+))"), q(R"(Q\(?(\d+),(-?\d+)\)?)"),
        stiefel(R"(V2\(R\^?(\d+)\))"), grass(R"(G2\^?\+\(R\^?(\d+)\))");
    auto num = [&](std::size_t i) { return std::stoll(m[i].str()); };
    try {
        if (std::regex_match(k, m, sphere)) return make_sphere(static_cast<int>(num(1)));
        if (std::regex_match(k, m, cp)) return make_complex_projective(static_cast<int>(num(1)));
        if (std::regex_match(k, m, q)) {
            const long long d = num(1);
            if (d % 2 != 0) throw InvalidInput("Q_{2n,e} needs an even base dimension");
            return make_sphere_bundle(static_cast<int>(d / 2), num(2));
        }
        if (std::regex_match(k, m, stiefel) || std::regex_match(k, m, grass)) {
            const long long d = num(1);
            if (d % 2 == 0 || d < 3) throw InvalidInput("expected R^{2n+1}");
            const int n = static_cast<int>((d - 1) / 2);
            return std::regex_match(k, grass) ? make_grassmannian(n) : make_stiefel(n);
        }
    } catch (const std::out_of_range&) {
        throw InvalidInput("parameter out of range in '" + name + "'");
    }
    for (auto& s : homogeneous_stubs())
        if (detail::normalize_name(s.name) == k) return s;
    // near matches among the catalog names
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& s : builtin_catalog(std::min(bound, 4)))
        scored.emplace_back(detail::edit_distance(k, detail::normalize_name(s.name)), s.name);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> near;
    for (const auto& [d, n] : scored)
        if (near.size() < 3 && d <= std::max<std::size_t>(3, k.size() / 2)) near.push_back(n);
    throw UnknownSpace(name, near);
}

}  // namespace fpell
