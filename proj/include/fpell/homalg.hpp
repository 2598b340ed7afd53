#pragma once

/**
 * @file homalg.hpp
 * @brief Ext_A(F, A), depth, the Gorenstein condition and ellipticity on Borel-form algebras.
 *
 * Per-factor tables:
 *   F[x], |x| = k            one class in bidegree (1, k)
 *   F[x]/(x^n), |x| = k      one class in bidegree (0, -k(n-1))
 * An exterior factor is F[x]/(x^2). Tables of tensor products are Kunneth
 * convolutions. Internal degrees keep the sign shown above.
 */

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpell/presentation.hpp"
#include "fpell/quotient.hpp"
#include "fpell/series.hpp"
#include "fpell/structure.hpp"

namespace fpell {

using Bidegree = std::pair<int, long>;  ///< (s, t)

struct ExtTable {
    std::map<Bidegree, BigInt> entries;  ///< nonzero dimensions only
    bool finite = true;                  ///< false for an infinite tensor product (the table is then empty)

    BigInt total() const {
        BigInt t = 0;
        for (const auto& [b, d] : entries) t += d;
        return t;
    }
    friend bool operator==(const ExtTable&, const ExtTable&) = default;
};

inline ExtTable ext_table(const MonogenicFactor& f) {
    ExtTable t;
    if (f.kind == FactorKind::Polynomial)
        t.entries[{1, f.degree}] = 1;
    else
        t.entries[{0, -static_cast<long>(f.degree) * (f.height - 1)}] = 1;
    return t;
}

/// Kunneth: Ext_{A (x) B}(F, A (x) B) = Ext_A(F, A) (x) Ext_B(F, B).
inline ExtTable kunneth(const ExtTable& a, const ExtTable& b) {
    ExtTable out;
    out.finite = a.finite && b.finite;
    if (!out.finite) return out;
    for (const auto& [ba, da] : a.entries)
        for (const auto& [bb, db] : b.entries) out.entries[{ba.first + bb.first, ba.second + bb.second}] += da * db;
    return out;
}

inline ExtTable ext_table(const AlgebraPresentation& a) {
    a.validate();
    ExtTable t;
    if (a.infinite_tensor) {
        t.finite = false;
        return t;
    }
    t.entries[{0, 0}] = 1;
    for (const auto& f : a.factors) t = kunneth(t, ext_table(f));
    return t;
}

struct DepthResult {
    std::optional<int> value;  ///< empty means infinite
    bool infinite() const { return !value.has_value(); }
    std::string to_string() const { return value ? std::to_string(*value) : "infinite"; }
    friend bool operator==(const DepthResult&, const DepthResult&) = default;
};

inline DepthResult depth(const ExtTable& t) {
    DepthResult r;
    for (const auto& [b, d] : t.entries)
        if (!r.value || b.first < *r.value) r.value = b.first;
    return r;
}

inline DepthResult depth(const AlgebraPresentation& a) { return depth(ext_table(a)); }

/// Depth of A (x) B from the depths of the factors.
inline DepthResult operator+(const DepthResult& a, const DepthResult& b) {
    if (a.infinite() || b.infinite()) return {};
    return {*a.value + *b.value};
}

struct GorensteinResult {
    bool is_gorenstein = false;
    std::optional<Bidegree> socle;
};

inline GorensteinResult is_gorenstein(const ExtTable& t) {
    GorensteinResult g;
    if (t.entries.size() == 1 && t.entries.begin()->second == 1) {
        g.is_gorenstein = true;
        g.socle = t.entries.begin()->first;
    }
    return g;
}

inline GorensteinResult is_gorenstein(const AlgebraPresentation& a) { return is_gorenstein(ext_table(a)); }

/// The four equivalent conditions for a connected cocommutative Hopf algebra of finite type and finite depth.
struct EllipticReport {
    bool finitely_generated = false;
    bool fg_and_nilpotent = false;  ///< the definition of elliptic
    bool nilpotent = false;
    bool polynomial_growth = false;
    bool gorenstein = false;
    bool finite_depth = false;
    bool elliptic = false;
    bool conditions_agree = false;
    int growth_exponent = 0;    ///< K0 of the Poincare series
    int nilpotency_stage = -1;  ///< first trivial stage of the lower central series, when computed
    int oracle_cutoff = 0;      ///< degree through which nilpotency was checked by linear algebra
    std::string note;
};

/**
 * Evaluates the four conditions independently:
 *   nilpotent          lower central series of the oracle quotient
 *   polynomial growth  growth class of the Poincare series
 *   Gorenstein         Ext table
 *   elliptic           finite generation (indecomposables) and nilpotency
 * An infinite tensor product is not finitely generated and has infinite
 * depth; every condition is then reported false.
 */
inline EllipticReport is_elliptic(const AlgebraPresentation& a) {
    a.validate();
    if (!a.hopf) throw InvalidInput("ellipticity is defined for Hopf algebras; set the hopf flag");
    EllipticReport r;
    const ExtTable ext = ext_table(a);
    r.finite_depth = !depth(ext).infinite();
    if (a.infinite_tensor) {
        r.note = "infinite tensor product: not finitely generated, infinite depth, empty Ext";
        r.conditions_agree = true;
        return r;
    }
    const Indecomposables q = indecomposables(a, [&] {
        int m = 1;
        for (const auto& f : a.factors) m = std::max(m, f.degree);
        return m;
    }());
    r.finitely_generated = q.complete && !q.infinite;

    // the oracle needs a prime; characteristic zero is modelled by a large prime
    AlgebraPresentation modp = a;
    if (modp.p == 0) modp.p = 65521;
    modp.hopf = false;
    int maxdeg = 1;
    for (const auto& f : a.factors) maxdeg = std::max(maxdeg, f.degree);
    r.oracle_cutoff = std::min(2 * maxdeg + 2, 24);
    QuotientAlgebra A(to_finite(modp, r.oracle_cutoff));
    const LowerCentralSeries lcs = lower_central_series(A, 4, r.oracle_cutoff);
    r.nilpotent = lcs.status == LcsStatus::Nilpotent;
    r.nilpotency_stage = lcs.stage;

    r.fg_and_nilpotent = r.finitely_generated && r.nilpotent;
    {
        // a sandwich c n^K0 <= S(n) <= C n^K0 over a window; finite dimension is trivially polynomial
        const PoincareSeries s = poincare_series(a);
        const GrowthClass g = growth_class(s);
        r.growth_exponent = g.k0;
        r.polynomial_growth = g.k0 == 0 || partial_sums_exponent_witness(s, 32).c_lower > 0;
    }
    r.gorenstein = is_gorenstein(ext).is_gorenstein;
    r.conditions_agree = r.fg_and_nilpotent == r.nilpotent && r.nilpotent == r.polynomial_growth &&
                         r.polynomial_growth == r.gorenstein;
    r.elliptic = r.fg_and_nilpotent;
    return r;
}

}  // namespace fpell
