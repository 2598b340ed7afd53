#pragma once

/**
 * @file structure.hpp
 * @brief Generators, centers and lower central series of graded algebras.
 *
 * Every question is answered twice where possible: in closed form on the
 * Borel-form class (AlgebraPresentation) and by degree-truncated linear
 * algebra on a QuotientAlgebra. Results that depend on a cutoff carry a
 * Tri or an explicit "certified through" degree.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpell/field.hpp"
#include "fpell/presentation.hpp"
#include "fpell/quotient.hpp"
#include "fpell/tri.hpp"

namespace fpell {

/// Standard monomials of the degree-d slice.
inline std::vector<std::string> monomial_basis(const QuotientAlgebra& A, int degree) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < A.dim(degree); ++i) out.push_back(A.basis_string(degree, i));
    return out;
}

/// Graded dimensions of Q(A) = A+/(A+ . A+).
struct Indecomposables {
    std::vector<std::size_t> dims;  ///< dims[d] for 0 <= d <= max_degree
    bool complete = true;           ///< every generator degree lies within max_degree
    bool infinite = false;          ///< infinitely many generators (infinite tensor)

    std::size_t total() const {
        std::size_t t = 0;
        for (auto d : dims) t += d;
        return t;
    }
};

inline Indecomposables indecomposables(const AlgebraPresentation& a, int max_degree) {
    Indecomposables q;
    q.dims.assign(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0);
    for (const auto& f : a.factors) {
        if (f.degree <= max_degree)
            ++q.dims[f.degree];
        else
            q.complete = false;
    }
    q.infinite = a.infinite_tensor;
    if (a.infinite_tensor) q.complete = false;
    return q;
}

inline Indecomposables indecomposables(const QuotientAlgebra& A, int max_degree) {
    max_degree = std::min(max_degree, A.cutoff());
    Indecomposables q;
    q.dims.assign(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0);
    const auto& R = A.rules();
    for (int d = 1; d <= max_degree; ++d) {
        // A+ . A+ in degree d is spanned by x * A_{d-|x|} for generators x with |x| < d
        Echelon dec(A.field());
        for (std::size_t g = 0; g < R.generator_count(); ++g) {
            const int dg = R.generator_degree(g);
            if (dg >= d) continue;
            const SparseVector gv = A.generator_class(g);
            for (std::size_t i = 0; i < A.dim(d - dg); ++i)
                dec.insert(A.multiply(dg, gv, d - dg, SparseVector{{i, 1}}));
        }
        q.dims[d] = A.dim(d) - dec.rank();
    }
    q.complete = A.presentation().max_generator_degree() <= max_degree;
    return q;
}

inline Tri one_generated(const Indecomposables& q) {
    if (q.infinite) return Tri::False;
    if (q.total() >= 2) return Tri::False;
    return q.complete ? Tri::True : Tri::Unknown;
}

inline Tri one_generated(const AlgebraPresentation& a) {
    return one_generated(indecomposables(a, std::max(1, [&] {
                                              int m = 0;
                                              for (const auto& f : a.factors) m = std::max(m, f.degree);
                                              return m;
                                          }())));
}

inline Tri one_generated(const QuotientAlgebra& A) { return one_generated(indecomposables(A, A.cutoff())); }

/// A graded subspace of an algebra known degreewise up to `certified_through`.
struct GradedSubspace {
    std::vector<std::vector<SparseVector>> basis;  ///< basis[d], in standard coordinates of degree d
    int certified_through = -1;

    std::size_t dim(int d) const {
        return (d >= 0 && d < static_cast<int>(basis.size())) ? basis[d].size() : 0;
    }
};

/// Echelon of a degree-d subspace, for membership tests.
inline Echelon span_of(const PrimeField& F, const std::vector<SparseVector>& vs) {
    Echelon e(F);
    for (const auto& v : vs) e.insert(v);
    return e;
}

/**
 * Center with respect to the graded commutator: z with z x = (-1)^{|z||x|} x z.
 * Commuting with the generators suffices, so degree d is certified when
 * d + (max generator degree) <= cutoff.
 */
inline GradedSubspace graded_center(const QuotientAlgebra& A) {
    GradedSubspace Z;
    const auto& R = A.rules();
    const int gmax = A.presentation().max_generator_degree();
    Z.certified_through = A.cutoff() - gmax;
    for (int d = 0; d <= Z.certified_through; ++d) {
        std::vector<SparseVector> images;
        for (std::size_t i = 0; i < A.dim(d); ++i) {
            SparseVector img;
            std::size_t offset = 0;
            for (std::size_t g = 0; g < R.generator_count(); ++g) {
                const int dg = R.generator_degree(g);
                SparseVector c = A.commutator(d, SparseVector{{i, 1}}, dg, A.generator_class(g));
                for (const auto& [idx, v] : c) img.emplace_back(idx + offset, v);
                offset += A.dim(d + dg);
            }
            images.push_back(std::move(img));
        }
        Z.basis.push_back(kernel(A.field(), images));
    }
    return Z;
}

/**
 * The part of the center for which d(x^p) = p x^{p-1} dx holds for every
 * derivation of odd total degree: central elements of even degree. It is a
 * subalgebra and, on Borel-form algebras, contains the even polynomial
 * generators and the squares of the odd polynomial generators.
 */
inline GradedSubspace effective_center(const QuotientAlgebra& A) {
    GradedSubspace Z = graded_center(A);
    for (std::size_t d = 0; d < Z.basis.size(); ++d)
        if (d % 2 != 0) Z.basis[d].clear();
    return Z;
}

inline Tri is_effective_central(const QuotientAlgebra& A, int d, const SparseVector& x) {
    if (x.empty()) return Tri::True;
    if (d % 2 != 0) return Tri::False;
    const auto& R = A.rules();
    for (std::size_t g = 0; g < R.generator_count(); ++g) {
        const int dg = R.generator_degree(g);
        if (d + dg > A.cutoff()) return Tri::Unknown;
        if (!A.commutator(d, x, dg, A.generator_class(g)).empty()) return Tri::False;
    }
    return Tri::True;
}

/// Generators (indecomposables) of the subalgebra spanned degreewise by S.
inline std::vector<std::vector<SparseVector>> subalgebra_generators(const QuotientAlgebra& A, const GradedSubspace& S) {
    std::vector<std::vector<SparseVector>> gens(S.basis.size());
    for (int d = 1; d < static_cast<int>(S.basis.size()); ++d) {
        Echelon dec(A.field());
        for (int d1 = 1; d1 < d; ++d1)
            for (const auto& a : S.basis[d1])
                for (const auto& b : S.basis[d - d1]) dec.insert(A.multiply(d1, a, d - d1, b));
        for (const auto& v : S.basis[d])
            if (dec.insert(v) != Echelon::npos) gens[d].push_back(v);
    }
    return gens;
}

/// A polynomial generator of the effective center of a Borel-form algebra: factor^power.
struct EffectiveGenerator {
    std::size_t factor = 0;
    int power = 1;
    int degree = 0;
};

/// Polynomial generators of the effective center: x for even polynomial x, x^2 for odd polynomial x.
inline std::vector<EffectiveGenerator> effective_center_generators(const AlgebraPresentation& a) {
    std::vector<EffectiveGenerator> out;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const auto& f = a.factors[i];
        if (f.kind != FactorKind::Polynomial) continue;
        const int power = f.degree % 2 == 0 ? 1 : 2;
        out.push_back({i, power, f.degree * power});
    }
    return out;
}

struct IndependenceResult {
    bool independent = true;
    int checked_through = 0;
};

/// Checks that all monomials in the given homogeneous elements are linearly independent through the cutoff.
inline IndependenceResult polynomial_independence(const QuotientAlgebra& A,
                                                  const std::vector<std::pair<int, SparseVector>>& elems) {
    IndependenceResult res;
    res.checked_through = A.cutoff();
    const std::size_t k = elems.size();
    for (const auto& e : elems)
        if (e.first < 1) throw InvalidInput("polynomial independence needs positive-degree elements");
    // products indexed by exponent vector, built degree by degree
    std::map<std::vector<int>, SparseVector> value;
    value[std::vector<int>(k, 0)] = SparseVector{{0, 1}};
    for (int D = 1; D <= A.cutoff(); ++D) {
        Echelon span(A.field());
        std::vector<std::pair<std::vector<int>, SparseVector>> fresh;
        for (const auto& [expo, v] : value) {
            int deg = 0;
            for (std::size_t i = 0; i < k; ++i) deg += expo[i] * elems[i].first;
            for (std::size_t i = 0; i < k; ++i) {
                if (deg + elems[i].first != D) continue;
                // only extend in the last nonzero slot or later, so each exponent vector is built once
                bool ok = true;
                for (std::size_t j = i + 1; j < k; ++j)
                    if (expo[j] != 0) ok = false;
                if (!ok) continue;
                auto e2 = expo;
                ++e2[i];
                fresh.emplace_back(e2, A.multiply(deg, v, elems[i].first, elems[i].second));
            }
        }
        for (auto& [expo, v] : fresh) {
            if (span.insert(v) == Echelon::npos) {
                res.independent = false;
                res.checked_through = D;
                return res;
            }
            value.emplace(std::move(expo), std::move(v));
        }
    }
    return res;
}

enum class LcsStatus { Nilpotent, NotNilpotentBelowCutoff, Unknown };

inline const char* to_string(LcsStatus s) {
    switch (s) {
        case LcsStatus::Nilpotent: return "nilpotent";
        case LcsStatus::NotNilpotentBelowCutoff: return "not-nilpotent-below-cutoff";
        default: return "unknown";
    }
}

struct LowerCentralSeries {
    /// stage_dims[i][d] = dim of the augmentation part of Gamma^(i) in degree d
    std::vector<std::vector<std::size_t>> stage_dims;
    LcsStatus status = LcsStatus::Unknown;
    int stage = -1;          ///< first trivial stage when nilpotent
    int max_degree = 0;
    bool exact = false;      ///< the algebra vanishes above max_degree, so nothing is cutoff-limited
};

/**
 * Gamma^(0) = A and Gamma^(i+1) = the subalgebra generated by the graded
 * commutators [a, z], a in A, z in Gamma^(i). Computed degreewise through
 * max_degree; Gamma^(i) is concentrated in degrees >= i+1.
 */
inline LowerCentralSeries lower_central_series(const QuotientAlgebra& A, int max_stage, int max_degree) {
    LowerCentralSeries L;
    max_degree = std::min(max_degree, A.cutoff());
    L.max_degree = max_degree;
    const int gmax = std::max(1, A.presentation().max_generator_degree());
    // A vanishes above max_degree if it vanishes on a window of gmax consecutive degrees ending there
    if (max_degree >= gmax) {
        bool zero_window = true;
        for (int d = max_degree - gmax + 1; d <= max_degree; ++d)
            if (A.dim(d) != 0) zero_window = false;
        L.exact = zero_window;
    }
    GradedSubspace stage;
    stage.basis.resize(static_cast<std::size_t>(max_degree) + 1);
    for (int d = 1; d <= max_degree; ++d)
        for (std::size_t i = 0; i < A.dim(d); ++i) stage.basis[d].push_back(SparseVector{{i, 1}});
    auto record = [&](const GradedSubspace& s) {
        std::vector<std::size_t> dims(static_cast<std::size_t>(max_degree) + 1, 0);
        for (int d = 0; d <= max_degree; ++d) dims[d] = s.dim(d);
        L.stage_dims.push_back(std::move(dims));
    };
    record(stage);
    for (int i = 1; i <= max_stage; ++i) {
        if (i + 1 > max_degree && !L.exact) {
            L.status = LcsStatus::Unknown;
            return L;
        }
        GradedSubspace next;
        next.basis.resize(static_cast<std::size_t>(max_degree) + 1);
        bool nonzero = false;
        for (int d = 1; d <= max_degree; ++d) {
            Echelon e(A.field());
            for (int d2 = 1; d2 < d; ++d2) {
                const int d1 = d - d2;
                for (const auto& z : stage.basis[d2])
                    for (std::size_t a = 0; a < A.dim(d1); ++a) e.insert(A.commutator(d1, SparseVector{{a, 1}}, d2, z));
                for (const auto& x : next.basis[d1])
                    for (const auto& y : next.basis[d2]) e.insert(A.multiply(d1, x, d2, y));
            }
            for (const auto& [pivot, row] : e.rows()) next.basis[d].push_back(row);
            if (!next.basis[d].empty()) nonzero = true;
        }
        record(next);
        if (!nonzero) {
            L.status = LcsStatus::Nilpotent;
            L.stage = i;
            return L;
        }
        stage = std::move(next);
    }
    L.status = LcsStatus::NotNilpotentBelowCutoff;
    return L;
}

}  // namespace fpell
