#pragma once

/**
 * @file presentation.hpp
 * @brief Presentations of connected graded algebras over F_p.
 *
 * Two flavours:
 *  - AlgebraPresentation: a tensor product of monogenic factors (exterior,
 *    polynomial, truncated polynomial). Every commutative connected Hopf
 *    algebra over F_p has this shape, and most questions have closed forms.
 *  - FinitePresentation: generators and homogeneous relations, evaluated by
 *    degree-truncated linear algebra (see quotient.hpp). It is the
 *    brute-force oracle for everything the structured class claims.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpell/error.hpp"
#include "fpell/expr.hpp"
#include "fpell/field.hpp"
#include "fpell/series.hpp"

namespace fpell {

/// Multiplication rule of the free algebra the relations live in.
enum class Mode {
    GradedCommutative,  ///< xy = (-1)^{|x||y|} yx; odd squares vanish for odd p
    Commutative,        ///< xy = yx with no signs; odd generators may have nonzero squares
    Associative,        ///< free associative algebra
};

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::GradedCommutative: return "graded-commutative";
        case Mode::Commutative: return "commutative";
        default: return "associative";
    }
}

struct Generator {
    std::string name;
    int degree = 1;
    bool odd() const { return degree % 2 != 0; }
};

/// Exponent vector in the commutative modes, word of generator indices in the associative mode.
using Monomial = std::vector<std::uint16_t>;

struct SignedMonomial {
    Monomial mono;
    bool negative = false;
};

/// Monomial arithmetic of the free algebra on a list of generators.
class MonomialRules {
public:
    MonomialRules(unsigned p, Mode mode, std::vector<int> degrees)
        : p_(p), mode_(mode), degrees_(std::move(degrees)) {}

    Mode mode() const { return mode_; }
    unsigned prime() const { return p_; }
    std::size_t generator_count() const { return degrees_.size(); }
    int generator_degree(std::size_t i) const { return degrees_[i]; }

    /// Odd generators square to zero in the free graded-commutative algebra when p is odd.
    bool exponent_capped(std::size_t i) const {
        return mode_ == Mode::GradedCommutative && p_ != 2 && degrees_[i] % 2 != 0;
    }

    Monomial unit() const { return mode_ == Mode::Associative ? Monomial{} : Monomial(degrees_.size(), 0); }

    Monomial generator(std::size_t i) const {
        if (mode_ == Mode::Associative) return Monomial{static_cast<std::uint16_t>(i)};
        Monomial m(degrees_.size(), 0);
        m[i] = 1;
        return m;
    }

    int degree(const Monomial& m) const {
        int d = 0;
        if (mode_ == Mode::Associative) {
            for (auto g : m) d += degrees_[g];
        } else {
            for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * degrees_[i];
        }
        return d;
    }

    /// Word length / total exponent.
    int length(const Monomial& m) const {
        if (mode_ == Mode::Associative) return static_cast<int>(m.size());
        int l = 0;
        for (auto e : m) l += e;
        return l;
    }

    /// a*b in the free algebra; nullopt when the product vanishes there.
    std::optional<SignedMonomial> multiply(const Monomial& a, const Monomial& b) const {
        SignedMonomial out;
        if (mode_ == Mode::Associative) {
            out.mono = a;
            out.mono.insert(out.mono.end(), b.begin(), b.end());
            return out;
        }
        out.mono.resize(degrees_.size());
        int sign_exp = 0;
        for (std::size_t i = 0; i < degrees_.size(); ++i) {
            const int e = a[i] + b[i];
            if (exponent_capped(i) && e > 1) return std::nullopt;
            out.mono[i] = static_cast<std::uint16_t>(e);
        }
        if (mode_ == Mode::GradedCommutative && p_ != 2) {
            // move each x_i^{b_i} left past x_j^{a_j} for j > i
            int odd_a_after = 0;
            for (std::size_t i = degrees_.size(); i-- > 0;) {
                if (degrees_[i] % 2 != 0) {
                    sign_exp += b[i] * odd_a_after;
                    odd_a_after += a[i];
                }
            }
        }
        out.negative = sign_exp % 2 != 0;
        return out;
    }

    /// All monomials of degree d in decreasing order (deg-lex, earlier generators larger).
    std::vector<Monomial> enumerate(int d) const {
        std::vector<Monomial> out;
        if (d < 0) return out;
        if (mode_ == Mode::Associative) {
            Monomial w;
            enumerate_words(d, w, out);
        } else {
            Monomial m(degrees_.size(), 0);
            enumerate_exponents(0, d, m, out);
        }
        return out;
    }

    /// True when a > b in the monomial order (same degree assumed).
    bool greater(const Monomial& a, const Monomial& b) const {
        if (mode_ == Mode::Associative) {
            const std::size_t n = std::min(a.size(), b.size());
            for (std::size_t i = 0; i < n; ++i)
                if (a[i] != b[i]) return a[i] < b[i];
            return a.size() > b.size();
        }
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }

private:
    void enumerate_words(int remaining, Monomial& w, std::vector<Monomial>& out) const {
        if (remaining == 0) {
            out.push_back(w);
            return;
        }
        for (std::size_t g = 0; g < degrees_.size(); ++g) {
            if (degrees_[g] <= remaining) {
                w.push_back(static_cast<std::uint16_t>(g));
                enumerate_words(remaining - degrees_[g], w, out);
                w.pop_back();
            }
        }
    }

    void enumerate_exponents(std::size_t i, int remaining, Monomial& m, std::vector<Monomial>& out) const {
        if (i == degrees_.size()) {
            if (remaining == 0) out.push_back(m);
            return;
        }
        int max_e = remaining / degrees_[i];
        if (exponent_capped(i)) max_e = std::min(max_e, 1);
        for (int e = max_e; e >= 0; --e) {
            m[i] = static_cast<std::uint16_t>(e);
            enumerate_exponents(i + 1, remaining - e * degrees_[i], m, out);
        }
        m[i] = 0;
    }

    unsigned p_;
    Mode mode_;
    std::vector<int> degrees_;
};

/// A homogeneous element of the free algebra.
struct FreePolynomial {
    int degree = 0;
    std::vector<std::pair<Monomial, Coeff>> terms;
    bool is_zero() const { return terms.empty(); }
};

/**
 * Generators-and-relations presentation evaluated through degree `cutoff`.
 * Relations must be homogeneous.
 */
struct FinitePresentation {
    unsigned p = 2;
    Mode mode = Mode::GradedCommutative;
    std::vector<Generator> generators;
    std::vector<FreePolynomial> relations;
    int cutoff = 32;

    MonomialRules rules() const {
        std::vector<int> degs;
        for (const auto& g : generators) degs.push_back(g.degree);
        return MonomialRules(p, mode, std::move(degs));
    }

    std::optional<std::size_t> generator_index(const std::string& name) const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i].name == name) return i;
        return std::nullopt;
    }

    int max_generator_degree() const {
        int m = 0;
        for (const auto& g : generators) m = std::max(m, g.degree);
        return m;
    }

    void validate() const {
        PrimeField F(p);
        (void)F;
        if (cutoff < 0) throw InvalidInput("cutoff must be nonnegative");
        if (generators.size() > 60000) throw InvalidInput("too many generators");
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (generators[i].degree < 1) throw InvalidInput("generator '" + generators[i].name + "' must have positive degree");
            for (std::size_t j = 0; j < i; ++j)
                if (generators[j].name == generators[i].name)
                    throw InvalidInput("duplicate generator name '" + generators[i].name + "'");
        }
    }

    /// Converts an expression into a homogeneous free-algebra element.
    FreePolynomial polynomial(const Expr& e) const {
        const PrimeField F(p);
        const MonomialRules R = rules();
        std::vector<std::pair<Monomial, Coeff>> acc;
        std::optional<int> deg;
        for (const auto& term : e.terms) {
            Coeff c = F.from_int(term.coeff);
            if (c == 0) continue;
            Monomial m = R.unit();
            bool vanished = false;
            for (const auto& f : term.factors) {
                auto idx = generator_index(f.name);
                if (!idx) throw InvalidInput("unknown generator '" + f.name + "'");
                for (unsigned k = 0; k < f.exponent && !vanished; ++k) {
                    auto prod = R.multiply(m, R.generator(*idx));
                    if (!prod) {
                        vanished = true;
                        break;
                    }
                    m = prod->mono;
                    if (prod->negative) c = F.neg(c);
                }
            }
            int d = 0;
            for (const auto& f : term.factors) d += static_cast<int>(f.exponent) * generators[*generator_index(f.name)].degree;
            if (deg && *deg != d) throw InvalidInput("relation is not homogeneous");
            deg = d;
            if (vanished) continue;
            acc.emplace_back(std::move(m), c);
        }
        std::sort(acc.begin(), acc.end(), [&](const auto& a, const auto& b) { return R.greater(a.first, b.first); });
        FreePolynomial out;
        out.degree = deg.value_or(0);
        for (auto& [m, c] : acc) {
            if (!out.terms.empty() && out.terms.back().first == m) {
                out.terms.back().second = F.add(out.terms.back().second, c);
                if (out.terms.back().second == 0) out.terms.pop_back();
            } else {
                out.terms.emplace_back(std::move(m), c);
            }
        }
        return out;
    }

    void add_relation(const Expr& e) {
        auto poly = polynomial(e);
        if (poly.degree < 1 && !poly.is_zero()) throw InvalidInput("relation of degree 0 would kill the unit");
        relations.push_back(std::move(poly));
    }

    void add_relation(std::string_view text) { add_relation(parse_expr(text)); }

    std::string monomial_string(const Monomial& m) const {
        std::string out;
        auto emit = [&](std::size_t g, int e) {
            if (!out.empty()) out += "*";
            out += generators[g].name;
            if (e > 1) out += "^" + std::to_string(e);
        };
        if (mode == Mode::Associative) {
            for (std::size_t i = 0; i < m.size();) {
                std::size_t j = i;
                while (j < m.size() && m[j] == m[i]) ++j;
                emit(m[i], static_cast<int>(j - i));
                i = j;
            }
        } else {
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) emit(i, m[i]);
        }
        return out.empty() ? "1" : out;
    }
};

enum class FactorKind { Exterior, Polynomial, Truncated };

inline const char* to_string(FactorKind k) {
    switch (k) {
        case FactorKind::Exterior: return "exterior";
        case FactorKind::Polynomial: return "polynomial";
        default: return "truncated";
    }
}

struct MonogenicFactor {
    FactorKind kind = FactorKind::Polynomial;
    int degree = 1;
    int height = 0;  ///< truncation height; 2 for exterior, 0 (infinite) for polynomial
    std::string name;

    static MonogenicFactor exterior(int d, std::string n = {}) { return {FactorKind::Exterior, d, 2, std::move(n)}; }
    static MonogenicFactor polynomial(int d, std::string n = {}) { return {FactorKind::Polynomial, d, 0, std::move(n)}; }
    static MonogenicFactor truncated(int d, int h, std::string n = {}) {
        return {FactorKind::Truncated, d, h, std::move(n)};
    }

    bool is_finite() const { return kind != FactorKind::Polynomial; }

    PoincareSeries series() const {
        switch (kind) {
            case FactorKind::Exterior: return PoincareSeries::exterior(degree);
            case FactorKind::Polynomial: return PoincareSeries::polynomial(degree);
            default: return PoincareSeries::truncated(degree, height);
        }
    }
};

/**
 * Tensor product of monogenic factors over F_p (p = 0 stands for a
 * characteristic-zero coefficient field; only structural questions are
 * answered there).
 */
struct AlgebraPresentation {
    unsigned p = 2;
    std::vector<MonogenicFactor> factors;
    bool hopf = false;             ///< connected cocommutative Hopf structure asserted
    bool infinite_tensor = false;  ///< factors continue without end beyond the listed ones
    bool graded_commutative = true;

    static AlgebraPresentation unit(unsigned p) {
        AlgebraPresentation a;
        a.p = p;
        return a;
    }

    std::size_t polynomial_factor_count() const {
        return static_cast<std::size_t>(std::count_if(factors.begin(), factors.end(),
                                                      [](const auto& f) { return !f.is_finite(); }));
    }

    std::string factor_name(std::size_t i) const {
        return factors[i].name.empty() ? "g" + std::to_string(i + 1) : factors[i].name;
    }

    void validate() const {
        if (p != 0 && !is_prime(p)) throw InvalidInput("not a prime: " + std::to_string(p));
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& f = factors[i];
            const std::string where = "factor " + factor_name(i);
            if (f.degree < 1) throw InvalidInput(where + ": degree must be positive");
            if (f.kind == FactorKind::Truncated && f.height < 2)
                throw InvalidInput(where + ": truncation height must be at least 2");
            if (graded_commutative && p != 2) {
                if (f.kind == FactorKind::Exterior && f.degree % 2 == 0)
                    throw InvalidInput(where + ": exterior generator of even degree needs p = 2 (use truncated height 2)");
                if (f.kind != FactorKind::Exterior && f.degree % 2 != 0)
                    throw InvalidInput(where + ": odd generator squares to zero unless p = 2");
            }
            if (hopf && p != 0 && f.kind == FactorKind::Truncated) {
                int h = f.height;
                while (h % static_cast<int>(p) == 0) h /= static_cast<int>(p);
                if (h != 1) throw InvalidInput(where + ": Hopf truncation height must be a power of p");
            }
        }
    }
};

inline AlgebraPresentation tensor(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    if (a.p != b.p) throw InvalidInput("tensor of presentations over different primes");
    if (a.graded_commutative != b.graded_commutative)
        throw InvalidInput("tensor of presentations with different commutativity conventions");
    AlgebraPresentation out;
    out.p = a.p;
    out.factors = a.factors;
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    out.hopf = a.hopf && b.hopf;
    out.infinite_tensor = a.infinite_tensor || b.infinite_tensor;
    out.graded_commutative = a.graded_commutative;
    return out;
}

/// Series of the listed factors (for an infinite tensor this is the series of the listed part only).
inline PoincareSeries poincare_series(const AlgebraPresentation& a) {
    PoincareSeries s;
    for (const auto& f : a.factors) s = s * f.series();
    return s;
}

/// The same algebra as a generators-and-relations presentation, for the oracle.
inline FinitePresentation to_finite(const AlgebraPresentation& a, int cutoff) {
    if (a.p == 0) throw InvalidInput("the linear-algebra oracle needs a prime field");
    if (a.infinite_tensor) throw InvalidInput("an infinite tensor product has no finite presentation");
    a.validate();
    FinitePresentation f;
    f.p = a.p;
    f.mode = a.graded_commutative ? Mode::GradedCommutative : Mode::Commutative;
    f.cutoff = cutoff;
    for (std::size_t i = 0; i < a.factors.size(); ++i) f.generators.push_back({a.factor_name(i), a.factors[i].degree});
    f.validate();
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const auto& fac = a.factors[i];
        if (fac.kind == FactorKind::Polynomial) continue;
        Expr e;
        e.terms.push_back({1, {{f.generators[i].name, static_cast<unsigned>(fac.height), 0}}});
        FreePolynomial rel = f.polynomial(e);
        if (!rel.is_zero()) f.relations.push_back(std::move(rel));
    }
    return f;
}

}  // namespace fpell
