#pragma once

/**
 * @file quotient.hpp
 * @brief Degree-truncated quotient of a free algebra by a homogeneous ideal.
 *
 * For each degree d <= cutoff the ideal slice I_d is spanned by the
 * relations of degree d and by x * I_{d-|x|} (and I_{d-|x|} * x in the
 * associative mode) for every generator x. Its fully reduced echelon form
 * over F_p gives the standard monomials (the non-pivot columns), which form
 * the monomial basis of the quotient in degree d, and a one-pass normal form.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fpell/field.hpp"
#include "fpell/presentation.hpp"

namespace fpell {

class QuotientAlgebra {
public:
    explicit QuotientAlgebra(FinitePresentation fp) : fp_(std::move(fp)), F_(fp_.p), R_(fp_.rules()) {
        fp_.validate();
        slices_.reserve(static_cast<std::size_t>(fp_.cutoff) + 1);
        for (int d = 0; d <= fp_.cutoff; ++d) build_slice(d);
    }

    const FinitePresentation& presentation() const { return fp_; }
    const PrimeField& field() const { return F_; }
    const MonomialRules& rules() const { return R_; }
    int cutoff() const { return fp_.cutoff; }
    unsigned prime() const { return fp_.p; }

    std::size_t dim(int d) const { return in_range(d) ? slices_[d].basis.size() : 0; }
    std::size_t free_dim(int d) const { return in_range(d) ? slices_[d].monos.size() : 0; }
    std::size_t ideal_rank(int d) const { return in_range(d) ? slices_[d].ideal.rank() : 0; }

    /// Standard monomials of degree d, in decreasing monomial order.
    const std::vector<Monomial>& basis(int d) const {
        check(d);
        return slices_[d].basis;
    }

    std::string basis_string(int d, std::size_t i) const { return fp_.monomial_string(basis(d)[i]); }

    std::string element_string(int d, const SparseVector& v) const {
        if (v.empty()) return "0";
        std::string out;
        for (const auto& [i, c] : v) {
            if (!out.empty()) out += " + ";
            if (c != 1) out += std::to_string(c) + "*";
            out += basis_string(d, i);
        }
        return out;
    }

    /// Coordinates (in the standard basis of degree d) of a free-algebra element of degree d.
    SparseVector normal_form(int d, const std::vector<std::pair<Monomial, Coeff>>& terms) const {
        check(d);
        const Slice& sl = slices_[d];
        std::vector<std::pair<std::size_t, Coeff>> cols;
        for (const auto& [m, c] : terms) cols.emplace_back(sl.index.at(m), c);
        return to_basis(sl, sl.ideal.reduce(F_.collect(std::move(cols))));
    }

    SparseVector monomial_class(const Monomial& m) const {
        const int d = R_.degree(m);
        return normal_form(d, {{m, 1}});
    }

    SparseVector generator_class(std::size_t g) const {
        if (fp_.generators[g].degree > fp_.cutoff) throw InvalidInput("generator lies above the cutoff");
        return monomial_class(R_.generator(g));
    }

    SparseVector basis_product(int d1, std::size_t i, int d2, std::size_t j) const {
        const int d = d1 + d2;
        check(d);
        auto prod = R_.multiply(basis(d1)[i], basis(d2)[j]);
        if (!prod) return {};
        SparseVector v = normal_form(d, {{prod->mono, 1}});
        return prod->negative ? F_.scale(v, F_.neg(1)) : v;
    }

    /// Product of homogeneous elements given in standard coordinates.
    SparseVector multiply(int d1, const SparseVector& a, int d2, const SparseVector& b) const {
        const int d = d1 + d2;
        check(d);
        std::vector<std::pair<Monomial, Coeff>> terms;
        for (const auto& [i, ca] : a) {
            for (const auto& [j, cb] : b) {
                auto prod = R_.multiply(slices_[d1].basis[i], slices_[d2].basis[j]);
                if (!prod) continue;
                Coeff c = F_.mul(ca, cb);
                terms.emplace_back(std::move(prod->mono), prod->negative ? F_.neg(c) : c);
            }
        }
        return normal_form(d, terms);
    }

    /// Graded commutator [a, b] = ab - (-1)^{|a||b|} ba.
    SparseVector commutator(int d1, const SparseVector& a, int d2, const SparseVector& b) const {
        SparseVector ab = multiply(d1, a, d2, b);
        SparseVector ba = multiply(d2, b, d1, a);
        const bool odd = (d1 % 2 != 0) && (d2 % 2 != 0);
        return F_.axpy(ab, odd ? 1 : F_.neg(1), ba);
    }

    /// Power of a homogeneous element; empty optional when the degree exceeds the cutoff.
    std::optional<SparseVector> power(int d, const SparseVector& a, unsigned long long e) const {
        if (e == 0) return SparseVector{{0, 1}};
        if (static_cast<long long>(d) * static_cast<long long>(e) > fp_.cutoff) return std::nullopt;
        SparseVector acc = a;
        for (unsigned long long k = 1; k < e; ++k) acc = multiply(static_cast<int>(d * k), acc, d, a);
        return acc;
    }

private:
    struct Slice {
        explicit Slice(const PrimeField& F) : ideal(F) {}
        std::vector<Monomial> monos;
        std::map<Monomial, std::size_t> index;
        Echelon ideal;
        std::vector<Monomial> basis;
        std::vector<long> col_to_basis;
    };

    bool in_range(int d) const { return d >= 0 && d <= fp_.cutoff; }
    void check(int d) const {
        if (!in_range(d))
            throw InvalidInput("degree " + std::to_string(d) + " outside computed range [0, " +
                               std::to_string(fp_.cutoff) + "]");
    }

    SparseVector to_basis(const Slice& sl, const SparseVector& reduced) const {
        SparseVector out;
        out.reserve(reduced.size());
        for (const auto& [col, c] : reduced) out.emplace_back(static_cast<std::size_t>(sl.col_to_basis[col]), c);
        return out;
    }

    void insert_product(Slice& sl, const Monomial& left, const SparseVector& row, const Slice& from, bool on_right) {
        std::vector<std::pair<std::size_t, Coeff>> cols;
        for (const auto& [col, c] : row) {
            auto prod = on_right ? R_.multiply(from.monos[col], left) : R_.multiply(left, from.monos[col]);
            if (!prod) continue;
            cols.emplace_back(sl.index.at(prod->mono), prod->negative ? F_.neg(c) : c);
        }
        sl.ideal.insert(F_.collect(std::move(cols)));
    }

    void build_slice(int d) {
        Slice sl(F_);
        sl.monos = R_.enumerate(d);
        for (std::size_t i = 0; i < sl.monos.size(); ++i) sl.index.emplace(sl.monos[i], i);
        for (const auto& rel : fp_.relations) {
            if (rel.degree != d) continue;
            std::vector<std::pair<std::size_t, Coeff>> cols;
            for (const auto& [m, c] : rel.terms) cols.emplace_back(sl.index.at(m), c);
            sl.ideal.insert(F_.collect(std::move(cols)));
        }
        for (std::size_t g = 0; g < R_.generator_count(); ++g) {
            const int dg = R_.generator_degree(g);
            if (dg > d) continue;
            const Slice& from = slices_[d - dg];
            const Monomial gm = R_.generator(g);
            for (const auto& [pivot, row] : from.ideal.rows()) {
                insert_product(sl, gm, row, from, false);
                if (R_.mode() == Mode::Associative) insert_product(sl, gm, row, from, true);
            }
        }
        sl.col_to_basis.assign(sl.monos.size(), -1);
        for (std::size_t col = 0; col < sl.monos.size(); ++col) {
            if (!sl.ideal.is_pivot(col)) {
                sl.col_to_basis[col] = static_cast<long>(sl.basis.size());
                sl.basis.push_back(sl.monos[col]);
            }
        }
        slices_.push_back(std::move(sl));
    }

    FinitePresentation fp_;
    PrimeField F_;
    MonomialRules R_;
    std::vector<Slice> slices_;
};

}  // namespace fpell
