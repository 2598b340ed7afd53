#pragma once

/**
 * @file field.hpp
 * @brief Prime field arithmetic and sparse row reduction over F_p.
 *
 * Vectors are sparse, sorted by column index. Column 0 is the "largest"
 * column: an Echelon keeps every row monic at its smallest column (the
 * pivot) and fully reduced, so pivots of an ideal slice whose columns are
 * ordered by decreasing monomial are exactly its leading monomials.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fpell/error.hpp"

namespace fpell {

using Coeff = std::uint32_t;
using SparseVector = std::vector<std::pair<std::size_t, Coeff>>;

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class PrimeField {
public:
    explicit PrimeField(unsigned p) : p_(p) {
        if (!is_prime(p) || p > 65521) throw InvalidInput("not a supported prime: " + std::to_string(p));
    }

    unsigned characteristic() const { return p_; }

    Coeff add(Coeff a, Coeff b) const { return static_cast<Coeff>((a + b) % p_); }
    Coeff sub(Coeff a, Coeff b) const { return static_cast<Coeff>((a + p_ - b) % p_); }
    Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
    Coeff mul(Coeff a, Coeff b) const {
        return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Coeff from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Coeff>(r);
    }
    Coeff sign(bool negative) const { return negative ? neg(1) : 1; }

    Coeff pow(Coeff a, unsigned long long e) const {
        Coeff r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Coeff inv(Coeff a) const {
        if (a == 0) throw std::domain_error("inverse of zero in F_p");
        return pow(a, p_ - 2);
    }

    /// y + a*x
    SparseVector axpy(const SparseVector& y, Coeff a, const SparseVector& x) const {
        SparseVector out;
        if (a == 0) return y;
        out.reserve(y.size() + x.size());
        auto i = y.begin();
        auto j = x.begin();
        while (i != y.end() || j != x.end()) {
            if (j == x.end() || (i != y.end() && i->first < j->first)) {
                out.push_back(*i++);
            } else if (i == y.end() || j->first < i->first) {
                out.emplace_back(j->first, mul(a, j->second));
                ++j;
            } else {
                Coeff c = add(i->second, mul(a, j->second));
                if (c) out.emplace_back(i->first, c);
                ++i;
                ++j;
            }
        }
        return out;
    }

    SparseVector scale(const SparseVector& x, Coeff a) const {
        if (a == 0) return {};
        SparseVector out = x;
        for (auto& e : out) e.second = mul(e.second, a);
        return out;
    }

    /// Builds a sorted sparse vector from unsorted (index, coefficient) pairs.
    SparseVector collect(std::vector<std::pair<std::size_t, Coeff>> terms) const {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVector out;
        for (const auto& [idx, c] : terms) {
            if (!out.empty() && out.back().first == idx) {
                out.back().second = add(out.back().second, c);
                if (out.back().second == 0) out.pop_back();
            } else if (c % p_ != 0) {
                out.emplace_back(idx, c % p_);
            }
        }
        return out;
    }

private:
    unsigned p_;
};

inline Coeff coefficient_at(const SparseVector& v, std::size_t idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& e, std::size_t i) { return e.first < i; });
    return (it != v.end() && it->first == idx) ? it->second : 0;
}

/// Shifts all indices of v by offset.
inline SparseVector shifted(const SparseVector& v, std::size_t offset) {
    SparseVector out = v;
    for (auto& e : out) e.first += offset;
    return out;
}

/// Fully reduced row echelon form maintained incrementally.
class Echelon {
public:
    explicit Echelon(PrimeField field) : F_(field) {}

    const PrimeField& field() const { return F_; }
    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::size_t col) const { return rows_.count(col) != 0; }
    const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

    /// Remainder of v modulo the row space; contains no pivot columns.
    SparseVector reduce(const SparseVector& v) const {
        SparseVector out;
        std::vector<std::pair<Coeff, const SparseVector*>> subtract;
        for (const auto& [col, c] : v) {
            auto it = rows_.find(col);
            if (it == rows_.end()) {
                out.emplace_back(col, c);
            } else {
                subtract.emplace_back(c, &it->second);
            }
        }
        for (const auto& [c, row] : subtract) {
            // row = e_pivot + tail, tail free of pivots
            SparseVector tail(row->begin() + 1, row->end());
            out = F_.axpy(out, F_.neg(c), tail);
        }
        return out;
    }

    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    /// Adds v to the row space. Returns the pivot of the new row, or npos if v was dependent.
    std::size_t insert(const SparseVector& v) {
        SparseVector r = reduce(v);
        if (r.empty()) return npos;
        Coeff lead_inv = F_.inv(r.front().second);
        r = F_.scale(r, lead_inv);
        const std::size_t pivot = r.front().first;
        for (auto& [pc, row] : rows_) {
            Coeff c = coefficient_at(row, pivot);
            if (c) row = F_.axpy(row, F_.neg(c), r);
        }
        rows_.emplace(pivot, std::move(r));
        return pivot;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    PrimeField F_;
    std::map<std::size_t, SparseVector> rows_;
};

/**
 * Left null space of a list of image vectors: returns a basis of the
 * coefficient vectors c with sum_i c_i * images[i] = 0.
 */
inline std::vector<SparseVector> kernel(const PrimeField& F, const std::vector<SparseVector>& images) {
    std::size_t width = 0;
    for (const auto& v : images)
        if (!v.empty()) width = std::max(width, v.back().first + 1);
    Echelon e(F);
    for (std::size_t i = 0; i < images.size(); ++i) {
        SparseVector aug = images[i];
        aug.emplace_back(width + i, 1);
        e.insert(aug);
    }
    std::vector<SparseVector> out;
    for (const auto& [pivot, row] : e.rows()) {
        if (pivot >= width) {
            SparseVector k;
            for (const auto& [col, c] : row) k.emplace_back(col - width, c);
            out.push_back(std::move(k));
        }
    }
    return out;
}

/// Rank of the span of the given vectors.
inline std::size_t rank_of(const PrimeField& F, const std::vector<SparseVector>& vs) {
    Echelon e(F);
    for (const auto& v : vs) e.insert(v);
    return e.rank();
}

}  // namespace fpell
