#pragma once

/**
 * @file series.hpp
 * @brief Poincare series of connected graded vector spaces of finite type, kept in product form.
 *
 * A series is a product of factors
 *   (1 + q^a)                      exterior
 *   1 / (1 - q^b)                  polynomial
 *   (1 - q^{ch}) / (1 - q^c)       truncated at height h
 * and coefficients are extracted by exact convolution with arbitrary precision.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpell/error.hpp"

namespace fpell {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct TruncPair {
    int degree = 1;
    int height = 2;
    friend auto operator<=>(const TruncPair&, const TruncPair&) = default;
};

class PoincareSeries {
public:
    PoincareSeries() = default;

    PoincareSeries(std::vector<int> exterior, std::vector<int> polynomial, std::vector<TruncPair> truncated)
        : exterior_(std::move(exterior)), polynomial_(std::move(polynomial)), truncated_(std::move(truncated)) {
        for (int a : exterior_) check_degree(a);
        for (int b : polynomial_) check_degree(b);
        for (const auto& tp : truncated_) {
            check_degree(tp.degree);
            if (tp.height < 2) throw InvalidInput("truncation height must be at least 2");
        }
        std::sort(exterior_.begin(), exterior_.end());
        std::sort(polynomial_.begin(), polynomial_.end());
        std::sort(truncated_.begin(), truncated_.end());
    }

    static PoincareSeries unit() { return {}; }
    static PoincareSeries exterior(int a) { return PoincareSeries({a}, {}, {}); }
    static PoincareSeries polynomial(int b) { return PoincareSeries({}, {b}, {}); }
    static PoincareSeries truncated(int c, int h) {
        if (h == 1) return unit();
        return PoincareSeries({}, {}, {{c, h}});
    }

    const std::vector<int>& exterior_degrees() const { return exterior_; }
    const std::vector<int>& polynomial_degrees() const { return polynomial_; }
    const std::vector<TruncPair>& truncated_pairs() const { return truncated_; }

    bool is_finite() const { return polynomial_.empty(); }

    /// Top nonzero degree of a finite series.
    int top_degree() const {
        if (!is_finite()) throw InvalidInput("series has no top degree");
        int top = 0;
        for (int a : exterior_) top += a;
        for (const auto& tp : truncated_) top += tp.degree * (tp.height - 1);
        return top;
    }

    /// Product of two series (tensor product of graded spaces).
    friend PoincareSeries operator*(const PoincareSeries& a, const PoincareSeries& b) {
        auto cat = [](auto x, const auto& y) {
            x.insert(x.end(), y.begin(), y.end());
            return x;
        };
        return PoincareSeries(cat(a.exterior_, b.exterior_), cat(a.polynomial_, b.polynomial_),
                              cat(a.truncated_, b.truncated_));
    }

    /**
     * Canonical form insensitive to factor type: a height-2 truncation
     * contributes the same factor 1 + q^c as an exterior factor.
     */
    PoincareSeries canonical() const {
        std::vector<int> ext = exterior_;
        std::vector<TruncPair> tr;
        for (const auto& tp : truncated_) {
            if (tp.height == 2)
                ext.push_back(tp.degree);
            else
                tr.push_back(tp);
        }
        return PoincareSeries(std::move(ext), polynomial_, std::move(tr));
    }

    friend bool operator==(const PoincareSeries& a, const PoincareSeries& b) {
        const auto ca = a.canonical();
        const auto cb = b.canonical();
        return ca.exterior_ == cb.exterior_ && ca.polynomial_ == cb.polynomial_ && ca.truncated_ == cb.truncated_;
    }

    std::string to_string() const;

private:
    static void check_degree(int d) {
        if (d < 1) throw InvalidInput("series factor degrees must be positive (connectedness)");
    }

    std::vector<int> exterior_;
    std::vector<int> polynomial_;
    std::vector<TruncPair> truncated_;
};

inline std::string PoincareSeries::to_string() const {
    std::string out;
    auto sep = [&] {
        if (!out.empty()) out += " * ";
    };
    for (int a : exterior_) {
        sep();
        out += "(1+q^" + std::to_string(a) + ")";
    }
    for (int b : polynomial_) {
        sep();
        out += "1/(1-q^" + std::to_string(b) + ")";
    }
    for (const auto& tp : truncated_) {
        sep();
        out += "(1-q^" + std::to_string(tp.degree * tp.height) + ")/(1-q^" + std::to_string(tp.degree) + ")";
    }
    return out.empty() ? "1" : out;
}

/// Graded dimensions dim V_0 .. dim V_max_degree.
inline std::vector<BigInt> coefficients(const PoincareSeries& s, int max_degree) {
    if (max_degree < 0) throw InvalidInput("max_degree must be nonnegative");
    const std::size_t n = static_cast<std::size_t>(max_degree) + 1;
    std::vector<BigInt> c(n, 0);
    c[0] = 1;
    for (int a : s.exterior_degrees()) {
        for (std::size_t i = n; i-- > static_cast<std::size_t>(a);) c[i] += c[i - a];
    }
    for (int b : s.polynomial_degrees()) {
        for (std::size_t i = b; i < n; ++i) c[i] += c[i - b];
    }
    for (const auto& tp : s.truncated_pairs()) {
        const std::size_t step = tp.degree;
        const std::size_t cut = static_cast<std::size_t>(tp.degree) * tp.height;
        for (std::size_t i = step; i < n; ++i) c[i] += c[i - step];
        for (std::size_t i = n; i-- > cut;) c[i] -= c[i - cut];
    }
    return c;
}

/// Convolution of two dimension sequences truncated at max_degree.
inline std::vector<BigInt> convolve(const std::vector<BigInt>& a, const std::vector<BigInt>& b, int max_degree) {
    std::vector<BigInt> out(static_cast<std::size_t>(max_degree) + 1, 0);
    for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

enum class GrowthTag { FiniteDimension, InfiniteBounded, DoublyInfinite };

inline const char* to_string(GrowthTag t) {
    switch (t) {
        case GrowthTag::FiniteDimension: return "finite-dimension";
        case GrowthTag::InfiniteBounded: return "infinite-bounded";
        default: return "doubly-infinite";
    }
}

struct GrowthClass {
    GrowthTag tag = GrowthTag::FiniteDimension;
    /// Minimal exponent K0 in sum_{i<=n} dim V_i <= C n^K0. Every product-form series has polynomial growth.
    int k0 = 0;
    friend bool operator==(const GrowthClass&, const GrowthClass&) = default;
};

inline GrowthClass growth_class(const PoincareSeries& s) {
    const int k0 = static_cast<int>(s.polynomial_degrees().size());
    GrowthClass g;
    g.k0 = k0;
    g.tag = k0 == 0 ? GrowthTag::FiniteDimension : (k0 == 1 ? GrowthTag::InfiniteBounded : GrowthTag::DoublyInfinite);
    return g;
}

/**
 * Certificate that the partial sums S(n) = sum_{i<=n} dim V_i grow like n^K0:
 * lower * n^K0 <= S(n) <= upper * n^K0 for every 2 <= n <= N.
 */
struct ExponentWitness {
    int k0 = 0;
    int n_max = 0;
    BigRational c_lower;       ///< 1/k for the least k that works
    BigInt c_upper;            ///< least integer that works
    BigRational min_ratio;     ///< exact min over n of S(n)/n^K0
    BigRational max_ratio;     ///< exact max over n of S(n)/n^K0
    BigRational below_ratio_half;  ///< S(N/2)/(N/2)^(K0-1)
    BigRational below_ratio_full;  ///< S(N)/N^(K0-1); grows without bound, so K0-1 does not suffice
    std::vector<BigInt> partial_sums;  ///< S(0) .. S(N)
};

inline ExponentWitness partial_sums_exponent_witness(const PoincareSeries& s, int N) {
    if (N < 4) throw InvalidInput("partial sums witness needs N >= 4");
    const GrowthClass g = growth_class(s);
    if (g.k0 == 0) throw InvalidInput("finite-dimensional series has no growth exponent with a positive lower bound");

    ExponentWitness w;
    w.k0 = g.k0;
    w.n_max = N;
    const auto c = coefficients(s, N);
    w.partial_sums.resize(c.size());
    BigInt acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += c[i];
        w.partial_sums[i] = acc;
    }
    auto npow = [](int n, int k) {
        BigInt r = 1;
        for (int i = 0; i < k; ++i) r *= n;
        return r;
    };
    bool first = true;
    for (int n = 2; n <= N; ++n) {
        BigRational ratio(w.partial_sums[n], npow(n, g.k0));
        if (first || ratio < w.min_ratio) w.min_ratio = ratio;
        if (first || ratio > w.max_ratio) w.max_ratio = ratio;
        first = false;
    }
    // least k with 1/k <= min_ratio, least integer >= max_ratio
    const BigInt num = boost::multiprecision::numerator(w.min_ratio);
    const BigInt den = boost::multiprecision::denominator(w.min_ratio);
    w.c_lower = BigRational(1, (den + num - 1) / num);
    BigInt up = boost::multiprecision::numerator(w.max_ratio) / boost::multiprecision::denominator(w.max_ratio);
    if (BigRational(up) < w.max_ratio) up += 1;
    w.c_upper = up;
    w.below_ratio_half = BigRational(w.partial_sums[N / 2], npow(N / 2, g.k0 - 1));
    w.below_ratio_full = BigRational(w.partial_sums[N], npow(N, g.k0 - 1));
    return w;
}

}  // namespace fpell
