#pragma once

/**
 * @file resolution.hpp
 * @brief Minimal free resolution of F over a connected algebra, and Ext_A(F, A) from it.
 *
 * A slow, direct computation used to cross-check the closed forms in
 * homalg.hpp. The resolution is built degree by degree through an internal
 * degree bound D: at each degree the kernel of the previous map is compared
 * with the image generated so far and new free generators cover the gap.
 * Hom_A(P_s, A) in internal degree t sends a generator e of degree |e| to
 * A_{|e| - t}, so t = deg(generator) - deg(image).
 */

#include <map>
#include <vector>

#include "fpell/field.hpp"
#include "fpell/homalg.hpp"
#include "fpell/quotient.hpp"

namespace fpell {

class MinimalResolution {
public:
    /// Resolves F over A through internal degree A.cutoff() and homological degree max_s.
    MinimalResolution(const QuotientAlgebra& A, int max_s) : A_(A), D_(A.cutoff()) {
        const PrimeField& F = A_.field();
        stages_.push_back({{0}, {SparseVector{}}});  // P_0 = A e_0, boundary is the augmentation
        for (int s = 1; s <= max_s; ++s) {
            Stage next;
            for (int d = 1; d <= D_; ++d) {
                // cycles of P_{s-1} in degree d
                std::vector<SparseVector> cycles;
                if (s == 1) {
                    for (std::size_t i = 0; i < module_dim(s - 1, d); ++i) cycles.push_back(SparseVector{{i, 1}});
                } else {
                    std::vector<SparseVector> images;
                    for (std::size_t i = 0; i < module_dim(s - 1, d); ++i)
                        images.push_back(apply_boundary(s - 1, d, SparseVector{{i, 1}}));
                    cycles = kernel(F, images);
                }
                // boundaries already generated by P_s in degree d
                stages_.push_back(next);
                Echelon span(F);
                for (std::size_t i = 0; i < module_dim(s, d); ++i) span.insert(apply_boundary(s, d, SparseVector{{i, 1}}));
                stages_.pop_back();
                for (const auto& z : cycles) {
                    if (span.insert(z) == Echelon::npos) continue;
                    next.degrees.push_back(d);
                    next.boundary.push_back(z);
                }
            }
            stages_.push_back(std::move(next));
        }
    }

    int max_stage() const { return static_cast<int>(stages_.size()) - 1; }
    const std::vector<int>& generator_degrees(int s) const { return stages_.at(s).degrees; }

    /// dim Ext^{s,t}_A(F, A), counting generators and images of degree at most D.
    std::size_t ext_dim(int s, long t) const {
        if (s < 0 || s >= max_stage()) throw InvalidInput("homological degree outside the computed resolution");
        const std::size_t z = cocycle_dim(s, t);
        const std::size_t b = s == 0 ? 0 : coboundary_rank(s - 1, t);
        return z - b;
    }

    /// Ext table restricted to s < max_stage and |t| <= window.
    ExtTable ext_window(long window) const {
        ExtTable out;
        for (int s = 0; s < max_stage(); ++s)
            for (long t = -window; t <= window; ++t) {
                const std::size_t d = ext_dim(s, t);
                if (d) out.entries[{s, t}] = d;
            }
        return out;
    }

private:
    struct Stage {
        std::vector<int> degrees;
        std::vector<SparseVector> boundary;  ///< boundary of generator i in P_{s-1}, degree degrees[i]
    };

    std::size_t module_dim(int s, int d) const {
        std::size_t n = 0;
        for (int e : stages_[s].degrees)
            if (d >= e) n += A_.dim(d - e);
        return n;
    }

    /// Coordinates in P_s at degree d: blocks per generator, each the basis of A_{d - |e|}.
    std::vector<std::pair<std::size_t, std::size_t>> blocks(int s, int d) const {
        std::vector<std::pair<std::size_t, std::size_t>> out;  // (offset, size) per generator
        std::size_t off = 0;
        for (int e : stages_[s].degrees) {
            const std::size_t n = d >= e ? A_.dim(d - e) : 0;
            out.emplace_back(off, n);
            off += n;
        }
        return out;
    }

    /// Boundary P_s -> P_{s-1} on a degree-d element.
    SparseVector apply_boundary(int s, int d, const SparseVector& v) const {
        const auto& st = stages_[s];
        const auto src = blocks(s, d);
        const auto dst = blocks(s - 1, d);
        SparseVector out;
        const PrimeField& F = A_.field();
        for (std::size_t g = 0; g < st.degrees.size(); ++g) {
            const int e = st.degrees[g];
            const auto [off, n] = src[g];
            const auto tgt = blocks(s - 1, e);
            for (const auto& [idx, c] : v) {
                if (idx < off || idx >= off + n) continue;
                const SparseVector a{{idx - off, 1}};
                // a * boundary(e_g): multiply each block coefficient by a
                for (std::size_t h = 0; h < tgt.size(); ++h) {
                    const auto [toff, tn] = tgt[h];
                    SparseVector part;
                    for (const auto& [j, cj] : st.boundary[g])
                        if (j >= toff && j < toff + tn) part.emplace_back(j - toff, cj);
                    if (part.empty()) continue;
                    const int eh = stages_[s - 1].degrees[h];
                    SparseVector prod = A_.multiply(d - e, a, e - eh, part);
                    out = F.axpy(out, c, shifted(prod, dst[h].first));
                }
            }
        }
        return out;
    }

    /// Cochains Hom_t(P_s, A): one block A_{|e| - t} per generator with 0 <= |e| - t <= D.
    std::vector<std::pair<std::size_t, std::size_t>> cochain_blocks(int s, long t) const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        std::size_t off = 0;
        for (int e : stages_[s].degrees) {
            const long j = e - t;
            const std::size_t n = (j >= 0 && j <= D_) ? A_.dim(static_cast<int>(j)) : 0;
            out.emplace_back(off, n);
            off += n;
        }
        return out;
    }

    /// Matrix of the coboundary Hom_t(P_s, A) -> Hom_t(P_{s+1}, A), one image per cochain basis vector.
    std::vector<SparseVector> coboundary(int s, long t) const {
        const PrimeField& F = A_.field();
        const auto src = cochain_blocks(s, t);
        const auto dst = cochain_blocks(s + 1, t);
        std::vector<SparseVector> images;
        for (std::size_t g = 0; g < src.size(); ++g) {
            const int eg = stages_[s].degrees[g];
            for (std::size_t k = 0; k < src[g].second; ++k) {
                // f sends e_g to basis element k of A_{eg - t} and the other generators to 0
                SparseVector img;
                const SparseVector fk{{k, 1}};
                for (std::size_t h = 0; h < dst.size(); ++h) {
                    if (dst[h].second == 0) continue;
                    const int eh = stages_[s + 1].degrees[h];
                    const auto blk = blocks(s, eh);
                    SparseVector coeff;  // component of boundary(e_h) along e_g, in A_{eh - eg}
                    for (const auto& [j, c] : stages_[s + 1].boundary[h])
                        if (j >= blk[g].first && j < blk[g].first + blk[g].second) coeff.emplace_back(j - blk[g].first, c);
                    if (coeff.empty()) continue;
                    // f(b e_g) = (-1)^{|f||b|} b f(e_g)
                    SparseVector val = A_.multiply(eh - eg, coeff, static_cast<int>(eg - t), fk);
                    const bool odd = (t % 2 != 0) && ((eh - eg) % 2 != 0);
                    if (odd) val = F.scale(val, F.neg(1));
                    img = F.axpy(img, 1, shifted(val, dst[h].first));
                }
                images.push_back(std::move(img));
            }
        }
        return images;
    }

    std::size_t cocycle_dim(int s, long t) const { return kernel(A_.field(), coboundary(s, t)).size(); }
    std::size_t coboundary_rank(int s, long t) const { return rank_of(A_.field(), coboundary(s, t)); }

    const QuotientAlgebra& A_;
    int D_;
    std::vector<Stage> stages_;
};

}  // namespace fpell
