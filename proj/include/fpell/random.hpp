#pragma once

/**
 * @file random.hpp
 * @brief Seeded generators of Borel-form presentations for property checks.
 */

#include <random>

#include "fpell/presentation.hpp"

namespace fpell {

/// Tensor product of up to four monogenic factors obeying the graded-commutative parity rules.
inline AlgebraPresentation random_borel(std::mt19937& rng, unsigned p, int max_half_degree = 6) {
    std::uniform_int_distribution<int> cnt(0, 4), kind(0, 2), half(1, max_half_degree), h(2, 5);
    AlgebraPresentation a;
    a.p = p;
    for (int i = cnt(rng); i > 0; --i) {
        const int k = kind(rng);
        if (k == 0) a.factors.push_back(MonogenicFactor::exterior(p == 2 ? half(rng) : 2 * half(rng) - 1));
        if (k == 1) a.factors.push_back(MonogenicFactor::polynomial(p == 2 ? half(rng) : 2 * half(rng)));
        if (k == 2) a.factors.push_back(MonogenicFactor::truncated(p == 2 ? half(rng) : 2 * half(rng), h(rng)));
    }
    a.validate();
    return a;
}

/// Same shape with the Hopf flag set: truncation heights are powers of p.
inline AlgebraPresentation random_borel_hopf(std::mt19937& rng, unsigned p) {
    std::uniform_int_distribution<int> cnt(0, 4), kind(0, 2), half(1, 5), e(1, 2);
    AlgebraPresentation a;
    a.p = p;
    a.hopf = true;
    for (int i = cnt(rng); i > 0; --i) {
        const int k = kind(rng);
        if (k == 0) a.factors.push_back(MonogenicFactor::exterior(p == 2 ? half(rng) : 2 * half(rng) - 1));
        if (k == 1) a.factors.push_back(MonogenicFactor::polynomial(p == 2 ? half(rng) : 2 * half(rng)));
        if (k == 2) {
            int height = 1;
            for (int j = e(rng); j > 0; --j) height *= static_cast<int>(p);
            a.factors.push_back(MonogenicFactor::truncated(p == 2 ? half(rng) : 2 * half(rng), height));
        }
    }
    a.validate();
    return a;
}

}  // namespace fpell
