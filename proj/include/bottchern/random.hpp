#pragma once

#include <cstdint>
#include <random>

#include "bottchern/curvature.hpp"
#include "bottchern/grassmann.hpp"
#include "bottchern/rational.hpp"

namespace bottchern {

/// Deterministic random source.  mt19937_64 has a fixed cross-platform
/// sequence; ranges are derived from raw draws only (no
/// std::uniform_int_distribution, whose output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    long uniform(long lo, long hi) {  // inclusive bounds
        if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    bool coin() { return (next() & 1u) != 0; }

private:
    std::mt19937_64 gen_;
};

/// Numerators in [−bound, bound], denominators in [1, bound].
inline Rational random_rational(Rng& rng, long bound) {
    return make_rational(rng.uniform(-bound, bound), rng.uniform(1, bound));
}

inline GaussianRational random_gaussian_rational(Rng& rng, long bound) {
    return GaussianRational(random_rational(rng, bound), random_rational(rng, bound));
}

inline CurvatureData random_curvature_data(Rng& rng, int r, int n, long bound, bool hermitian) {
    CurvatureData data(r, n);
    for (int lam = 1; lam <= n; ++lam)
        for (int mu = 1; mu <= n; ++mu)
            for (int j = 1; j <= r; ++j)
                for (int k = 1; k <= r; ++k) data.at(lam, mu, j, k) = random_gaussian_rational(rng, bound);
    return hermitian ? data.hermitized() : data;
}

/// Sparse random element: a handful of random monomials with small exact
/// coefficients.
inline GrassmannElement random_element(Rng& rng, GeneratorUniverse uni, int max_terms, long bound) {
    GrassmannElement e(uni);
    const int total = uni.total();
    const std::uint32_t full = (total >= 32) ? ~0u : ((1u << total) - 1u);
    for (int t = 0; t < max_terms; ++t)
        e.add_term(static_cast<std::uint32_t>(rng.next()) & full, random_gaussian_rational(rng, bound));
    return e;
}

/// Random element all of whose monomials have the given generator count.
inline GrassmannElement random_homogeneous_element(Rng& rng, GeneratorUniverse uni, int degree,
                                                   int max_terms, long bound) {
    GrassmannElement e(uni);
    const int total = uni.total();
    if (degree > total) return e;
    for (int t = 0; t < max_terms; ++t) {
        std::uint32_t mask = 0;
        int placed = 0;
        while (placed < degree) {
            int slot = static_cast<int>(rng.next() % static_cast<std::uint64_t>(total));
            if (mask & (1u << slot)) continue;
            mask |= (1u << slot);
            ++placed;
        }
        e.add_term(mask, random_gaussian_rational(rng, bound));
    }
    return e;
}

}  // namespace bottchern
