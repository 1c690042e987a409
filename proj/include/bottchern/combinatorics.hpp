#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bottchern/rational.hpp"

namespace bottchern {

/// Finite sequence of positive integers; length l(B) and weight |B|.
struct Composition {
    std::vector<int> parts;

    int length() const { return static_cast<int>(parts.size()); }
    int weight() const {
        int w = 0;
        for (int p : parts) w += p;
        return w;
    }
};

/// Non-decreasing composition.  The height is the sequence of run lengths of
/// equal parts; h(B)! = Π h_i!.
struct Partition {
    std::vector<int> parts;  // non-decreasing

    int length() const { return static_cast<int>(parts.size()); }
    int weight() const {
        int w = 0;
        for (int p : parts) w += p;
        return w;
    }

    std::vector<int> heights() const {
        std::vector<int> h;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i > 0 && parts[i] == parts[i - 1]) ++h.back();
            else h.push_back(1);
        }
        return h;
    }

    Rational height_factorial() const {
        mpz_class f = 1;
        for (int h : heights()) {
            mpz_class g;
            mpz_fac_ui(g.get_mpz_t(), static_cast<unsigned long>(h));
            f *= g;
        }
        return Rational(f);
    }
};

/// All 2^{weight-1} compositions of the weight, each exactly once.
inline std::vector<Composition> enumerate_compositions(int weight) {
    if (weight < 1) throw std::invalid_argument("enumerate_compositions: weight must be >= 1");
    std::vector<Composition> out;
    // cut points between the `weight` unit cells
    for (unsigned long cuts = 0; cuts < (1ul << (weight - 1)); ++cuts) {
        Composition c;
        int run = 1;
        for (int i = 0; i < weight - 1; ++i) {
            if (cuts & (1ul << i)) {
                c.parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        c.parts.push_back(run);
        out.push_back(std::move(c));
    }
    return out;
}

/// All partitions of the weight with parts <= max_part.
inline std::vector<Partition> enumerate_partitions(int weight, int max_part) {
    if (weight < 1) throw std::invalid_argument("enumerate_partitions: weight must be >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int min_part) -> void {
        if (remaining == 0) {
            out.push_back(Partition{cur});
            return;
        }
        for (int p = min_part; p <= std::min(remaining, max_part); ++p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, weight, 1);
    return out;
}

inline Rational factorial(int k) {
    if (k < 0) throw std::invalid_argument("factorial: negative argument");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(f);
}

/// Binomial with the subset-count convention: 0 whenever n < 0, k < 0 or k > n.
inline Rational binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

/// Memoized exact harmonic numbers H_s = Σ_{i<=s} 1/i and the binomial-
/// weighted sums 𝓗^b_a = Σ_{i=1..a} H_i·C(a,i)/C(b,i).
class HarmonicTable {
public:
    static constexpr int kMax = 64;

    HarmonicTable() {
        h_.resize(kMax + 1);
        h_[0] = 0;
        for (int s = 1; s <= kMax; ++s) h_[s] = h_[s - 1] + make_rational(1, s);
    }

    const Rational& h(int s) const {
        if (s < 0 || s > kMax) throw std::out_of_range("HarmonicTable: index out of range");
        return h_[s];
    }

    // 𝓗^b_a, 0 <= a <= b <= kMax; empty sum for a = 0
    Rational curly(int a, int b) const {
        if (a < 0 || a > b) throw std::invalid_argument("HarmonicTable::curly: need 0 <= a <= b");
        if (b > kMax) throw std::out_of_range("HarmonicTable::curly: index out of range");
        Rational acc(0);
        for (int i = 1; i <= a; ++i) acc += h_[i] * binomial(a, i) / binomial(b, i);
        return acc;
    }

private:
    std::vector<Rational> h_;
};

inline const HarmonicTable& harmonic_table() {
    static const HarmonicTable table;
    return table;
}

inline const Rational& harmonic(int s) { return harmonic_table().h(s); }
inline Rational harmonic_ratio_sum(int a, int b) { return harmonic_table().curly(a, b); }

}  // namespace bottchern
