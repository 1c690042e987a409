#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bottchern/combinatorics.hpp"
#include "bottchern/curvature.hpp"
#include "bottchern/grassmann.hpp"

namespace bottchern {

namespace detail {

inline bool even_entry(const GrassmannElement& e) {
    for (const auto& [mask, c] : e.terms())
        if (std::popcount(mask) & 1) return false;
    return true;
}
inline bool even_entry(const UPoly& p) {
    for (int k = 0; k <= p.degree(); ++k)
        if (!even_entry(p.coeff(k))) return false;
    return true;
}

inline std::vector<std::vector<int>> subsets_of_size(int m, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> go = [&](int start) {
        if (static_cast<int>(cur.size()) == d) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < m; ++i) {
            cur.push_back(i);
            go(i + 1);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

inline int permutation_sign(const std::vector<int>& perm) {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

}  // namespace detail

/// det_d of a square matrix of commuting (even) entries: Σ over size-d index
/// subsets J and permutations σ of J of ε(σ)·Π M_{j,σ(j)}.  det_0 = 1.
/// Entries are nilpotent here, so products terminate early on zero.
template <typename Elem>
Elem det_minor_sum(const std::vector<Elem>& m_flat, int size, int d, const Elem& unit) {
    if (d < 0 || d > size) throw std::invalid_argument("det_minor_sum: need 0 <= d <= size");
    for (const auto& e : m_flat)
        if (!detail::even_entry(e)) throw std::invalid_argument("det_minor_sum: odd-degree entry");
    if (d == 0) return unit;
    Elem acc = unit - unit;  // zero of the right shape
    auto at = [&](int row, int col) -> const Elem& { return m_flat[static_cast<size_t>(row) * size + col]; };
    for (const auto& subset : detail::subsets_of_size(size, d)) {
        std::vector<int> perm = subset;
        std::sort(perm.begin(), perm.end());
        do {
            Elem prod = unit;
            bool dead = false;
            for (int a = 0; a < d && !dead; ++a) {
                prod = prod * at(subset[a], perm[a]);
                dead = prod.is_zero();
            }
            if (dead) continue;
            int sign = detail::permutation_sign(perm);  // relative to sorted subset
            if (sign < 0) acc -= prod;
            else acc += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return acc;
}

/// c'_d(E*) = det_d of the lower-right (r-1)x(r-1) block of (c_jk).
inline GrassmannElement chern_minor(int d, const CurvatureMatrix& C) {
    if (d < 0) throw std::invalid_argument("chern_minor: negative degree");
    const int m = C.rank() - 1;
    if (d > m) return gr_zero(C.universe());
    std::vector<GrassmannElement> block;
    block.reserve(static_cast<size_t>(m) * m);
    for (int j = 2; j <= C.rank(); ++j)
        for (int k = 2; k <= C.rank(); ++k) block.push_back(C.at(j, k));
    return det_minor_sum(block, m, d, gr_one(C.universe()));
}

/// c_m(E*,h) = det_m of the full matrix (c_jk); the pullback Chern form at the
/// center point.
inline GrassmannElement chern_form_dual(int m, const CurvatureMatrix& C) {
    if (m < 0) throw std::invalid_argument("chern_form_dual: negative degree");
    if (m > C.rank()) return gr_zero(C.universe());
    std::vector<GrassmannElement> full;
    full.reserve(static_cast<size_t>(C.rank()) * C.rank());
    for (int j = 1; j <= C.rank(); ++j)
        for (int k = 1; k <= C.rank(); ++k) full.push_back(C.at(j, k));
    return det_minor_sum(full, C.rank(), m, gr_one(C.universe()));
}

/// (Θ^q a*) at the center: the (1,1) entry of the q-th power of (c_jk), with
/// the q = 0 convention giving 1.
inline GrassmannElement curvature_power_entry(int q, const CurvatureMatrix& C) {
    return C.power_entry_11(q);
}

/// The deformation determinant Φ_{d+1}(u) = det_d(c_jk + (1-u)·z_j·zb_k) over
/// the fiber block j,k >= 2.
inline UPoly transgression_integrand(int d, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    const int m = C.rank() - 1;
    const UPoly unit = UPoly::constant(gr_one(uni));
    if (d < 0) throw std::invalid_argument("transgression_integrand: negative degree");
    if (d > m) return UPoly(uni);
    std::vector<UPoly> entries;
    entries.reserve(static_cast<size_t>(m) * m);
    for (int j = 2; j <= C.rank(); ++j)
        for (int k = 2; k <= C.rank(); ++k) {
            GrassmannElement fs = GrassmannElement::monomial(
                uni, (1u << uni.z(j)) | (1u << uni.zb(k)), GaussianRational(1));
            // c_jk + (1-u)·z_j·zb_k
            UPoly e(uni, {C.at(j, k) + fs, -fs});
            entries.push_back(std::move(e));
        }
    return det_minor_sum(entries, m, d, unit);
}

/// The transgression oracle: exact ∫₀¹ (Φ_{d+1}(u) − Φ_{d+1}(0))/u du.
/// Reference value for every closed form below.
inline GrassmannElement bott_chern_by_integration(int d, const CurvatureMatrix& C) {
    return transgress(transgression_integrand(d, C));
}

/// Ω_{p,Q}: cyclic sums over fiber indices 2..r with z·zb insertions at the
/// positions in Q (cyclic convention i_{p+1} = i_1).
inline GrassmannElement omega_cycle(int p, const std::set<int>& q_set, const CurvatureMatrix& C) {
    if (p < 1) throw std::invalid_argument("omega_cycle: need p >= 1");
    for (int q : q_set)
        if (q < 1 || q > p) throw std::invalid_argument("omega_cycle: Q must be a subset of 1..p");
    const auto uni = C.universe();
    GrassmannElement acc(uni);
    std::vector<int> tup(static_cast<size_t>(p), 2);
    const int r = C.rank();
    if (r < 2) return acc;
    while (true) {
        GrassmannElement prod = gr_one(uni);
        for (int a = 1; a <= p && !prod.is_zero(); ++a) {
            int ia = tup[a - 1];
            int inext = tup[a % p];
            if (q_set.count(a)) {
                prod = prod * GrassmannElement::monomial(
                                  uni, (1u << uni.z(ia)) | (1u << uni.zb(inext)), GaussianRational(1));
            } else {
                prod = prod * C.at(ia, inext);
            }
        }
        acc += prod;
        int pos = 0;
        while (pos < p && tup[pos] == r) {
            tup[pos] = 2;
            ++pos;
        }
        if (pos == p) break;
        ++tup[pos];
    }
    return acc;
}

/// Ω_{p,s} = (1/p)·Σ_{|Q|=s} Ω_{p,Q}.
inline GrassmannElement omega_level(int p, int s, const CurvatureMatrix& C) {
    if (s < 1 || s > p) throw std::invalid_argument("omega_level: need 1 <= s <= p");
    GrassmannElement acc(C.universe());
    for (const auto& subset : detail::subsets_of_size(p, s)) {
        std::set<int> q;
        for (int v : subset) q.insert(v + 1);
        acc += omega_cycle(p, q, C);
    }
    return acc.times(make_rational(1, p));
}

/// Ω_{b,1} = Σ c_{i1 i2}···c_{i_{b-1} i_b}·z_{i_b}·zb_{i_1} (indices 2..r).
inline GrassmannElement omega_chain(int b, const CurvatureMatrix& C) {
    if (b < 1) throw std::invalid_argument("omega_chain: need b >= 1");
    std::set<int> q{b};
    return omega_cycle(b, q, C);
}

inline GrassmannElement pow_or_zero(const GrassmannElement& e, int k) {
    if (k < 0) return gr_zero(e.universe());
    return e.pow(k);
}

inline Rational harmonic_or_zero(int s) { return s >= 0 ? harmonic(s) : Rational(0); }

/// Closed combinatorial form of the transgression: the partition sum
///   −Σ_{1≤s≤p≤d} Σ_{|B|=p, l(B)=s} H_s·(−1)^{p+s}·s!/h(B)!·c'_{d−p}·ΠΩ_{b_i,1}.
inline GrassmannElement bott_chern_closed_form(int d, const CurvatureMatrix& C) {
    if (d < 0) throw std::invalid_argument("bott_chern_closed_form: negative degree");
    const auto uni = C.universe();
    GrassmannElement acc(uni);
    std::vector<GrassmannElement> chain;
    chain.reserve(static_cast<size_t>(d) + 1);
    chain.push_back(gr_zero(uni));  // unused slot 0
    for (int b = 1; b <= d; ++b) chain.push_back(omega_chain(b, C));
    for (int p = 1; p <= d; ++p) {
        const GrassmannElement minor = chern_minor(d - p, C);
        if (minor.is_zero()) continue;
        for (const auto& part : enumerate_partitions(p, p)) {
            const int s = part.length();
            GrassmannElement term = minor;
            for (int b : part.parts) {
                term = term * chain[b];
                if (term.is_zero()) break;
            }
            if (term.is_zero()) continue;
            Rational coeff = harmonic(s) * factorial(s) / part.height_factorial();
            if ((p + s) & 1) coeff = -coeff;
            acc += term.times(coeff);
        }
    }
    return -acc;
}

namespace detail {

inline UPoly one_minus_u_pow(int s, GeneratorUniverse uni) {
    std::vector<GrassmannElement> coeffs;
    coeffs.reserve(static_cast<size_t>(s) + 1);
    for (int k = 0; k <= s; ++k) {
        Rational c = binomial(s, k);
        if (k & 1) c = -c;
        coeffs.push_back(gr_scalar(uni, GaussianRational(c)));
    }
    return UPoly(uni, std::move(coeffs));
}

/// All sequences S with 1 <= s_i <= cap_i.
inline void for_each_bounded_sequence(const std::vector<int>& caps,
                                      const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> s(caps.size(), 1);
    while (true) {
        fn(s);
        size_t pos = 0;
        while (pos < caps.size() && s[pos] == caps[pos]) {
            s[pos] = 1;
            ++pos;
        }
        if (pos == caps.size()) break;
        ++s[pos];
    }
}

}  // namespace detail

/// The integrand regrouped by compositions P >= S (fiber differentials
/// separated from base ones):
///   Φ_{d+1}(u) = c'_d + Σ_s (1−u)^s Σ_{P≥S,|S|=s,|P|≤d}
///                (−1)^{|P|+l(P)}/l(P)!·c'_{d−|P|}·ΠΩ_{p_m,s_m}.
inline UPoly integrand_composition_form(int d, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    UPoly result = UPoly::constant(chern_minor(d, C));
    for (int pw = 1; pw <= d; ++pw) {
        const GrassmannElement minor = chern_minor(d - pw, C);
        for (const auto& comp : enumerate_compositions(pw)) {
            const int lp = comp.length();
            Rational base_coeff = Rational(1) / factorial(lp);
            if ((pw + lp) & 1) base_coeff = -base_coeff;
            detail::for_each_bounded_sequence(comp.parts, [&](const std::vector<int>& s_seq) {
                if (minor.is_zero()) return;
                int s_total = 0;
                GrassmannElement term = minor;
                for (size_t m = 0; m < s_seq.size() && !term.is_zero(); ++m) {
                    s_total += s_seq[m];
                    term = term * omega_level(comp.parts[m], s_seq[m], C);
                }
                if (term.is_zero()) return;
                UPoly piece = detail::one_minus_u_pow(s_total, uni) * UPoly::constant(term.times(base_coeff));
                result += piece;
            });
        }
    }
    return result;
}

/// The integrand regrouped by partitions of single-insertion cycles:
///   Φ_{d+1}(u) = c'_d + Σ_{1≤s≤p≤d} Σ_{|B|=p,l(B)=s}
///                (1−u)^s·(−1)^{p+s}·s!/h(B)!·c'_{d−p}·ΠΩ_{b_i,1}.
inline UPoly integrand_partition_form(int d, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    UPoly result = UPoly::constant(chern_minor(d, C));
    std::vector<GrassmannElement> chain;
    chain.push_back(gr_zero(uni));
    for (int b = 1; b <= d; ++b) chain.push_back(omega_chain(b, C));
    for (int p = 1; p <= d; ++p) {
        const GrassmannElement minor = chern_minor(d - p, C);
        if (minor.is_zero()) continue;
        for (const auto& part : enumerate_partitions(p, p)) {
            const int s = part.length();
            GrassmannElement term = minor;
            for (int b : part.parts) {
                term = term * chain[b];
                if (term.is_zero()) break;
            }
            if (term.is_zero()) continue;
            Rational coeff = factorial(s) / part.height_factorial();
            if ((p + s) & 1) coeff = -coeff;
            result += detail::one_minus_u_pow(s, uni) * UPoly::constant(term.times(coeff));
        }
    }
    return result;
}

/// Ω_{p,s} − Σ_{|B|=p, l(B)=s} (−1)^{s−1}(s−1)!/h(B)!·ΠΩ_{b_i,1}; zero when the
/// partition decomposition of the weighted cycle sums holds.
inline GrassmannElement omega_level_decomposition_residual(int p, int s, const CurvatureMatrix& C) {
    GrassmannElement rhs(C.universe());
    for (const auto& part : enumerate_partitions(p, p)) {
        if (part.length() != s) continue;
        GrassmannElement term = gr_one(C.universe());
        for (int b : part.parts) {
            term = term * omega_chain(b, C);
            if (term.is_zero()) break;
        }
        Rational coeff = factorial(s - 1) / part.height_factorial();
        if ((s - 1) & 1) coeff = -coeff;
        rhs += term.times(coeff);
    }
    return omega_level(p, s, C) - rhs;
}

/// Σ_{S≤P, |P|≤d, |S|=d} (−1)^{|P|+l(P)}/l(P)!·ΠΩ_{p_i,s_i} − Ω^d.
inline GrassmannElement omega_power_identity_residual(int d, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    GrassmannElement lhs(uni);
    for (int pw = 1; pw <= d; ++pw) {
        for (const auto& comp : enumerate_compositions(pw)) {
            const int lp = comp.length();
            Rational base_coeff = Rational(1) / factorial(lp);
            if ((pw + lp) & 1) base_coeff = -base_coeff;
            detail::for_each_bounded_sequence(comp.parts, [&](const std::vector<int>& s_seq) {
                int s_total = 0;
                for (int v : s_seq) s_total += v;
                if (s_total != d) return;
                GrassmannElement term = gr_one(uni);
                for (size_t m = 0; m < s_seq.size() && !term.is_zero(); ++m)
                    term = term * omega_level(comp.parts[m], s_seq[m], C);
                lhs += term.times(base_coeff);
            });
        }
    }
    return lhs - fubini_study(uni).pow(d);
}

/// Residual of c̃_t = −H(−Ω_t)·c'_t as a truncated series (coefficientwise).
inline GrSeries generating_series_residual(int order, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    GrSeries ct(uni, order), omega_t(uni, order), cprime_t(uni, order);
    for (int dd = 0; dd <= order; ++dd) {
        ct.at(dd) = bott_chern_closed_form(dd, C);
        cprime_t.at(dd) = chern_minor(dd, C);
        if (dd >= 1) {
            GrassmannElement w = omega_chain(dd, C);
            omega_t.at(dd) = (dd & 1) ? -w : w;
        }
    }
    // H(−Ω_t) = Σ_s H_s·(−Ω_t)^s
    GrSeries h_of(uni, order);
    GrSeries neg_omega = GrSeries(uni, order) - omega_t;
    GrSeries power = GrSeries::one(uni, order);
    for (int s = 1; s <= order; ++s) {
        power = power * neg_omega;
        GrSeries scaled(uni, order);
        for (int dd = 0; dd <= order; ++dd) scaled.at(dd) = power.at(dd).times(harmonic(s));
        h_of += scaled;
    }
    return ct + h_of * cprime_t;
}

/// Residual of c'_t = Θ_t·π*c_t(E*) as a truncated series.
inline GrSeries chern_factorization_residual(int order, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    GrSeries cprime_t(uni, order), theta_t(uni, order), chern_t(uni, order);
    for (int dd = 0; dd <= order; ++dd) {
        cprime_t.at(dd) = chern_minor(dd, C);
        GrassmannElement th = curvature_power_entry(dd, C);
        theta_t.at(dd) = (dd & 1) ? -th : th;
        chern_t.at(dd) = chern_form_dual(dd, C);
    }
    return cprime_t - theta_t * chern_t;
}

/// Residual of the full-fiber-degree identity
///   (c̃_{d+1})_f·Ω^{r−1−f} = −H_f·C(r−1,f)⁻¹·C(r−1−d+f,f)·
///                            Σ_{α+β=d−f} π*c_α(E*)(−1)^β(Θ^β a*)·Ω^{r−1}.
inline GrassmannElement full_fiber_degree_residual(int d, int f, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    const int r = C.rank();
    if (f < 1 || f > r - 1) throw std::invalid_argument("full_fiber_degree_residual: need 1 <= f <= r-1");
    const GrassmannElement omega = fubini_study(uni);
    GrassmannElement lhs =
        bott_chern_by_integration(d, C).bidegree_filter(2 * (d - f), 2 * f) * omega.pow(r - 1 - f);
    GrassmannElement sum(uni);
    for (int a = 0; a <= d - f; ++a) {
        const int b = d - f - a;
        GrassmannElement piece = chern_form_dual(a, C) * curvature_power_entry(b, C);
        if (b & 1) piece = -piece;
        sum += piece;
    }
    Rational coeff = -harmonic(f) * binomial(r - 1 - d + f, f) / binomial(r - 1, f);
    GrassmannElement rhs = sum.times(coeff) * omega.pow(r - 1);
    return lhs - rhs;
}

/// Residuals of the three leading fiber-degree components of c̃_{d+1}
/// (fiber degrees 2d, 2(d−1), 2(d−2)).
inline std::vector<GrassmannElement> leading_fiber_residuals(int d, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    const GrassmannElement omega = fubini_study(uni);
    const GrassmannElement ct = bott_chern_by_integration(d, C);
    std::vector<GrassmannElement> out;

    out.push_back(ct.bidegree_filter(0, 2 * d) + pow_or_zero(omega, d).times(harmonic(d)));

    if (d >= 1) {
        GrassmannElement rhs = chern_minor(1, C) * pow_or_zero(omega, d - 1);
        if (d >= 2)
            rhs -= (omega_chain(2, C) * pow_or_zero(omega, d - 2)).times(Rational(d - 1));
        out.push_back(ct.bidegree_filter(2, 2 * (d - 1)) + rhs.times(harmonic(d - 1)));
    }

    if (d >= 2) {
        GrassmannElement rhs = chern_minor(2, C) * pow_or_zero(omega, d - 2);
        if (d >= 3) {
            rhs -= (chern_minor(1, C) * omega_chain(2, C) * pow_or_zero(omega, d - 3)).times(Rational(d - 2));
            rhs += (omega_chain(3, C) * pow_or_zero(omega, d - 3)).times(Rational(d - 2));
        }
        if (d >= 4)
            rhs += (omega_chain(2, C).pow(2) * pow_or_zero(omega, d - 4))
                       .times(make_rational((d - 2) * (d - 3), 2));
        out.push_back(ct.bidegree_filter(4, 2 * (d - 2)) + rhs.times(harmonic(d - 2)));
    }
    return out;
}

/// Curve/surface reductions.  On a curve (n = 1) the transgression equals
///   F = −[H_d α^d + H_{d−1} π*c_1(E*) α^{d−1}] − [α^{d−1}](Θ¹a*)
/// plus the explicitly d'/d''-exact part E, reconstructed in-algebra via the
/// relations J₁ = Ω_{2,1} − Θ²a* − αΘ¹a* and J₂ = Ω_{3,1} − Θ³a* − αΘ²a*.
/// Returned: {T − F − E, E}; the first entry must vanish, the second is the
/// reported residual of degree-wise exact terms.
struct ReducedFormCheck {
    GrassmannElement mismatch;   // must be zero
    GrassmannElement discarded;  // the d'/d''-exact part dropped by the display
};

inline ReducedFormCheck curve_form_check(int d, const CurvatureMatrix& C) {
    if (C.universe().n != 1) throw std::invalid_argument("curve_form_check: base must be a curve (n = 1)");
    if (d < 1) throw std::invalid_argument("curve_form_check: need d >= 1");
    const auto uni = C.universe();
    const GrassmannElement omega = fubini_study(uni);
    const GrassmannElement theta1 = curvature_power_entry(1, C);
    const GrassmannElement alpha = omega - C.at(1, 1);
    const GrassmannElement c1 = chern_form_dual(1, C);
    const GrassmannElement j1 = omega_chain(2, C) - curvature_power_entry(2, C) - alpha * theta1;

    GrassmannElement f = pow_or_zero(alpha, d).times(harmonic(d));
    f += (c1 * pow_or_zero(alpha, d - 1)).times(harmonic(d - 1));
    f += pow_or_zero(alpha, d - 1) * theta1;
    f = -f;

    GrassmannElement e = (j1 * pow_or_zero(alpha, d - 2)).times(harmonic(d - 1) * Rational(d - 1));

    ReducedFormCheck out{bott_chern_by_integration(d, C) - f - e, e};
    return out;
}

inline ReducedFormCheck surface_form_check(int d, const CurvatureMatrix& C) {
    if (C.universe().n != 2)
        throw std::invalid_argument("surface_form_check: base must be a surface (n = 2)");
    if (d < 1) throw std::invalid_argument("surface_form_check: need d >= 1");
    const auto uni = C.universe();
    const GrassmannElement omega = fubini_study(uni);
    const GrassmannElement theta1 = curvature_power_entry(1, C);
    const GrassmannElement theta2 = curvature_power_entry(2, C);
    const GrassmannElement alpha = omega - C.at(1, 1);
    const GrassmannElement c1 = chern_form_dual(1, C);
    const GrassmannElement c2 = chern_form_dual(2, C);
    const GrassmannElement j1 = omega_chain(2, C) - theta2 - alpha * theta1;
    const GrassmannElement j2 =
        omega_chain(3, C) - curvature_power_entry(3, C) - alpha * theta2;

    GrassmannElement closed = pow_or_zero(alpha, d).times(harmonic(d));
    closed += (c1 * pow_or_zero(alpha, d - 1)).times(harmonic(d - 1));
    closed += (c2 * pow_or_zero(alpha, d - 2)).times(harmonic_or_zero(d - 2));

    GrassmannElement theta_bracket = pow_or_zero(alpha, d - 1) + c1 * pow_or_zero(alpha, d - 2);
    theta_bracket -= (j1 * pow_or_zero(alpha, d - 3)).times(Rational(d - 2));

    GrassmannElement f = -closed - theta_bracket * theta1;
    f -= pow_or_zero(alpha, d - 2) * (theta1.pow(2).times(make_rational(1, 2)) - theta2);

    GrassmannElement e = (j1 * pow_or_zero(alpha, d - 2)).times(harmonic(d - 1) * Rational(d - 1));
    e += ((j1 * theta1 + c1 * j1 - j2) * pow_or_zero(alpha, d - 3))
             .times(harmonic_or_zero(d - 2) * Rational(d - 2));

    ReducedFormCheck out{bott_chern_by_integration(d, C) - f - e, e};
    return out;
}

}  // namespace bottchern
