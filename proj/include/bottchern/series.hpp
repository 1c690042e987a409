#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bottchern/combinatorics.hpp"
#include "bottchern/rational.hpp"

namespace bottchern {

/// Truncated graded polynomial over Q in the abstract Segre generators
/// s'_1, s'_2, ..., with deg s'_m = m.  The grading doubles as the t-weight:
/// the homogeneous degree-m part is the coefficient of t^m.
class ClassSeries {
public:
    using Exp = std::vector<std::uint8_t>;  // exponent of s'_{i+1} at slot i

    explicit ClassSeries(int trunc) : trunc_(trunc) {
        if (trunc < 0) throw std::invalid_argument("ClassSeries: negative truncation");
    }

    static ClassSeries constant(int trunc, Rational c) {
        ClassSeries s(trunc);
        s.add_term(Exp(static_cast<size_t>(trunc), 0), std::move(c));
        return s;
    }
    static ClassSeries one(int trunc) { return constant(trunc, Rational(1)); }

    /// The generator s'_m (degree m), 1 <= m <= trunc.
    static ClassSeries segre_generator(int trunc, int m) {
        if (m < 1 || m > trunc) throw std::out_of_range("ClassSeries::segre_generator");
        ClassSeries s(trunc);
        Exp e(static_cast<size_t>(trunc), 0);
        e[m - 1] = 1;
        s.add_term(std::move(e), Rational(1));
        return s;
    }

    int trunc() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exp, Rational>& terms() const { return terms_; }

    static int degree_of(const Exp& e) {
        int d = 0;
        for (size_t i = 0; i < e.size(); ++i) d += static_cast<int>(e[i]) * static_cast<int>(i + 1);
        return d;
    }

    void add_term(Exp e, const Rational& c) {
        if (c == 0 || degree_of(e) > trunc_) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ClassSeries& operator+=(const ClassSeries& o) {
        require_compat(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    friend ClassSeries operator+(ClassSeries a, const ClassSeries& b) { return a += b; }
    ClassSeries operator-() const {
        ClassSeries s(trunc_);
        for (const auto& [e, c] : terms_) s.terms_.emplace(e, -c);
        return s;
    }
    ClassSeries& operator-=(const ClassSeries& o) { return *this += -o; }
    friend ClassSeries operator-(ClassSeries a, const ClassSeries& b) { return a -= b; }

    friend ClassSeries operator*(const ClassSeries& a, const ClassSeries& b) {
        a.require_compat(b);
        ClassSeries out(a.trunc_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e = ea;
                int deg = 0;
                for (size_t i = 0; i < e.size(); ++i) {
                    e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
                    deg += static_cast<int>(e[i]) * static_cast<int>(i + 1);
                }
                if (deg > a.trunc_) continue;
                out.add_term(std::move(e), ca * cb);
            }
        return out;
    }

    ClassSeries times(const Rational& s) const {
        ClassSeries out(trunc_);
        if (s == 0) return out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
        return out;
    }

    Rational constant_term() const {
        auto it = terms_.find(Exp(static_cast<size_t>(trunc_), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    ClassSeries homogeneous_part(int m) const {
        ClassSeries out(trunc_);
        for (const auto& [e, c] : terms_)
            if (degree_of(e) == m) out.terms_.emplace(e, c);
        return out;
    }

    /// Multiplicative inverse; requires constant term 1.
    ClassSeries inverse() const {
        if (constant_term() != 1)
            throw std::invalid_argument("ClassSeries::inverse: constant term must be 1");
        ClassSeries g = *this - one(trunc_);
        ClassSeries acc = one(trunc_);
        ClassSeries pw = one(trunc_);
        for (int k = 1; k <= trunc_; ++k) {
            pw = pw * g;
            if (pw.is_zero()) break;
            acc += (k & 1) ? -pw : pw;
        }
        return acc;
    }

    /// exp; requires constant term 0.
    ClassSeries exp() const {
        if (constant_term() != 0)
            throw std::invalid_argument("ClassSeries::exp: constant term must be 0");
        ClassSeries acc = one(trunc_);
        ClassSeries pw = one(trunc_);
        for (int k = 1; k <= trunc_; ++k) {
            pw = pw * *this;
            if (pw.is_zero()) break;
            acc += pw.times(Rational(1) / factorial(k));
        }
        return acc;
    }

    /// log; requires constant term 1.
    ClassSeries log() const {
        if (constant_term() != 1)
            throw std::invalid_argument("ClassSeries::log: constant term must be 1");
        ClassSeries g = *this - one(trunc_);
        ClassSeries acc(trunc_);
        ClassSeries pw = one(trunc_);
        for (int k = 1; k <= trunc_; ++k) {
            pw = pw * g;
            if (pw.is_zero()) break;
            ClassSeries term = pw.times(make_rational(1, k));
            acc += (k & 1) ? term : -term;
        }
        return acc;
    }

    /// Coefficient of a single monomial given by exponents over s'_1..s'_trunc.
    Rational coefficient(const std::vector<int>& exps) const {
        Exp e(static_cast<size_t>(trunc_), 0);
        for (size_t i = 0; i < exps.size() && i < e.size(); ++i)
            e[i] = static_cast<std::uint8_t>(exps[i]);
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Substitute numeric values for the generators, graded by total degree:
    /// returns v with v[m] = Σ over degree-m monomials of coeff·Πvalues^e.
    std::vector<Rational> evaluate_graded(const std::vector<Rational>& values) const {
        if (static_cast<int>(values.size()) < trunc_)
            throw std::invalid_argument("ClassSeries::evaluate_graded: need a value per generator");
        std::vector<Rational> out(static_cast<size_t>(trunc_) + 1, Rational(0));
        for (const auto& [e, c] : terms_) {
            Rational v = c;
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) v *= values[i];
            out[static_cast<size_t>(degree_of(e))] += v;
        }
        return out;
    }

    friend bool operator==(const ClassSeries& a, const ClassSeries& b) {
        return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const ClassSeries& a, const ClassSeries& b) { return !(a == b); }

    /// Deterministic rendering, e.g. "-3/2*s1 + 1/3*s1^3".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += c.get_str();
            for (size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                out += "*s" + std::to_string(i + 1);
                if (e[i] > 1) out += "^" + std::to_string(static_cast<int>(e[i]));
            }
        }
        return out;
    }

private:
    void require_compat(const ClassSeries& o) const {
        if (trunc_ != o.trunc_) throw std::invalid_argument("ClassSeries: mismatched truncations");
    }

    int trunc_;
    std::map<Exp, Rational> terms_;
};

/// 1 + Σ_{m>=1} s'_m t^m as an abstract series.
inline ClassSeries abstract_segre_series(int trunc) {
    ClassSeries s = ClassSeries::one(trunc);
    for (int m = 1; m <= trunc; ++m) s += ClassSeries::segre_generator(trunc, m);
    return s;
}

/// θ_q as a universal polynomial in the Segre generators: the Newton-type
/// relation Σ t^m s'_m = Π exp(t^p θ_p/p) gives θ_q = q·[deg q] log s'_t.
/// θ_0 = r (the trace of the identity).
inline ClassSeries universal_theta(int q, int r, int trunc) {
    if (q == 0) return ClassSeries::constant(trunc, Rational(r));
    return abstract_segre_series(trunc).log().homogeneous_part(q).times(Rational(q));
}

/// s^b_c as a universal polynomial in the Segre generators, from
/// Σ_c t^{b+c}(r+c)·s^b_c = s'_t·Σ_{q>=b} t^q θ_q.
inline ClassSeries universal_segre_generalized(int b, int c, int r, int trunc) {
    if (b < 0 || c < 0) throw std::invalid_argument("universal_segre_generalized: negative index");
    ClassSeries theta_tail(trunc);
    for (int q = b; q <= trunc; ++q) theta_tail += universal_theta(q, r, trunc);
    ClassSeries rhs = abstract_segre_series(trunc) * theta_tail;
    return rhs.homogeneous_part(b + c).times(Rational(1) / Rational(r + c));
}

/// S_t = Σ_m t^m S_{m+1} as a universal polynomial in the Segre generators of
/// rank r: S_{m+1} = −Σ_{a+b+c=m} 𝓗^{r−1+c}_{r−1−a−b}·c_a(E*)·s^b_c with
/// c_t(E*) = (s'_t)^{-1}.
inline ClassSeries universal_secondary_s(int r, int trunc) {
    if (r < 2) throw std::invalid_argument("universal_secondary_s: need rank >= 2");
    ClassSeries chern_dual_series = abstract_segre_series(trunc).inverse();
    ClassSeries acc(trunc);
    for (int m = 0; m <= trunc; ++m)
        for (int a = 0; a <= m; ++a)
            for (int b = 0; a + b <= m; ++b) {
                const int c = m - a - b;
                if (r - 1 - a - b < 1) continue;
                Rational hh = harmonic_ratio_sum(r - 1 - a - b, r - 1 + c);
                ClassSeries piece = chern_dual_series.homogeneous_part(a) *
                                    universal_segre_generalized(b, c, r, trunc);
                acc += piece.times(hh);
            }
    return -acc;
}

/// R_t = s'_t·S_t, truncated.
inline ClassSeries universal_secondary_r(int r, int trunc) {
    return abstract_segre_series(trunc) * universal_secondary_s(r, trunc);
}

/// Coordinates of −½·(degree-3 part of R_t for rank 3) in the degree-3 Schur
/// basis (s'_3, s'_1s'_2 − s'_3, s'_1³ − 2s'_1s'_2 + s'_3).
struct SchurExpansion {
    Rational c1, c2, c3;
};

inline SchurExpansion fl_schur_expansion() {
    ClassSeries r4 = universal_secondary_r(3, 3).homogeneous_part(3);
    ClassSeries target = r4.times(make_rational(-1, 2));
    // target = x1·s3 + x2·(s1 s2 − s3) + x3·(s1³ − 2 s1 s2 + s3); triangular solve
    Rational a_s3 = target.coefficient({0, 0, 1});
    Rational a_s1s2 = target.coefficient({1, 1, 0});
    Rational a_s1c = target.coefficient({3, 0, 0});
    SchurExpansion out;
    out.c3 = a_s1c;
    out.c2 = a_s1s2 + out.c3 * 2;
    out.c1 = a_s3 + out.c2 - out.c3;
    return out;
}

inline Rational fl_schur_coefficient() { return fl_schur_expansion().c3; }

/// Split bundle O(a_1) ⊕ ... ⊕ O(a_r) over P^n.
struct SplitBundleSpec {
    std::vector<long> twists;
    int base_dim = 0;

    int rank() const { return static_cast<int>(twists.size()); }
};

/// Coefficients ρ_m with s'_m = ρ_m·h^m in Q[h]/(h^{n+1}): the inverse of
/// c_t(E*) = Π_i (1 − a_i·h·t), both graded by the joint (t,h) weight.
inline std::vector<Rational> split_segre_coefficients(const SplitBundleSpec& spec) {
    const int n = spec.base_dim;
    if (n < 0 || spec.rank() < 1)
        throw std::invalid_argument("split_segre_coefficients: need r >= 1 and n >= 0");
    // univariate truncated arithmetic in the joint weight
    std::vector<Rational> chern(static_cast<size_t>(n) + 1, Rational(0));
    chern[0] = 1;
    for (long a : spec.twists) {
        std::vector<Rational> next(chern.size(), Rational(0));
        for (size_t i = 0; i < chern.size(); ++i) {
            next[i] += chern[i];
            if (i + 1 < chern.size()) next[i + 1] -= chern[i] * Rational(a);
        }
        chern = std::move(next);
    }
    // invert: s·c = 1
    std::vector<Rational> segre(chern.size(), Rational(0));
    segre[0] = 1;
    for (size_t m = 1; m < chern.size(); ++m) {
        Rational acc(0);
        for (size_t k = 1; k <= m; ++k) acc += chern[k] * segre[m - k];
        segre[m] = -acc;
    }
    return segre;
}

/// ∫_{P(E)} c_1(O_E(1))^{n+r-1} = ∫_{P^n} s'_n(E) (the coefficient of h^n,
/// the fundamental class of P^n integrating to 1).
inline Rational analytic_height(const SplitBundleSpec& spec) {
    return split_segre_coefficients(spec)[static_cast<size_t>(spec.base_dim)];
}

/// −½ ∫_{P^n} R_{n+1}(E,h) for the split bundle: the universal R evaluated at
/// the split Segre coefficients, degree-n part, times −1/2.
inline Rational height_secondary_term(const SplitBundleSpec& spec) {
    if (spec.rank() < 2) throw std::invalid_argument("height_secondary_term: need rank >= 2");
    const int n = spec.base_dim;
    ClassSeries r_series = universal_secondary_r(spec.rank(), n);
    std::vector<Rational> rho = split_segre_coefficients(spec);
    std::vector<Rational> values;
    for (int m = 1; m <= n; ++m) values.push_back(rho[static_cast<size_t>(m)]);
    std::vector<Rational> graded = r_series.evaluate_graded(values);
    return graded[static_cast<size_t>(n)] * make_rational(-1, 2);
}

}  // namespace bottchern
