#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bottchern/bott_chern.hpp"
#include "bottchern/combinatorics.hpp"
#include "bottchern/curvature.hpp"
#include "bottchern/grassmann.hpp"

namespace bottchern {

/// ∫_{P^{r-1}} Π|a_i|^{2m_i} / |a|^{2m} · Ω^{r-1} = (r-1)!·Πm_i!/(r-1+m)!
/// with m = Σm_i and the fiber volume normalized to 1.
inline Rational fiber_monomial_integral(const std::vector<int>& exps) {
    const int r = static_cast<int>(exps.size());
    if (r < 1) throw std::invalid_argument("fiber_monomial_integral: need r >= 1");
    int m = 0;
    Rational num = factorial(r - 1);
    for (int e : exps) {
        if (e < 0) throw std::invalid_argument("fiber_monomial_integral: negative exponent");
        m += e;
        num *= factorial(e);
    }
    return num / factorial(r - 1 + m);
}

/// Base-algebra-valued rational function on the fiber P^{r-1}: a symbolic
/// power of Ω times a bihomogeneous numerator in (a, ā) over |a|^{2m}.
/// Numerator terms are keyed by the exponent pair (α, β); coefficients are
/// base-only even Grassmann elements.
class FiberRational {
public:
    using Key = std::pair<std::vector<int>, std::vector<int>>;

    explicit FiberRational(GeneratorUniverse uni) : uni_(uni) {}

    static FiberRational one(GeneratorUniverse uni) {
        FiberRational f(uni);
        f.terms_.emplace(Key{std::vector<int>(uni.r, 0), std::vector<int>(uni.r, 0)}, gr_one(uni));
        return f;
    }

    /// Empty element with prescribed Ω and denominator powers; terms are
    /// filled by add_term and must satisfy Σα = Σβ = denom.
    static FiberRational shell(GeneratorUniverse uni, int omega, int denom) {
        if (omega < 0 || denom < 0) throw std::invalid_argument("FiberRational::shell: negative power");
        FiberRational f(uni);
        f.omega_ = omega;
        f.denom_ = denom;
        return f;
    }

    /// Ω^k; the zero element for k >= r (top power on the fiber is r-1).
    static FiberRational omega_power(GeneratorUniverse uni, int k) {
        if (k < 0) throw std::invalid_argument("FiberRational::omega_power: negative power");
        if (k >= uni.r) return FiberRational(uni);
        FiberRational f = one(uni);
        f.omega_ = k;
        return f;
    }

    const GeneratorUniverse& universe() const { return uni_; }
    int omega() const { return omega_; }
    int denom_power() const { return denom_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Key& key, const GrassmannElement& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FiberRational times(const GrassmannElement& c) const {
        FiberRational out(uni_);
        out.omega_ = omega_;
        out.denom_ = denom_;
        for (const auto& [k, v] : terms_) out.add_term(k, v * c);
        if (out.terms_.empty()) out.omega_ = 0, out.denom_ = 0;
        return out;
    }
    FiberRational times(const Rational& s) const { return times(gr_scalar(uni_, GaussianRational(s))); }

    friend FiberRational operator*(const FiberRational& a, const FiberRational& b) {
        if (a.uni_ != b.uni_) throw std::invalid_argument("FiberRational: mismatched universes");
        FiberRational out(a.uni_);
        if (a.is_zero() || b.is_zero()) return out;
        int om = a.omega_ + b.omega_;
        if (om >= a.uni_.r) return out;  // Ω^k vanishes beyond the fiber dimension
        out.omega_ = om;
        out.denom_ = a.denom_ + b.denom_;
        for (const auto& [ka, va] : a.terms_)
            for (const auto& [kb, vb] : b.terms_) {
                Key k = ka;
                for (int i = 0; i < a.uni_.r; ++i) {
                    k.first[i] += kb.first[i];
                    k.second[i] += kb.second[i];
                }
                out.add_term(k, va * vb);
            }
        return out;
    }

    FiberRational pow(int k) const {
        FiberRational acc = one(uni_);
        for (int i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    /// Multiply numerator and denominator by |a|^{2k}; same fiber function.
    FiberRational raise_denominator(int k) const {
        FiberRational out = *this;
        for (int step = 0; step < k; ++step) {
            FiberRational next(uni_);
            next.omega_ = out.omega_;
            next.denom_ = out.denom_ + 1;
            for (const auto& [key, v] : out.terms_)
                for (int i = 0; i < uni_.r; ++i) {
                    Key kk = key;
                    ++kk.first[i];
                    ++kk.second[i];
                    next.add_term(kk, v);
                }
            out = std::move(next);
        }
        return out;
    }

    friend FiberRational operator+(const FiberRational& a, const FiberRational& b) {
        if (a.uni_ != b.uni_) throw std::invalid_argument("FiberRational: mismatched universes");
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.omega_ != b.omega_)
            throw std::invalid_argument("FiberRational: sum needs matching omega powers");
        int m = std::max(a.denom_, b.denom_);
        FiberRational aa = a.raise_denominator(m - a.denom_);
        FiberRational bb = b.raise_denominator(m - b.denom_);
        for (const auto& [k, v] : bb.terms_) aa.add_term(k, v);
        if (aa.terms_.empty()) {
            aa.omega_ = 0;
            aa.denom_ = 0;
        }
        return aa;
    }
    FiberRational& operator+=(const FiberRational& o) { return *this = *this + o; }

    const std::map<Key, GrassmannElement>& terms() const { return terms_; }

private:
    GeneratorUniverse uni_;
    int omega_ = 0;
    int denom_ = 0;
    std::map<Key, GrassmannElement> terms_;
};

namespace detail {

inline std::vector<GrassmannElement> matrix_power(const CurvatureMatrix& C, int p) {
    const int r = C.rank();
    const auto uni = C.universe();
    std::vector<GrassmannElement> acc(static_cast<size_t>(r) * r, GrassmannElement(uni));
    for (int j = 0; j < r; ++j) acc[static_cast<size_t>(j) * r + j] = gr_one(uni);
    for (int step = 0; step < p; ++step) {
        std::vector<GrassmannElement> next(static_cast<size_t>(r) * r, GrassmannElement(uni));
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l)
                    next[static_cast<size_t>(j) * r + k] +=
                        acc[static_cast<size_t>(j) * r + l] * C.at(l + 1, k + 1);
        acc = std::move(next);
    }
    return acc;
}

}  // namespace detail

/// Θ^b a* on the whole fiber over the center: Σ_{jk} (c^b)_{jk}·a_k·ā_j / |a|²,
/// the index order fixed so the value at a = e_1* is the (1,1) power entry.
inline FiberRational theta_fiber(int b, const CurvatureMatrix& C) {
    if (b < 0) throw std::invalid_argument("theta_fiber: negative power");
    const auto uni = C.universe();
    if (b == 0) return FiberRational::one(uni);
    auto mp = detail::matrix_power(C, b);
    const int r = C.rank();
    FiberRational out = FiberRational::shell(uni, 0, 1);
    for (int j = 1; j <= r; ++j)
        for (int k = 1; k <= r; ++k) {
            const GrassmannElement& c = mp[static_cast<size_t>(j - 1) * r + (k - 1)];
            if (c.is_zero()) continue;
            std::vector<int> alpha(r, 0), beta(r, 0);
            alpha[k - 1] = 1;
            beta[j - 1] = 1;
            out.add_term({alpha, beta}, c);
        }
    return out;
}

/// Exact fiber integration: applies the monomial functional term by term.
/// Zero unless the symbolic Ω power is exactly r-1; unbalanced monomials
/// (α ≠ β) integrate to zero for parity reasons.
inline GrassmannElement pushforward(const FiberRational& f) {
    const auto uni = f.universe();
    GrassmannElement out(uni);
    if (f.is_zero() || f.omega() != uni.r - 1) return out;
    for (const auto& [key, coeff] : f.terms()) {
        int sa = 0, sb = 0;
        for (int v : key.first) sa += v;
        for (int v : key.second) sb += v;
        if (sa != f.denom_power() || sb != f.denom_power())
            throw std::invalid_argument("pushforward: bidegree imbalance against the denominator");
        if (key.first != key.second) continue;
        out += coeff.times(fiber_monomial_integral(key.first));
    }
    return out;
}

/// Geometric Segre form s'_m = π_*(α^{r-1+m}) computed through the binomial
/// collapse: only the Ω^{r-1}(−Θ¹a*)^m term has full fiber degree.
inline GrassmannElement segre_form_integral(int m, const CurvatureMatrix& C) {
    if (m < 0) throw std::invalid_argument("segre_form_integral: negative index");
    const auto uni = C.universe();
    if (m == 0) return gr_one(uni);
    FiberRational integrand =
        FiberRational::omega_power(uni, uni.r - 1) * theta_fiber(1, C).pow(m);
    Rational coeff = binomial(uni.r - 1 + m, m);
    if (m & 1) coeff = -coeff;
    return pushforward(integrand).times(coeff);
}

/// θ_p = Trace(Θ(E,h)^{⊗p}) = (−1)^p Σ c_{i1 i2}···c_{ip i1}.
inline GrassmannElement curvature_trace(int p, const CurvatureMatrix& C) {
    if (p < 0) throw std::invalid_argument("curvature_trace: negative power");
    const auto uni = C.universe();
    if (p == 0) return gr_scalar(uni, GaussianRational(C.rank()));
    auto mp = detail::matrix_power(C, p);
    GrassmannElement tr(uni);
    for (int j = 0; j < C.rank(); ++j) tr += mp[static_cast<size_t>(j) * C.rank() + j];
    return (p & 1) ? -tr : tr;
}

namespace detail {

inline GrSeries exp_series(const GrSeries& x) {
    // requires zero constant term
    if (!x.at(0).is_zero()) throw std::invalid_argument("exp_series: nonzero constant term");
    GrSeries acc = GrSeries::one(x.universe(), x.order());
    GrSeries term = GrSeries::one(x.universe(), x.order());
    for (int k = 1; k <= x.order(); ++k) {
        term = term * x;
        GrSeries scaled(x.universe(), x.order());
        for (int d = 0; d <= x.order(); ++d)
            scaled.at(d) = term.at(d).times(GaussianRational(Rational(1) / factorial(k)));
        acc += scaled;
    }
    return acc;
}

}  // namespace detail

/// Σ t^m s'_m = Π_p exp(t^p θ_p / p) truncated at the given order.
inline GrSeries segre_series_exp(int order, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    GrSeries acc = GrSeries::one(uni, order);
    for (int p = 1; p <= order; ++p) {
        GrSeries x(uni, order);
        x.at(p) = curvature_trace(p, C).times(make_rational(1, p));
        acc = acc * detail::exp_series(x);
    }
    return acc;
}

/// Σ t^m c_m(E*,h) = Π_p exp(−t^p θ_p / p) truncated at the given order.
inline GrSeries chern_series_exp(int order, const CurvatureMatrix& C) {
    const auto uni = C.universe();
    GrSeries acc = GrSeries::one(uni, order);
    for (int p = 1; p <= order; ++p) {
        GrSeries x(uni, order);
        x.at(p) = -curvature_trace(p, C).times(make_rational(1, p));
        acc = acc * detail::exp_series(x);
    }
    return acc;
}

inline GrassmannElement segre_form_exp(int m, const CurvatureMatrix& C) {
    return segre_series_exp(m, C).at(m);
}

/// Generalized Segre form s^b_c = C(r-1+c, r-1)·π_*((−1)^b(Θ^b a*)(−Θ¹a*)^c·Ω^{r-1}).
inline GrassmannElement segre_generalized(int b, int c, const CurvatureMatrix& C) {
    if (b < 0 || c < 0) throw std::invalid_argument("segre_generalized: negative index");
    const auto uni = C.universe();
    FiberRational integrand = FiberRational::omega_power(uni, uni.r - 1) * theta_fiber(b, C) *
                              theta_fiber(1, C).pow(c);
    Rational coeff = binomial(uni.r - 1 + c, uni.r - 1);
    if ((b + c) & 1) coeff = -coeff;
    return pushforward(integrand).times(coeff);
}

/// S_{m+1} via the closed formula: −Σ_{a+b+c=m} 𝓗^{r−1+c}_{r−1−a−b}·c_a(E*)·s^b_c.
inline GrassmannElement secondary_class_formula(int m, const CurvatureMatrix& C) {
    if (m < 0) throw std::invalid_argument("secondary_class_formula: negative index");
    const auto uni = C.universe();
    const int r = C.rank();
    GrassmannElement acc(uni);
    for (int a = 0; a <= m; ++a)
        for (int b = 0; a + b <= m; ++b) {
            const int c = m - a - b;
            if (r - 1 - a - b < 1) continue;  // empty harmonic sum
            Rational hh = harmonic_ratio_sum(r - 1 - a - b, r - 1 + c);
            acc += (chern_form_dual(a, C) * segre_generalized(b, c, C)).times(hh);
        }
    return -acc;
}

/// S_{m+1} by direct fiber integration of α-powers against the top reduced
/// transgression form, using the full-fiber-degree expression for each
/// component (c̃_j)_f·Ω^{r-1-f} as the integrand.
inline GrassmannElement secondary_class_integral(int m, const CurvatureMatrix& C) {
    if (m < 0) throw std::invalid_argument("secondary_class_integral: negative index");
    const auto uni = C.universe();
    const int r = C.rank();
    GrassmannElement acc(uni);
    for (int i = 0; i <= r - 2; ++i) {
        const int f = r - 1 - i;
        for (int c = 0; c <= m; ++c) {
            const int j = r + m - i - c;
            if (j < 2 || j > r) continue;
            const int d = j - 1;
            if (d - f < 0) continue;
            // (c̃_{d+1})_f·Ω^{r-1-f} as a fiber function times Ω^{r-1}
            FiberRational inner(uni);
            for (int a2 = 0; a2 <= d - f; ++a2) {
                const int b2 = d - f - a2;
                FiberRational piece = theta_fiber(b2, C).times(chern_form_dual(a2, C));
                if (b2 & 1) piece = piece.times(Rational(-1));
                inner += piece;
            }
            Rational scalar = -harmonic(f) * binomial(r - 1 - d + f, f) / binomial(r - 1, f);
            FiberRational integrand = FiberRational::omega_power(uni, r - 1) * inner *
                                      theta_fiber(1, C).pow(c);
            Rational outer = binomial(i + c, c) * scalar;
            if (c & 1) outer = -outer;
            acc += pushforward(integrand).times(outer);
        }
    }
    return acc;
}

}  // namespace bottchern
