#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bottchern/rational.hpp"

namespace bottchern {

/// Index layout for the odd generators modelling pointwise forms on a
/// projective bundle: base generators x_1..x_n, xb_1..xb_n (the normalized
/// dx_λ, dx̄_μ) followed by fiber generators z_2..z_r, zb_2..zb_r (the
/// normalized dz_j, dz̄_k).  The pair x_λ·xb_μ stands for (i/2π)dx_λ∧dx̄_μ.
struct GeneratorUniverse {
    int n = 0;  // base dimension (count of coordinate pairs)
    int r = 1;  // bundle rank; fiber indices run 2..r

    int base_count() const { return 2 * n; }
    int fiber_count() const { return 2 * (r - 1); }
    int total() const { return base_count() + fiber_count(); }

    // generator slots, canonical order x < xb < z < zb
    int x(int lam) const { return check(lam >= 1 && lam <= n), lam - 1; }
    int xb(int mu) const { return check(mu >= 1 && mu <= n), n + mu - 1; }
    int z(int j) const { return check(j >= 2 && j <= r), 2 * n + j - 2; }
    int zb(int k) const { return check(k >= 2 && k <= r), 2 * n + (r - 1) + k - 2; }

    std::uint32_t base_mask() const { return (base_count() >= 32) ? ~0u : ((1u << base_count()) - 1u); }
    std::uint32_t fiber_mask() const { return ((1u << total()) - 1u) & ~base_mask(); }

    // partner slot under conjugation (x_λ <-> xb_λ, z_j <-> zb_j)
    int bar_slot(int slot) const {
        if (slot < n) return slot + n;
        if (slot < 2 * n) return slot - n;
        if (slot < 2 * n + (r - 1)) return slot + (r - 1);
        return slot - (r - 1);
    }

    std::string slot_name(int slot) const {
        std::ostringstream os;
        if (slot < n) os << 'x' << (slot + 1);
        else if (slot < 2 * n) os << "xb" << (slot - n + 1);
        else if (slot < 2 * n + (r - 1)) os << 'z' << (slot - 2 * n + 2);
        else os << "zb" << (slot - 2 * n - (r - 1) + 2);
        return os.str();
    }

    friend bool operator==(const GeneratorUniverse& a, const GeneratorUniverse& b) {
        return a.n == b.n && a.r == b.r;
    }
    friend bool operator!=(const GeneratorUniverse& a, const GeneratorUniverse& b) { return !(a == b); }

private:
    static void check(bool ok) {
        if (!ok) throw std::out_of_range("GeneratorUniverse: generator index out of range");
    }
};

/// Sign of concatenating two canonically ordered monomials a, b (0 if they
/// share a generator): parity of the transpositions needed to interleave.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int swaps = 0;
    std::uint32_t rest = b;
    while (rest) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        swaps += std::popcount(a >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

/// Element of the free supercommutative algebra on the universe's odd
/// generators, with coefficients in Coeff (a commutative ring supporting
/// +=, unary -, *, times(GaussianRational), conj(), is_zero(), ==).
/// Monomials are stored as bitsets in canonical generator order; zero
/// coefficients are never kept.
template <typename Coeff>
class GrassmannElementT {
public:
    using TermMap = std::map<std::uint32_t, Coeff>;

    explicit GrassmannElementT(GeneratorUniverse uni) : uni_(uni) {}

    static GrassmannElementT scalar(GeneratorUniverse uni, Coeff c) {
        GrassmannElementT e(uni);
        e.add_term(0, std::move(c));
        return e;
    }
    static GrassmannElementT monomial(GeneratorUniverse uni, std::uint32_t mask, Coeff c) {
        GrassmannElementT e(uni);
        e.add_term(mask, std::move(c));
        return e;
    }

    const GeneratorUniverse& universe() const { return uni_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::uint32_t mask, const Coeff& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(mask);
        if (it == terms_.end()) {
            terms_.emplace(mask, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GrassmannElementT& operator+=(const GrassmannElementT& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    GrassmannElementT& operator-=(const GrassmannElementT& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend GrassmannElementT operator+(GrassmannElementT a, const GrassmannElementT& b) { return a += b; }
    friend GrassmannElementT operator-(GrassmannElementT a, const GrassmannElementT& b) { return a -= b; }
    GrassmannElementT operator-() const {
        GrassmannElementT e(uni_);
        for (const auto& [m, c] : terms_) e.terms_.emplace(m, -c);
        return e;
    }

    /// Supercommutative product: signed monomial concatenation, bilinear.
    friend GrassmannElementT operator*(const GrassmannElementT& a, const GrassmannElementT& b) {
        a.require_same(b);
        GrassmannElementT out(a.uni_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                int sign = merge_sign(ma, mb);
                if (sign == 0) continue;
                Coeff c = ca * cb;
                if (sign < 0) c = -c;
                out.add_term(ma | mb, c);
            }
        }
        return out;
    }
    GrassmannElementT& operator*=(const GrassmannElementT& o) { return *this = *this * o; }

    GrassmannElementT times(const GaussianRational& s) const {
        GrassmannElementT e(uni_);
        if (s.is_zero()) return e;
        for (const auto& [m, c] : terms_) e.add_term(m, c.times(s));
        return e;
    }
    GrassmannElementT times(const Rational& s) const { return times(GaussianRational(s)); }

    GrassmannElementT pow(int k) const {
        if (k < 0) throw std::invalid_argument("GrassmannElementT::pow: negative exponent");
        GrassmannElementT acc = scalar(uni_, Coeff(1));
        for (int i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    /// Complex conjugation: conjugate coefficients, swap each generator with
    /// its barred partner, and multiply a k-generator monomial by (-i)^k so
    /// that x_λ·xb_μ ↦ x_μ·xb_λ (the normalized (i/2π)dx∧dx̄ pairs behave
    /// like real-world conjugation).  Involutive ring homomorphism.
    GrassmannElementT conjugate() const {
        GrassmannElementT out(uni_);
        for (const auto& [mask, c] : terms_) {
            std::vector<int> mapped;
            std::uint32_t rest = mask;
            while (rest) {
                int slot = std::countr_zero(rest);
                rest &= rest - 1;
                mapped.push_back(uni_.bar_slot(slot));
            }
            int inv = 0;
            for (size_t i = 0; i < mapped.size(); ++i)
                for (size_t j = i + 1; j < mapped.size(); ++j)
                    if (mapped[i] > mapped[j]) ++inv;
            std::uint32_t new_mask = 0;
            for (int s : mapped) new_mask |= (1u << s);
            GaussianRational phase = GaussianRational::neg_i_pow(static_cast<int>(mapped.size()));
            if (inv & 1) phase = -phase;
            out.add_term(new_mask, c.conj().times(phase));
        }
        return out;
    }

    /// Sum of the terms with exactly base_deg base generators and fiber_deg
    /// fiber generators.
    GrassmannElementT bidegree_filter(int base_deg, int fiber_deg) const {
        GrassmannElementT out(uni_);
        const std::uint32_t bm = uni_.base_mask();
        for (const auto& [mask, c] : terms_) {
            int b = std::popcount(mask & bm);
            int f = std::popcount(mask & ~bm);
            if (b == base_deg && f == fiber_deg) out.terms_.emplace(mask, c);
        }
        return out;
    }

    friend bool operator==(const GrassmannElementT& a, const GrassmannElementT& b) {
        return a.uni_ == b.uni_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const GrassmannElementT& a, const GrassmannElementT& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [mask, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << '(' << c.str() << ')';
            std::uint32_t rest = mask;
            while (rest) {
                int slot = std::countr_zero(rest);
                rest &= rest - 1;
                os << '*' << uni_.slot_name(slot);
            }
        }
        return os.str();
    }

    /// First stored term rendered as a witness monomial (empty if zero).
    std::string witness() const {
        if (terms_.empty()) return "";
        const auto& [mask, c] = *terms_.begin();
        std::ostringstream os;
        os << '(' << c.str() << ')';
        std::uint32_t rest = mask;
        while (rest) {
            int slot = std::countr_zero(rest);
            rest &= rest - 1;
            os << '*' << uni_.slot_name(slot);
        }
        return os.str();
    }

private:
    void require_same(const GrassmannElementT& o) const {
        if (uni_ != o.uni_)
            throw std::invalid_argument("GrassmannElementT: mismatched generator universes");
    }

    GeneratorUniverse uni_;
    TermMap terms_;
};

using GrassmannElement = GrassmannElementT<GaussianRational>;

inline GrassmannElement gr_scalar(GeneratorUniverse uni, GaussianRational c) {
    return GrassmannElement::scalar(uni, std::move(c));
}
inline GrassmannElement gr_one(GeneratorUniverse uni) { return gr_scalar(uni, GaussianRational(1)); }
inline GrassmannElement gr_zero(GeneratorUniverse uni) { return GrassmannElement(uni); }

/// The normalized fiber Kähler form at the center: Ω = Σ_{j≥2} z_j·zb_j.
inline GrassmannElement fubini_study(GeneratorUniverse uni) {
    GrassmannElement e(uni);
    for (int j = 2; j <= uni.r; ++j)
        e.add_term((1u << uni.z(j)) | (1u << uni.zb(j)), GaussianRational(1));
    return e;
}

/// Polynomial in the deformation parameter u with coefficients in Elem.
template <typename Elem>
class UnivariatePoly {
public:
    explicit UnivariatePoly(GeneratorUniverse uni) : uni_(uni) {}
    UnivariatePoly(GeneratorUniverse uni, std::vector<Elem> coeffs)
        : uni_(uni), coeffs_(std::move(coeffs)) {
        trim();
    }

    static UnivariatePoly constant(Elem e) {
        UnivariatePoly p(e.universe());
        p.coeffs_.push_back(std::move(e));
        p.trim();
        return p;
    }

    const GeneratorUniverse& universe() const { return uni_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    Elem coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Elem(uni_);
        return coeffs_[k];
    }

    UnivariatePoly& operator+=(const UnivariatePoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Elem(uni_));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    friend UnivariatePoly operator+(UnivariatePoly a, const UnivariatePoly& b) { return a += b; }
    UnivariatePoly& operator-=(const UnivariatePoly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Elem(uni_));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    friend UnivariatePoly operator-(UnivariatePoly a, const UnivariatePoly& b) { return a -= b; }

    friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
        UnivariatePoly out(a.uni_);
        if (a.is_zero() || b.is_zero()) return out;
        out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Elem(a.uni_));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        out.trim();
        return out;
    }

    UnivariatePoly times(const GaussianRational& s) const {
        UnivariatePoly out(uni_);
        for (const auto& c : coeffs_) out.coeffs_.push_back(c.times(s));
        out.trim();
        return out;
    }

    Elem at_zero() const { return coeff(0); }

    friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) {
        return a.uni_ == b.uni_ && a.coeffs_ == b.coeffs_;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    GeneratorUniverse uni_;
    std::vector<Elem> coeffs_;
};

using UPoly = UnivariatePoly<GrassmannElement>;

/// Exact ∫₀¹ (p(u) − p(0))/u du = Σ_{k≥1} coeff_k / k.  Linear; kills constants.
template <typename Elem>
Elem transgress(const UnivariatePoly<Elem>& p) {
    Elem out(p.universe());
    for (int k = 1; k <= p.degree(); ++k)
        out += p.coeff(k).times(GaussianRational(make_rational(1, k)));
    return out;
}

/// Truncated formal power series in t with Elem coefficients; coefficient of
/// t^d is kept for d = 0..order.
template <typename Elem>
class TruncSeries {
public:
    TruncSeries(GeneratorUniverse uni, int order)
        : uni_(uni), order_(order), coeffs_(order + 1, Elem(uni)) {}

    int order() const { return order_; }
    const GeneratorUniverse& universe() const { return uni_; }

    Elem& at(int d) { return coeffs_.at(d); }
    const Elem& at(int d) const { return coeffs_.at(d); }

    static TruncSeries one(GeneratorUniverse uni, int order) {
        TruncSeries s(uni, order);
        s.at(0) = Elem::scalar(uni, typename Elem::TermMap::mapped_type(1));
        return s;
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        require_compat(o);
        for (int d = 0; d <= order_; ++d) coeffs_[d] += o.coeffs_[d];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        require_compat(o);
        for (int d = 0; d <= order_; ++d) coeffs_[d] -= o.coeffs_[d];
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.require_compat(b);
        TruncSeries out(a.uni_, a.order_);
        for (int i = 0; i <= a.order_; ++i)
            for (int j = 0; i + j <= a.order_; ++j)
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return out;
    }

    TruncSeries pow(int k) const {
        TruncSeries acc = one(uni_, order_);
        for (int i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.uni_ == b.uni_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

private:
    void require_compat(const TruncSeries& o) const {
        if (uni_ != o.uni_ || order_ != o.order_)
            throw std::invalid_argument("TruncSeries: incompatible operands");
    }

    GeneratorUniverse uni_;
    int order_;
    std::vector<Elem> coeffs_;
};

using GrSeries = TruncSeries<GrassmannElement>;

}  // namespace bottchern
