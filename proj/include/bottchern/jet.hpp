#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bottchern/bott_chern.hpp"
#include "bottchern/combinatorics.hpp"
#include "bottchern/curvature.hpp"
#include "bottchern/grassmann.hpp"

namespace bottchern {

/// Truncated polynomial in the position variables x_1..x_n, xb_1..xb_n,
/// z_2..z_r, zb_2..zb_r (one variable per generator slot) over Q(i).  Every
/// monomial of total degree > trunc is dropped at every operation.
class JetScalar {
public:
    using Exp = std::vector<std::uint8_t>;

    JetScalar(GeneratorUniverse uni, int trunc) : uni_(uni), trunc_(trunc) {}

    static JetScalar constant(GeneratorUniverse uni, int trunc, GaussianRational c) {
        JetScalar s(uni, trunc);
        s.add_term(Exp(uni.total(), 0), std::move(c));
        return s;
    }
    static JetScalar variable(GeneratorUniverse uni, int trunc, int slot) {
        if (slot < 0 || slot >= uni.total()) throw std::out_of_range("JetScalar::variable: bad slot");
        JetScalar s(uni, trunc);
        Exp e(uni.total(), 0);
        e[slot] = 1;
        s.add_term(std::move(e), GaussianRational(1));
        return s;
    }

    const GeneratorUniverse& universe() const { return uni_; }
    int trunc() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }

    static int degree_of(const Exp& e) {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }

    void add_term(Exp e, const GaussianRational& c) {
        if (c.is_zero() || degree_of(e) > trunc_) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    JetScalar& operator+=(const JetScalar& o) {
        require_compat(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    friend JetScalar operator+(JetScalar a, const JetScalar& b) { return a += b; }
    JetScalar operator-() const {
        JetScalar s(uni_, trunc_);
        for (const auto& [e, c] : terms_) s.terms_.emplace(e, -c);
        return s;
    }
    JetScalar& operator-=(const JetScalar& o) { return *this += -o; }
    friend JetScalar operator-(JetScalar a, const JetScalar& b) { return a -= b; }

    friend JetScalar operator*(const JetScalar& a, const JetScalar& b) {
        a.require_compat(b);
        JetScalar out(a.uni_, a.trunc_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e = ea;
                int deg = 0;
                for (size_t i = 0; i < e.size(); ++i) {
                    e[i] = static_cast<std::uint8_t>(e[i] + eb[i]);
                    deg += e[i];
                }
                if (deg > a.trunc_) continue;
                out.add_term(std::move(e), ca * cb);
            }
        return out;
    }

    JetScalar times(const GaussianRational& s) const {
        JetScalar out(uni_, trunc_);
        if (s.is_zero()) return out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
        return out;
    }

    JetScalar derivative(int slot) const {
        JetScalar out(uni_, trunc_);
        for (const auto& [e, c] : terms_) {
            if (e[slot] == 0) continue;
            Exp d = e;
            --d[slot];
            out.add_term(std::move(d), c.times(GaussianRational(Rational(static_cast<int>(e[slot])))));
        }
        return out;
    }

    GaussianRational value0() const {
        auto it = terms_.find(Exp(uni_.total(), 0));
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// Conjugation of jets: conjugate coefficients and swap each variable
    /// with its barred partner (positions are honest coordinates, no phase).
    JetScalar conj() const {
        JetScalar out(uni_, trunc_);
        for (const auto& [e, c] : terms_) {
            Exp m(e.size(), 0);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i]) m[uni_.bar_slot(static_cast<int>(i))] = e[i];
            out.add_term(std::move(m), c.conj());
        }
        return out;
    }

    /// Kill every monomial containing a base variable (restriction to the
    /// fiber x = 0).
    JetScalar restrict_to_fiber() const {
        JetScalar out(uni_, trunc_);
        for (const auto& [e, c] : terms_) {
            bool base = false;
            for (int i = 0; i < uni_.base_count(); ++i)
                if (e[i]) {
                    base = true;
                    break;
                }
            if (!base) out.terms_.emplace(e, c);
        }
        return out;
    }

    /// Multiplicative inverse, requires a nonzero constant term; exact under
    /// truncation via the Neumann series.
    JetScalar inverse() const {
        GaussianRational c0 = value0();
        if (c0.is_zero()) throw std::domain_error("JetScalar::inverse: zero constant term");
        JetScalar g = times(c0.inverse());
        g.add_term(Exp(uni_.total(), 0), GaussianRational(-1));  // g = f/c0 - 1, no constant term
        JetScalar acc = constant(uni_, trunc_, GaussianRational(1));
        JetScalar pw = constant(uni_, trunc_, GaussianRational(1));
        for (int k = 1; k <= trunc_; ++k) {
            pw = pw * g;
            if (pw.is_zero()) break;
            acc += (k & 1) ? -pw : pw;
        }
        return acc.times(c0.inverse());
    }

    /// log of a jet with constant term 1 (Mercator series, exact under
    /// truncation).
    JetScalar log() const {
        if (!(value0() == GaussianRational(1)))
            throw std::domain_error("JetScalar::log: constant term must be 1");
        JetScalar g = *this;
        g.add_term(Exp(uni_.total(), 0), GaussianRational(-1));
        JetScalar acc(uni_, trunc_);
        JetScalar pw = constant(uni_, trunc_, GaussianRational(1));
        for (int k = 1; k <= trunc_; ++k) {
            pw = pw * g;
            if (pw.is_zero()) break;
            JetScalar term = pw.times(GaussianRational(make_rational(1, k)));
            acc += (k & 1) ? term : -term;
        }
        return acc;
    }

    friend bool operator==(const JetScalar& a, const JetScalar& b) {
        return a.uni_ == b.uni_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const JetScalar& a, const JetScalar& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += '(' + c.str() + ')';
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) out += '*' + uni_.slot_name(static_cast<int>(i)) + '.';
        }
        return out;
    }

private:
    void require_compat(const JetScalar& o) const {
        if (uni_ != o.uni_ || trunc_ != o.trunc_)
            throw std::invalid_argument("JetScalar: incompatible jet rings");
    }

    GeneratorUniverse uni_;
    int trunc_;
    std::map<Exp, GaussianRational> terms_;
};

/// Differential form with jet coefficients: Grassmann element over JetScalar.
using JetForm = GrassmannElementT<JetScalar>;

inline JetForm jet_form_scalar(const JetScalar& s) {
    JetForm f(s.universe());
    f.add_term(0, s);
    return f;
}
inline JetForm jet_form_zero(GeneratorUniverse uni) { return JetForm(uni); }
inline JetForm jet_form_one(GeneratorUniverse uni, int trunc) {
    return jet_form_scalar(JetScalar::constant(uni, trunc, GaussianRational(1)));
}

/// Lift a pointwise element to a constant-coefficient jet form.
inline JetForm to_jet_form(const GrassmannElement& e, int trunc) {
    JetForm f(e.universe());
    for (const auto& [mask, c] : e.terms())
        f.add_term(mask, JetScalar::constant(e.universe(), trunc, c));
    return f;
}

namespace detail {

inline JetForm jet_derivative_part(const JetForm& f, bool holomorphic) {
    const auto uni = f.universe();
    JetForm out(uni);
    const int n = uni.n, r = uni.r;
    std::vector<int> slots;
    if (holomorphic) {
        for (int lam = 1; lam <= n; ++lam) slots.push_back(uni.x(lam));
        for (int j = 2; j <= r; ++j) slots.push_back(uni.z(j));
    } else {
        for (int mu = 1; mu <= n; ++mu) slots.push_back(uni.xb(mu));
        for (int k = 2; k <= r; ++k) slots.push_back(uni.zb(k));
    }
    for (const auto& [mask, coeff] : f.terms()) {
        for (int v : slots) {
            JetScalar d = coeff.derivative(v);
            if (d.is_zero()) continue;
            int sign = merge_sign(1u << v, mask);
            if (sign == 0) continue;
            if (sign < 0) d = -d;
            out.add_term((1u << v) | mask, d);
        }
    }
    return out;
}

}  // namespace detail

/// d' and d'' in normalized units: Σ (∂/∂v)·gen_v ∧ (·) over holomorphic
/// (resp. antiholomorphic) variables.
inline JetForm d_holo(const JetForm& f) { return detail::jet_derivative_part(f, true); }
inline JetForm d_anti(const JetForm& f) { return detail::jet_derivative_part(f, false); }
inline JetForm d_total(const JetForm& f) { return d_holo(f) + d_anti(f); }

/// Evaluate the jet coefficients at the center.
inline GrassmannElement value0(const JetForm& f) {
    GrassmannElement out(f.universe());
    for (const auto& [mask, coeff] : f.terms()) out.add_term(mask, coeff.value0());
    return out;
}

inline JetForm restrict_to_fiber(const JetForm& f) {
    JetForm out(f.universe());
    for (const auto& [mask, coeff] : f.terms()) {
        JetScalar r = coeff.restrict_to_fiber();
        if (!r.is_zero()) out.add_term(mask, r);
    }
    return out;
}

/// Dense matrix of jet forms (entries may be 0-forms).
struct JetMatrix {
    int rows = 0, cols = 0;
    std::vector<JetForm> m;

    JetMatrix(int rr, int cc, GeneratorUniverse uni)
        : rows(rr), cols(cc), m(static_cast<size_t>(rr) * cc, JetForm(uni)) {}

    JetForm& at(int i, int j) { return m[static_cast<size_t>(i) * cols + j]; }
    const JetForm& at(int i, int j) const { return m[static_cast<size_t>(i) * cols + j]; }

    static JetMatrix identity(int size, GeneratorUniverse uni, int trunc) {
        JetMatrix out(size, size, uni);
        for (int i = 0; i < size; ++i) out.at(i, i) = jet_form_one(uni, trunc);
        return out;
    }

    JetMatrix operator+(const JetMatrix& o) const {
        JetMatrix out = *this;
        for (size_t i = 0; i < m.size(); ++i) out.m[i] += o.m[i];
        return out;
    }
    JetMatrix operator-(const JetMatrix& o) const {
        JetMatrix out = *this;
        for (size_t i = 0; i < m.size(); ++i) out.m[i] -= o.m[i];
        return out;
    }
    JetMatrix operator*(const JetMatrix& o) const {
        if (cols != o.rows) throw std::invalid_argument("JetMatrix: shape mismatch");
        JetMatrix out(rows, o.cols, m.empty() ? GeneratorUniverse{} : m[0].universe());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < o.cols; ++j) {
                JetForm acc = out.at(i, j);
                for (int k = 0; k < cols; ++k) acc += at(i, k) * o.at(k, j);
                out.at(i, j) = std::move(acc);
            }
        return out;
    }

    JetMatrix transpose() const {
        JetMatrix out(cols, rows, m.empty() ? GeneratorUniverse{} : m[0].universe());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    /// Conjugate transpose (entrywise jet conjugation).
    JetMatrix dagger() const {
        JetMatrix out = transpose();
        for (auto& e : out.m) e = e.conjugate();
        return out;
    }

    JetMatrix map(JetForm (*fn)(const JetForm&)) const {
        JetMatrix out = *this;
        for (auto& e : out.m) e = fn(e);
        return out;
    }

    bool is_zero() const {
        for (const auto& e : m)
            if (!e.is_zero()) return false;
        return true;
    }
};

/// Metric jet of a frame normal at the center: H_ij = δ_ij − Σ γ_{λμji} x_λ xb_μ.
struct MetricJet {
    CurvatureData data;
    int trunc;
    JetMatrix H;

    explicit MetricJet(const CurvatureData& d, int truncation = 2)
        : data(d), trunc(truncation), H(d.r, d.r, d.universe()) {
        const auto uni = d.universe();
        for (int i = 1; i <= d.r; ++i)
            for (int j = 1; j <= d.r; ++j) {
                JetScalar s(uni, trunc);
                if (i == j) s.add_term(JetScalar::Exp(uni.total(), 0), GaussianRational(1));
                for (int lam = 1; lam <= d.n; ++lam)
                    for (int mu = 1; mu <= d.n; ++mu) {
                        JetScalar::Exp e(uni.total(), 0);
                        e[uni.x(lam)] = 1;
                        e[uni.xb(mu)] = 1;
                        s.add_term(std::move(e), -d.at(lam, mu, j, i));
                    }
                H.at(i - 1, j - 1) = jet_form_scalar(s);
            }
    }

    /// Negative control: add the variable at `slot` to H_ij, breaking
    /// normality (a linear metric term).
    void inject_linear(int i, int j, int slot) {
        const auto uni = data.universe();
        H.at(i - 1, j - 1) += jet_form_scalar(JetScalar::variable(uni, trunc, slot));
    }
};

namespace detail {

/// Matrix inverse of a jet matrix with H(0) = I, by the Neumann series.
inline JetMatrix jet_matrix_inverse(const JetMatrix& h, GeneratorUniverse uni, int trunc) {
    JetMatrix ident = JetMatrix::identity(h.rows, uni, trunc);
    JetMatrix g = ident - h;
    JetMatrix acc = ident;
    JetMatrix pw = ident;
    for (int k = 1; k <= trunc; ++k) {
        pw = pw * g;
        if (pw.is_zero()) break;
        acc = acc + pw;
    }
    return acc;
}

}  // namespace detail

/// Chern connection and curvature of the metric jet, in the convention where
/// matrices act on coefficient columns: A = (d'H·H^{-1})ᵀ, Θ = dA + A∧A.
/// The center value Θ(0) reproduces the CurvatureMatrix built from the same
/// tensor.
inline std::pair<JetMatrix, JetMatrix> connection_and_curvature(const MetricJet& mj) {
    const auto uni = mj.data.universe();
    JetMatrix dH = mj.H.map(&d_holo);
    JetMatrix hinv = detail::jet_matrix_inverse(mj.H, uni, mj.trunc);
    JetMatrix a = (dH * hinv).transpose();
    JetMatrix theta = a.map(&d_total) + a * a;
    return {std::move(a), std::move(theta)};
}

struct JetCheckResult {
    bool pass = true;
    GrassmannElement witness;

    explicit JetCheckResult(GeneratorUniverse uni) : witness(uni) {}
};

/// At the center of a normal frame dΘ = 0 and d'd''Θ = 0.  Returns the first
/// nonzero entry value as witness on failure.
inline JetCheckResult center_curvature_closed_check(const MetricJet& mj) {
    const auto uni = mj.data.universe();
    JetCheckResult res(uni);
    const JetMatrix theta = connection_and_curvature(mj).second;
    for (const auto& entry : theta.m) {
        GrassmannElement d1 = value0(d_total(entry));
        GrassmannElement d2 = value0(d_holo(d_anti(entry)));
        if (!d1.is_zero()) {
            res.pass = false;
            res.witness = d1;
            return res;
        }
        if (!d2.is_zero()) {
            res.pass = false;
            res.witness = d2;
            return res;
        }
    }
    return res;
}

namespace detail {

inline JetScalar fiber_norm_squared(GeneratorUniverse uni, int trunc) {
    // |a|^2 = 1 + Σ z_j zb_j
    JetScalar s = JetScalar::constant(uni, trunc, GaussianRational(1));
    for (int j = 2; j <= uni.r; ++j) {
        JetScalar::Exp e(uni.total(), 0);
        e[uni.z(j)] = 1;
        e[uni.zb(j)] = 1;
        s.add_term(std::move(e), GaussianRational(1));
    }
    return s;
}

/// ‖e_1* + Σ z_j e_j*‖² as a jet in (x, z).
inline JetScalar tautological_norm(const MetricJet& mj) {
    const auto uni = mj.data.universe();
    JetScalar acc(uni, mj.trunc);
    for (int j = 1; j <= uni.r; ++j)
        for (int k = 1; k <= uni.r; ++k) {
            // a_j · ā_k · H_jk
            JetScalar aj = (j == 1) ? JetScalar::constant(uni, mj.trunc, GaussianRational(1))
                                    : JetScalar::variable(uni, mj.trunc, uni.z(j));
            JetScalar ak = (k == 1) ? JetScalar::constant(uni, mj.trunc, GaussianRational(1))
                                    : JetScalar::variable(uni, mj.trunc, uni.zb(k));
            const JetForm& h = mj.H.at(j - 1, k - 1);
            for (const auto& [mask, c] : h.terms()) {
                if (mask != 0) throw std::logic_error("tautological_norm: metric entry not a 0-form");
                acc += aj * ak * c;
            }
        }
    return acc;
}

}  // namespace detail

/// Curvature of the tautological quotient line bundle: α = d'd'' log‖·‖²
/// in normalized units, as a jet form in (x, z).
inline JetForm tautological_curvature(const MetricJet& mj) {
    JetScalar n = detail::tautological_norm(mj);
    return d_holo(d_anti(jet_form_scalar(n.log())));
}

/// The fiber Kähler form as a z-jet: ((1+|z|²)Σ z_j·zb_j − Σ zb_i z_j·(z_i,zb_j))
/// over (1+|z|²)².
inline JetForm fubini_study_jet(GeneratorUniverse uni, int trunc) {
    JetScalar norm = detail::fiber_norm_squared(uni, trunc);
    JetScalar inv = norm.inverse();
    JetScalar inv2 = inv * inv;
    JetForm acc(uni);
    for (int j = 2; j <= uni.r; ++j)
        acc.add_term((1u << uni.z(j)) | (1u << uni.zb(j)), norm * inv2);
    // z-slots precede zb-slots, so the mask below is already canonical
    for (int i = 2; i <= uni.r; ++i)
        for (int j = 2; j <= uni.r; ++j) {
            JetScalar c = JetScalar::variable(uni, trunc, uni.zb(i)) *
                          JetScalar::variable(uni, trunc, uni.z(j)) * inv2;
            acc.add_term((1u << uni.z(i)) | (1u << uni.zb(j)), -c);
        }
    return acc;
}

/// Θ^q a* as a jet form on P(E) near the center: ⟨Θ(E*)^q a*, a*⟩/‖a*‖².
inline JetForm theta_power_jet(int q, const MetricJet& mj, const JetMatrix& theta) {
    const auto uni = mj.data.universe();
    const int r = uni.r;
    JetMatrix a(r, 1, uni), adag(1, r, uni);
    for (int j = 1; j <= r; ++j) {
        JetScalar aj = (j == 1) ? JetScalar::constant(uni, mj.trunc, GaussianRational(1))
                                : JetScalar::variable(uni, mj.trunc, uni.z(j));
        JetScalar ajbar = (j == 1) ? JetScalar::constant(uni, mj.trunc, GaussianRational(1))
                                   : JetScalar::variable(uni, mj.trunc, uni.zb(j));
        a.at(j - 1, 0) = jet_form_scalar(aj);
        adag.at(0, j - 1) = jet_form_scalar(ajbar);
    }
    JetMatrix ge = mj.H.transpose();
    JetMatrix u = a;
    for (int step = 0; step < q; ++step) u = theta * u;
    JetMatrix num = adag * (ge * u);
    JetScalar nrm = detail::tautological_norm(mj);
    JetForm out = num.at(0, 0);
    JetForm inv = jet_form_scalar(nrm.inverse());
    return out * inv;
}

/// Quotient-bundle curvature of the twisted relative tangent bundle,
/// assembled from Θ_Q = pΘ_E p* − p(∇'ι)∧ι*(∇''p*), evaluated at the center.
/// Returns the (r-1)×(r-1) matrix of center values.
inline std::vector<GrassmannElement> twisted_tangent_curvature(const MetricJet& mj) {
    const auto uni = mj.data.universe();
    const int r = uni.r;
    if (r < 2) throw std::invalid_argument("twisted_tangent_curvature: need rank >= 2");
    auto [a_conn, theta] = connection_and_curvature(mj);

    JetMatrix iota(r, 1, uni), adag(1, r, uni);
    for (int j = 1; j <= r; ++j) {
        JetScalar aj = (j == 1) ? JetScalar::constant(uni, mj.trunc, GaussianRational(1))
                                : JetScalar::variable(uni, mj.trunc, uni.z(j));
        JetScalar ajbar = (j == 1) ? JetScalar::constant(uni, mj.trunc, GaussianRational(1))
                                   : JetScalar::variable(uni, mj.trunc, uni.zb(j));
        iota.at(j - 1, 0) = jet_form_scalar(aj);
        adag.at(0, j - 1) = jet_form_scalar(ajbar);
    }
    JetMatrix ge = mj.H.transpose();
    JetScalar nrm = detail::tautological_norm(mj);
    JetForm ninv = jet_form_scalar(nrm.inverse());

    // p: (r-1)×r with p(e_k) = t_k for k >= 2 and p(e_1) = −Σ z_j t_j
    JetMatrix p(r - 1, r, uni);
    for (int j = 2; j <= r; ++j) {
        p.at(j - 2, 0) = jet_form_scalar(-JetScalar::variable(uni, mj.trunc, uni.z(j)));
        p.at(j - 2, j - 1) = jet_form_one(uni, mj.trunc);
    }

    // p*: orthogonal lift, column k ↦ e_k − a·(a†G_E)_k/N
    JetMatrix row = adag * ge;  // 1×r
    JetMatrix pstar(r, r - 1, uni);
    for (int k = 2; k <= r; ++k) {
        for (int i = 1; i <= r; ++i) {
            JetForm entry(uni);
            if (i == k) entry = jet_form_one(uni, mj.trunc);
            entry -= iota.at(i - 1, 0) * row.at(0, k - 1) * ninv;
            pstar.at(i - 1, k - 2) = std::move(entry);
        }
    }

    // ∇'ι = d'ι + A_E·ι − ι·A_S with A_S = N^{-1}·d'N
    JetForm as = d_holo(jet_form_scalar(nrm)) * ninv;
    JetMatrix grad_iota = iota.map(&d_holo) + a_conn * iota;
    for (int i = 0; i < r; ++i) grad_iota.at(i, 0) -= iota.at(i, 0) * as;

    // ι* = N^{-1}·a†G_E ; ∇''p* = d''(p*) (holomorphic frames on both sides)
    JetMatrix iostar(1, r, uni);
    for (int k = 0; k < r; ++k) iostar.at(0, k) = row.at(0, k) * ninv;
    JetMatrix dpstar = pstar.map(&d_anti);

    JetMatrix first = (p * theta) * pstar;
    JetMatrix second = (p * grad_iota) * (iostar * dpstar);
    JetMatrix q = first - second;

    std::vector<GrassmannElement> out;
    out.reserve(static_cast<size_t>(r - 1) * (r - 1));
    for (int j = 0; j < r - 1; ++j)
        for (int k = 0; k < r - 1; ++k) out.push_back(value0(q.at(j, k)));
    return out;
}

/// Jet-side verification of the single-insertion cycle sums: at the center,
///   Ω_{d+1,1} = d'd''(Θ^d a*) + Θ^{d+1}a* + α·Θ^d a*
///             + Σ_{m=2..d} Σ_{|B|=d, l(B)=m} (−1)^m (d''Θ^{b_1}a*)·Θ^{b_2}a*
///               ··· Θ^{b_{m−1}}a*·(d'Θ^{b_m}a*).
/// Returns the residual (left minus right).
inline GrassmannElement omega_chain_jet_residual(int d, const MetricJet& mj) {
    if (d < 1) throw std::invalid_argument("omega_chain_jet_residual: need d >= 1");
    const auto uni = mj.data.universe();
    const JetMatrix theta = connection_and_curvature(mj).second;

    std::vector<GrassmannElement> theta_val(static_cast<size_t>(d) + 2, GrassmannElement(uni));
    std::vector<GrassmannElement> dp_val(static_cast<size_t>(d) + 1, GrassmannElement(uni));
    std::vector<GrassmannElement> dpp_val(static_cast<size_t>(d) + 1, GrassmannElement(uni));
    GrassmannElement ddl(uni);
    for (int q = 1; q <= d + 1; ++q) {
        JetForm tq = theta_power_jet(q, mj, theta);
        theta_val[q] = value0(tq);
        if (q <= d) {
            dp_val[q] = value0(d_holo(tq));
            dpp_val[q] = value0(d_anti(tq));
        }
        if (q == d) ddl = value0(d_holo(d_anti(tq)));
    }
    GrassmannElement alpha0 = value0(tautological_curvature(mj));

    GrassmannElement rhs = ddl + theta_val[d + 1] + alpha0 * theta_val[d];
    if (d >= 2) {
        for (const auto& comp : enumerate_compositions(d)) {
            const int m = comp.length();
            if (m < 2) continue;
            GrassmannElement term = dpp_val[comp.parts.front()];
            for (int idx = 1; idx + 1 < m; ++idx) term = term * theta_val[comp.parts[idx]];
            term = term * dp_val[comp.parts.back()];
            if (m & 1) term = -term;
            rhs += term;
        }
    }
    GrassmannElement lhs = omega_chain(d + 1, CurvatureMatrix(mj.data));
    return lhs - rhs;
}

}  // namespace bottchern
