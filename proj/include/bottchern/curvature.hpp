#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "bottchern/grassmann.hpp"
#include "bottchern/rational.hpp"

namespace bottchern {

/// Curvature tensor γ_{λμjk} of exact Gaussian rationals (λ,μ base indices in
/// 1..n, j,k bundle indices in 1..r), with the normalization constants already
/// absorbed: the induced matrix entry is c_jk = Σ γ_{λμjk}·x_λ·xb_μ.
struct CurvatureData {
    int r = 1;
    int n = 1;
    bool hermitian = false;
    std::vector<GaussianRational> gamma;  // indexed by ((λ·n+μ)·r+j)·r+k, 0-based

    CurvatureData(int rank, int base_dim)
        : r(rank), n(base_dim), gamma(static_cast<size_t>(rank) * rank * base_dim * base_dim) {
        if (rank < 1 || base_dim < 1)
            throw std::invalid_argument("CurvatureData: need r >= 1 and n >= 1");
    }

    GeneratorUniverse universe() const { return GeneratorUniverse{n, r}; }

    // 1-based indices throughout
    GaussianRational& at(int lam, int mu, int j, int k) {
        return gamma[index(lam, mu, j, k)];
    }
    const GaussianRational& at(int lam, int mu, int j, int k) const {
        return gamma[index(lam, mu, j, k)];
    }

    bool is_hermitian_tensor() const {
        for (int lam = 1; lam <= n; ++lam)
            for (int mu = 1; mu <= n; ++mu)
                for (int j = 1; j <= r; ++j)
                    for (int k = 1; k <= r; ++k)
                        if (at(lam, mu, j, k) != at(mu, lam, k, j).conj()) return false;
        return true;
    }

    /// γ'_{λμjk} = (γ_{λμjk} + conj(γ_{μλkj}))/2; fixed point of the hermitian
    /// symmetry.
    CurvatureData hermitized() const {
        CurvatureData out(r, n);
        out.hermitian = true;
        const GaussianRational half{make_rational(1, 2)};
        for (int lam = 1; lam <= n; ++lam)
            for (int mu = 1; mu <= n; ++mu)
                for (int j = 1; j <= r; ++j)
                    for (int k = 1; k <= r; ++k)
                        out.at(lam, mu, j, k) = (at(lam, mu, j, k) + at(mu, lam, k, j).conj()).times(half);
        return out;
    }

private:
    size_t index(int lam, int mu, int j, int k) const {
        if (lam < 1 || lam > n || mu < 1 || mu > n || j < 1 || j > r || k < 1 || k > r)
            throw std::out_of_range("CurvatureData: index out of range");
        return ((static_cast<size_t>(lam - 1) * n + (mu - 1)) * r + (j - 1)) * r + (k - 1);
    }
};

/// The r×r matrix of even (1,1) base forms c_jk = Σ_{λμ} γ_{λμjk}·x_λ·xb_μ.
/// Entries commute pairwise.
class CurvatureMatrix {
public:
    explicit CurvatureMatrix(const CurvatureData& data)
        : uni_(data.universe()), r_(data.r), entries_(static_cast<size_t>(r_) * r_, GrassmannElement(uni_)) {
        for (int j = 1; j <= r_; ++j)
            for (int k = 1; k <= r_; ++k) {
                GrassmannElement e(uni_);
                for (int lam = 1; lam <= uni_.n; ++lam)
                    for (int mu = 1; mu <= uni_.n; ++mu)
                        e.add_term((1u << uni_.x(lam)) | (1u << uni_.xb(mu)), data.at(lam, mu, j, k));
                entries_[idx(j, k)] = std::move(e);
            }
    }

    const GeneratorUniverse& universe() const { return uni_; }
    int rank() const { return r_; }

    // 1-based
    const GrassmannElement& at(int j, int k) const { return entries_[idx(j, k)]; }

    GrassmannElement trace() const {
        GrassmannElement t(uni_);
        for (int j = 1; j <= r_; ++j) t += at(j, j);
        return t;
    }

    /// (matrix power)_{1,1}: Σ over index chains starting and ending at 1.
    GrassmannElement power_entry_11(int q) const {
        if (q < 0) throw std::invalid_argument("CurvatureMatrix::power_entry_11: negative power");
        // iterated row-vector times matrix, starting from e_1
        std::vector<GrassmannElement> row(static_cast<size_t>(r_), GrassmannElement(uni_));
        row[0] = gr_one(uni_);
        for (int step = 0; step < q; ++step) {
            std::vector<GrassmannElement> next(static_cast<size_t>(r_), GrassmannElement(uni_));
            for (int k = 1; k <= r_; ++k)
                for (int j = 1; j <= r_; ++j)
                    next[k - 1] += row[j - 1] * at(j, k);
            row = std::move(next);
        }
        return row[0];
    }

private:
    size_t idx(int j, int k) const {
        if (j < 1 || j > r_ || k < 1 || k > r_)
            throw std::out_of_range("CurvatureMatrix: index out of range");
        return static_cast<size_t>(j - 1) * r_ + (k - 1);
    }

    GeneratorUniverse uni_;
    int r_;
    std::vector<GrassmannElement> entries_;
};

}  // namespace bottchern
