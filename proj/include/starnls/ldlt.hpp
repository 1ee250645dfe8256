#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "starnls/errors.hpp"

namespace starnls {

// =============================================================================
// Bordered block-tridiagonal symmetric matrices
// =============================================================================
//
// The P1 discretization of a star-graph operator couples per-edge tridiagonal
// blocks only through the shared vertex degree of freedom. Ordering the vertex
// last yields
//
//     A = [ T   b ]      T = diag(T_1, ..., T_G) tridiagonal blocks,
//         [ b^T d ]      b nonzero only at the first node of each block.
//
// LDL^T factors block by block; the vertex contributes a scalar Schur
// complement. Inertia is additive over the pivots (Haynsworth), which makes
// negative-eigenvalue counts of (A - sigma M) one factorization each.

template <class Scalar>
struct BorderedTridiagonal {
    struct Block {
        std::vector<Scalar> diag;
        std::vector<Scalar> off;   // off[i] couples node i and i+1; size = diag.size()-1
        Scalar border{};           // coupling between the vertex and the block's first node
    };

    std::vector<Block> blocks;
    Scalar vertex{};

    int size() const {
        std::size_t n = 1;
        for (const auto& b : blocks) n += b.diag.size();
        return static_cast<int>(n);
    }

    /// y = A x with the vertex DOF stored last.
    std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
        const std::size_t n = static_cast<std::size_t>(size());
        std::vector<Scalar> y(n, Scalar{});
        const Scalar xv = x[n - 1];
        Scalar yv = vertex * xv;
        std::size_t base = 0;
        for (const auto& b : blocks) {
            const std::size_t m = b.diag.size();
            for (std::size_t i = 0; i < m; ++i) {
                Scalar acc = b.diag[i] * x[base + i];
                if (i > 0) acc += b.off[i - 1] * x[base + i - 1];
                if (i + 1 < m) acc += b.off[i] * x[base + i + 1];
                y[base + i] = acc;
            }
            if (m > 0) {
                y[base] += b.border * xv;
                yv += b.border * x[base];
            }
            base += m;
        }
        y[n - 1] = yv;
        return y;
    }

    double max_abs_entry() const {
        double m = std::abs(vertex);
        for (const auto& b : blocks) {
            for (const auto& v : b.diag) m = std::max(m, std::abs(v));
            for (const auto& v : b.off) m = std::max(m, std::abs(v));
            m = std::max(m, std::abs(b.border));
        }
        return m;
    }

    /// A -> A - sigma * diag(w); w laid out as the DOF vector.
    void subtract_scaled_diagonal(double sigma, const std::vector<double>& w) {
        std::size_t base = 0;
        for (auto& b : blocks) {
            for (std::size_t i = 0; i < b.diag.size(); ++i) b.diag[i] -= sigma * w[base + i];
            base += b.diag.size();
        }
        vertex -= sigma * w[base];
    }

    std::vector<std::vector<Scalar>> dense() const {
        const std::size_t n = static_cast<std::size_t>(size());
        std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n, Scalar{}));
        std::size_t base = 0;
        for (const auto& b : blocks) {
            const std::size_t m = b.diag.size();
            for (std::size_t i = 0; i < m; ++i) {
                a[base + i][base + i] = b.diag[i];
                if (i + 1 < m) {
                    a[base + i][base + i + 1] = b.off[i];
                    a[base + i + 1][base + i] = b.off[i];
                }
            }
            a[base][n - 1] = b.border;
            a[n - 1][base] = b.border;
            base += m;
        }
        a[n - 1][n - 1] = vertex;
        return a;
    }
};

// =============================================================================
// LDL^T factorization
// =============================================================================

namespace detail {

inline int sign_count_negative(double d) { return d < 0.0 ? 1 : 0; }
inline int sign_count_negative(const std::complex<double>&) { return 0; } // inertia is a real-symmetric notion

} // namespace detail

/// Symmetric (complex: non-conjugated) LDL^T of a bordered block-tridiagonal
/// matrix. Exposes the pivot inertia and in-place solves. A vanishing pivot
/// triggers one retry with a relative diagonal shift of 1e-14 * max|A|.
template <class Scalar>
class BorderedLdlt {
public:
    explicit BorderedLdlt(const BorderedTridiagonal<Scalar>& a) {
        if (!factor(a, 0.0)) {
            const double shift = 1e-14 * std::max(1.0, a.max_abs_entry());
            if (!factor(a, shift))
                throw NumericalError("LDL^T factorization broke down after diagonal regularization");
            regularized_ = true;
        }
    }

    int negative_pivots() const { return negatives_; }
    bool regularized() const { return regularized_; }

    /// Solve A x = rhs in place (rhs laid out as blocks then vertex).
    void solve_in_place(std::vector<Scalar>& x) const {
        const std::size_t n = x.size();
        // forward: z = L^{-1} rhs
        std::size_t base = 0;
        Scalar zv = x[n - 1];
        for (std::size_t g = 0; g < lower_.size(); ++g) {
            const auto& l = lower_[g];
            const auto& c = border_factor_[g];
            const std::size_t m = piv_[g].size();
            for (std::size_t i = 1; i < m; ++i) x[base + i] -= l[i - 1] * x[base + i - 1];
            for (std::size_t i = 0; i < m; ++i) zv -= c[i] * x[base + i];
            base += m;
        }
        // diagonal
        base = 0;
        for (std::size_t g = 0; g < piv_.size(); ++g) {
            for (std::size_t i = 0; i < piv_[g].size(); ++i) x[base + i] /= piv_[g][i];
            base += piv_[g].size();
        }
        x[n - 1] = zv / schur_;
        // backward: L^T x = w
        const Scalar xv = x[n - 1];
        base = 0;
        for (std::size_t g = 0; g < lower_.size(); ++g) {
            const auto& l = lower_[g];
            const auto& c = border_factor_[g];
            const std::size_t m = piv_[g].size();
            for (std::size_t i = m; i-- > 0;) {
                x[base + i] -= c[i] * xv;
                if (i + 1 < m) x[base + i] -= l[i] * x[base + i + 1];
            }
            base += m;
        }
    }

private:
    bool factor(const BorderedTridiagonal<Scalar>& a, double shift) {
        const double breakdown = 1e-300;
        negatives_ = 0;
        piv_.clear();
        lower_.clear();
        border_factor_.clear();
        schur_ = a.vertex + shift;
        for (const auto& blk : a.blocks) {
            const std::size_t m = blk.diag.size();
            std::vector<Scalar> d(m), l(m > 0 ? m - 1 : 0), c(m, Scalar{});
            // L D L^T of the tridiagonal block
            for (std::size_t i = 0; i < m; ++i) {
                Scalar di = blk.diag[i] + shift;
                if (i > 0) di -= l[i - 1] * l[i - 1] * d[i - 1];
                if (std::abs(di) < breakdown) return false;
                d[i] = di;
                if (i + 1 < m) l[i] = blk.off[i] / di;
                negatives_ += detail::sign_count_negative(di);
            }
            // border column: c = D^{-1} L^{-1} b, b = border * e_0
            if (m > 0) {
                c[0] = blk.border;
                for (std::size_t i = 1; i < m; ++i) c[i] = -l[i - 1] * c[i - 1];
                for (std::size_t i = 0; i < m; ++i) {
                    schur_ -= c[i] * c[i] / d[i];
                    c[i] /= d[i];
                }
            }
            piv_.push_back(std::move(d));
            lower_.push_back(std::move(l));
            border_factor_.push_back(std::move(c));
        }
        if (std::abs(schur_) < breakdown) return false;
        negatives_ += detail::sign_count_negative(schur_);
        return true;
    }

    std::vector<std::vector<Scalar>> piv_;
    std::vector<std::vector<Scalar>> lower_;
    std::vector<std::vector<Scalar>> border_factor_;
    Scalar schur_{};
    int negatives_ = 0;
    bool regularized_ = false;
};

} // namespace starnls
