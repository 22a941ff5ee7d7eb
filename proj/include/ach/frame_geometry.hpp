#ifndef ACH_FRAME_GEOMETRY_HPP
#define ACH_FRAME_GEOMETRY_HPP

#include "ach/heisenberg.hpp"
#include "ach/report.hpp"
#include "ach/rho_series.hpp"

#include <string>
#include <vector>

namespace ach {

/// Frame index over {tau, 1..n, taubar, 1bar..nbar}, encoded as
/// 0 = tau, 1..n = a, n+1 = taubar, n+2..2n+1 = abar.
struct FrameIndexing {
    int n;
    explicit FrameIndexing(int n_) : n(n_) {}
    int count() const { return 2 * n + 2; }
    int tau() const { return 0; }
    int hol(int a) const { return a; }          // 1-based
    int taubar() const { return n + 1; }
    int holbar(int a) const { return n + 1 + a; }
    bool is_barred(int p) const { return p > n; }
    bool is_tau_type(int p) const { return p == 0 || p == n + 1; }
    int conj(int p) const { return p <= n ? p + n + 1 : p - n - 1; }
    /// 1-based horizontal index of p, or 0 for a tau-type index.
    int hol_index(int p) const {
        if (is_tau_type(p)) return 0;
        return p <= n ? p : p - n - 1;
    }
    std::string name(int p) const;
    int parse_name(const std::string& s) const;
};

using FrameSeries = RhoSeries<HeisPoly>;

/// Tensor with components over the Theta-frame, each a rho-series of
/// Heisenberg polynomials. Dense storage over all index tuples.
class FrameTensor {
public:
    FrameTensor(int n, int valence, int max_order);

    int dim() const { return n_; }
    int valence() const { return valence_; }
    int max_order() const { return max_order_; }

    const FrameSeries& at(const std::vector<int>& idx) const;
    FrameSeries& at(const std::vector<int>& idx);
    void set(const std::vector<int>& idx, FrameSeries s);

    bool is_zero() const;
    FrameTensor& operator+=(const FrameTensor& o);
    FrameTensor& operator-=(const FrameTensor& o);
    friend FrameTensor operator+(FrameTensor a, const FrameTensor& b) { return a += b; }
    friend FrameTensor operator-(FrameTensor a, const FrameTensor& b) { return a -= b; }
    FrameTensor scaled(const GaussianRational& c) const;
    bool operator==(const FrameTensor&) const = default;

    /// Componentwise complex conjugate composed with index conjugation;
    /// fixed points of this map are the real tensors.
    FrameTensor conjugated() const;

    /// All index tuples in lexicographic order.
    std::vector<std::vector<int>> tuples() const;

private:
    int n_, valence_, max_order_;
    std::vector<FrameSeries> comps_;
    std::size_t flat(const std::vector<int>& idx) const;
};

/// Exact structure constants [Z_P, Z_Q] = c_{PQ}^R Z_R of the model frame
/// (rho-independent) and the constant-component metric, Christoffel symbols,
/// and curvature of the model metric, plus the tensor operations that use them.
class FrameGeometry {
public:
    explicit FrameGeometry(int n);

    int dim() const { return n_; }
    const FrameIndexing& ix() const { return ix_; }

    // -- exact model data -------------------------------------------------
    const GaussianRational& metric(int p, int q) const { return g_[p][q]; }
    const GaussianRational& metric_inv(int p, int q) const { return ginv_[p][q]; }
    const GaussianRational& bracket(int p, int q, int r) const { return brk_[p][q][r]; }
    /// Gamma^R_{PQ} computed from the Koszul formula.
    const GaussianRational& christoffel(int r, int p, int q) const { return gamma_[r][p][q]; }
    /// The tabulated boundary-value Christoffel symbols (exact on the model).
    GaussianRational christoffel_reference(int r, int p, int q) const;
    /// Koszul output == reference table, named per symbol on failure.
    Report check_christoffel() const;

    // -- curvature ---------------------------------------------------------
    /// R_{PQCD} = g(R(Z_P, Z_Q) Z_C, Z_D); constant on the model.
    const GaussianRational& riemann(int p, int q, int c, int d) const {
        return riem_[((static_cast<std::size_t>(p) * N_ + q) * N_ + c) * N_ + d];
    }
    const GaussianRational& ricci(int p, int q) const { return ric_[p][q]; }
    const GaussianRational& scalar_curvature() const { return scal_; }
    FrameTensor curvature_tensor(int max_order) const;
    FrameTensor metric_tensor(int max_order) const;
    /// Ric + (n+2)/2 g = 0, Scal = -(n+1)(n+2), curvature symmetries,
    /// non-Kahler-type components vanish, and the two pinned values.
    Report einstein_check() const;

    // -- frame action and covariant calculus -------------------------------
    /// Z_P acting on a component series: Z_tau = (1/2) rho d_rho + i rho^2 T,
    /// Z_a = rho (horizontal field).
    FrameSeries frame_apply(int p, const FrameSeries& s) const;

    /// Adds the direction slot in front: (grad t)_{P, Q...} = nabla_P t_{Q...}.
    FrameTensor covariant_derivative(const FrameTensor& t) const;

    /// delta sigma = -nabla^P sigma_{P.} for symmetric 2-tensors.
    FrameTensor divergence(const FrameTensor& sigma) const;

    /// g^{PQ} sigma_{PQ}.
    FrameSeries trace(const FrameTensor& sigma) const;

    /// (Delta_L + n + 2) sigma
    ///   = nabla*nabla sigma_{AB} + 2 Ric_{(A}{}^C sigma_{B)C}
    ///     + 2 R_A{}^C{}_B{}^D sigma_{CD} + (n+2) sigma_{AB}.
    FrameTensor lichnerowicz_apply(const FrameTensor& sigma) const;

private:
    int n_;
    FrameIndexing ix_;
    int N_;
    HeisFrame heis_;
    std::vector<std::vector<GaussianRational>> g_, ginv_, ric_;
    std::vector<std::vector<std::vector<GaussianRational>>> brk_, gamma_;
    std::vector<GaussianRational> riem_;
    GaussianRational scal_;

    GaussianRational& riem_at(int p, int q, int c, int d) {
        return riem_[((static_cast<std::size_t>(p) * N_ + q) * N_ + c) * N_ + d];
    }
};

}  // namespace ach

#endif
