#ifndef ACH_SCALAR_LAPLACIAN_HPP
#define ACH_SCALAR_LAPLACIAN_HPP

#include "ach/heisenberg.hpp"
#include "ach/op_poly.hpp"
#include "ach/rho_series.hpp"

#include <map>
#include <optional>
#include <set>

namespace ach {

/// The Laplacian of a normalized metric 4 drho^2/rho^2 + k_rho with
/// spatially constant profile:  (k_rho)_00 = b(rho), (k_rho)_{a bbar} = c(rho) h,
/// acting on rho-series:
///   Delta = -1/4 (rho d_rho)^2 + (n+1)/2 rho d_rho
///           - 1/8 (rho d_rho log(b c^{2n})) rho d_rho
///           + rho^2 c^{-1} Delta_b - rho^4 b^{-1} T^2.
/// The flat profile b = c = 1 reproduces
///   -1/4 (rho d_rho)^2 + (n+1)/2 rho d_rho + rho^2 Delta_b - rho^4 T^2 exactly.
struct ScalarLaplacian {
    int n;
    RatSeries prof_b;
    RatSeries prof_c;
    RatSeries mu;     // rho d_rho log(b c^{2n})
    RatSeries inv_b;
    RatSeries inv_c;

    ScalarLaplacian(int n_, RatSeries b, RatSeries c);
    static ScalarLaplacian flat(int n, int max_order);
};

// Coefficient policies: how Delta_b and T act on series coefficients.

struct HeisCoeffOps {
    HeisFrame frame;
    explicit HeisCoeffOps(int n) : frame(n) {}
    HeisPoly db(const HeisPoly& p) const { return frame.sublaplacian(p); }
    HeisPoly t(const HeisPoly& p) const { return frame.T(p); }
    HeisPoly zero() const { return HeisPoly(frame.n); }
};

struct OpPolyCoeffOps {
    OpPoly db(const OpPoly& p) const { return OpPoly::delta_b() * p; }
    OpPoly t(const OpPoly& p) const { return OpPoly::term(0, 1, GaussianRational(1)) * p; }
    OpPoly zero() const { return OpPoly(); }
};

/// Spatially constant data: the horizontal operators act as zero.
struct ConstCoeffOps {
    GaussianRational db(const GaussianRational&) const { return GaussianRational(0); }
    GaussianRational t(const GaussianRational&) const { return GaussianRational(0); }
    GaussianRational zero() const { return GaussianRational(0); }
};

/// rho^{-base} (Delta - lambda) rho^{base} acting on rho-series with
/// coefficients in C. `lambda` is the eigenvalue shift s(n+1-s).
template <class C, class Ops>
struct ShiftedLaplacian {
    const ScalarLaplacian& lap;
    Ops ops;
    int base = 0;
    BigRational lambda;

    BigRational phi(int j) const {
        BigRational w(base + j);
        return BigRational(-1, 4) * w * w + BigRational(lap.n + 1, 2) * w - lambda;
    }
    BigRational phi_prime(int j) const {
        BigRational w(base + j);
        return BigRational(-1, 2) * w + BigRational(lap.n + 1, 2);
    }

    RhoSeries<C> apply(const RhoSeries<C>& u) const {
        const int m = u.max_order();
        RhoSeries<C> r(m, ops.zero());
        for (int j = 0; j <= m; ++j) {
            const C& aj = u.a(j);
            const C& bj = u.b(j);
            const bool a0 = aj.is_zero(), b0 = bj.is_zero();
            if (a0 && b0) continue;
            const BigRational w(base + j);

            // indicial block
            r.add_a(j, aj.scaled(GaussianRational(phi(j))));
            r.add_a(j, bj.scaled(GaussianRational(phi_prime(j))));
            r.add_b(j, bj.scaled(GaussianRational(phi(j))));

            // -1/8 mu(rho) rho d_rho
            for (int d = 0; d + j <= m && d <= lap.mu.max_order(); ++d) {
                const BigRational& mud = lap.mu.at(d);
                if (mud.is_zero()) continue;
                GaussianRational c8{mud * BigRational(-1, 8)};
                r.add_a(j + d, aj.scaled(GaussianRational(w) * c8));
                r.add_a(j + d, bj.scaled(c8));
                r.add_b(j + d, bj.scaled(GaussianRational(w) * c8));
            }

            // rho^2 c^{-1} Delta_b
            if (!a0 || !b0) {
                C dba = ops.db(aj);
                C dbb = ops.db(bj);
                for (int d = 0; j + 2 + d <= m && d <= lap.inv_c.max_order(); ++d) {
                    const BigRational& cd = lap.inv_c.at(d);
                    if (cd.is_zero()) continue;
                    GaussianRational g{cd};
                    r.add_a(j + 2 + d, dba.scaled(g));
                    r.add_b(j + 2 + d, dbb.scaled(g));
                }
                // -rho^4 b^{-1} T^2
                C tta = ops.t(ops.t(aj));
                C ttb = ops.t(ops.t(bj));
                for (int d = 0; j + 4 + d <= m && d <= lap.inv_b.max_order(); ++d) {
                    const BigRational& bd = lap.inv_b.at(d);
                    if (bd.is_zero()) continue;
                    GaussianRational g{-bd};
                    r.add_a(j + 4 + d, tta.scaled(g));
                    r.add_b(j + 4 + d, ttb.scaled(g));
                }
            }
        }
        return r;
    }
};

/// Order-by-order formal solve of (Delta - lambda)(rho^base u) = rho^base rhs.
/// Slots listed in `fixed` are taken from `init` as-is. At an indicial root
/// (phi = 0) the a-slot is free: it is taken from `free_a` when present, zero
/// otherwise, and the log slot picks up the data. A genuinely unsolvable order
/// (log^2 needed, or phi = phi' = 0) throws MathError.
template <class C, class Ops>
RhoSeries<C> solve_formal(const ShiftedLaplacian<C, Ops>& op, const RhoSeries<C>& rhs,
                          const RhoSeries<C>& init, const std::set<int>& fixed,
                          const std::map<int, C>& free_a = {}) {
    RhoSeries<C> u = init;
    const int m = u.max_order();
    for (int j = 0; j <= m; ++j) {
        RhoSeries<C> res = op.apply(u);
        res -= rhs;
        C ra = res.a(j);
        C rb = res.b(j);
        if (fixed.count(j)) {
            if (!ra.is_zero() || !rb.is_zero())
                throw MathError("formal solve: prescribed slot " + std::to_string(j) +
                                " is inconsistent with the equation");
            continue;
        }
        BigRational p = op.phi(j);
        BigRational dp = op.phi_prime(j);
        if (!p.is_zero()) {
            GaussianRational inv{BigRational(-1) / p};
            C bj = rb.scaled(inv);
            ra += bj.scaled(GaussianRational(dp));
            C aj = ra.scaled(inv);
            u.set_a(j, std::move(aj));
            u.set_b(j, std::move(bj));
        } else {
            if (!rb.is_zero())
                throw MathError("formal solve: log^2 term required at order " + std::to_string(j));
            if (dp.is_zero())
                throw MathError("formal solve: degenerate indicial root at order " + std::to_string(j));
            // A free a-slot multiplies the vanishing indicial factor, so it
            // feeds the equation only at higher orders; ra is unaffected.
            if (auto it = free_a.find(j); it != free_a.end()) u.set_a(j, it->second);
            u.set_b(j, ra.scaled(GaussianRational(BigRational(-1) / dp)));
        }
    }
    return u;
}

/// Solution of (Delta - ((n+1)^2 - k^2)/4) u = 0 in the shape
/// u = rho^{n+1-k} F + rho^{n+1+k} log(rho) G, F|_M = f. F carries the plain
/// slots, G the log slots shifted by 2k; the free slot f^{(2k)} defaults to 0.
template <class C>
struct EigenResultT {
    int n = 0, k = 0, base = 0;
    RhoSeries<C> full;  // a = F-coefficients, b at 2k+m = G-coefficients
    C g0;               // G|_M

    explicit EigenResultT(RhoSeries<C> u) : full(std::move(u)), g0(full.zero_elem()) {}

    C f_coeff(int j) const { return full.a(j); }
    C g_coeff(int mm) const {
        return 2 * k + mm <= full.max_order() ? full.b(2 * k + mm) : full.zero_elem();
    }
};

template <class C, class Ops>
EigenResultT<C> solve_eigen_generic(int n, int k, const C& f, int max_order, const Ops& ops,
                                    const std::optional<C>& f_2k = std::nullopt) {
    if (k < 1 || k > n + 1) throw MathError("solve_eigen requires 1 <= k <= n+1");
    if (max_order < 2 * k) throw MathError("solve_eigen requires max_order >= 2k");
    ScalarLaplacian lap = ScalarLaplacian::flat(n, max_order);
    BigRational lambda = BigRational((n + 1) * (n + 1) - k * k, 4);
    ShiftedLaplacian<C, Ops> op{lap, ops, n + 1 - k, lambda};
    RhoSeries<C> init(max_order, ops.zero());
    init.set_a(0, f);
    std::map<int, C> frees;
    if (f_2k) frees.emplace(2 * k, *f_2k);
    RhoSeries<C> u = solve_formal(op, RhoSeries<C>(max_order, ops.zero()), init, {0}, frees);
    EigenResultT<C> r(std::move(u));
    r.n = n;
    r.k = k;
    r.base = n + 1 - k;
    r.g0 = r.full.b(2 * k);
    return r;
}

EigenResultT<HeisPoly> solve_eigen(int n, int k, const HeisPoly& f, int max_order,
                                   const std::optional<HeisPoly>& f_2k = std::nullopt);

/// Operator-valued run of the eigen recursion: the operator P with
/// G|_M = c_k P f. Compared against gjms_product by callers; no check here.
OpPoly extract_gjms(int n, int k);

/// Solution of Delta U = (n+1)/2 with U = log rho + A + B rho^{2n+2} log rho,
/// A|_M = 0; the ambiguity slot a^{(2n+2)} defaults to 0.
struct LogResult {
    int n = 0;
    RhoSeries<GaussianRational> full;  // a = A-coefficients; b(0) = 1 is log rho
    GaussianRational b0;               // B|_M = b(2n+2)

    explicit LogResult(RhoSeries<GaussianRational> u) : full(std::move(u)) {}
};

LogResult solve_log(const ScalarLaplacian& lap, int max_order,
                    const std::optional<GaussianRational>& a_2n2 = std::nullopt);

/// Q = (-1)^n n! (n+1)! B|_M for the given spatially constant profile.
BigRational q_curvature(const ScalarLaplacian& lap,
                        const std::optional<GaussianRational>& a_2n2 = std::nullopt);

/// P_{2n+2} Upsilon: the additive part of the transformation rule of Q under
/// a contact-form rescaling, evaluated through the operator recursion.
HeisPoly q_transform(int n, const HeisPoly& upsilon);

}  // namespace ach

#endif
