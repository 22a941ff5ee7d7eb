#ifndef ACH_LICHNEROWICZ_HPP
#define ACH_LICHNEROWICZ_HPP

#include "ach/frame_geometry.hpp"
#include "ach/nc_normal.hpp"
#include "ach/report.hpp"
#include "ach/rho_series.hpp"

#include <optional>

namespace ach {

/// Leading-order factor of the rho-graded Laplacian acting on a rho^j
/// coefficient, per channel: -(1/4) times a monic quadratic in j.
enum class IndicialChannel { Func, FormTau, FormAlpha, TauTau, TauAlpha, AlphaBeta, TraceAB, TfAB };

struct IndicialPoly {
    BigRational c2, c1, c0;  // c2 j^2 + c1 j + c0
    BigRational eval(int j) const {
        BigRational jj(j);
        return c2 * jj * jj + c1 * jj + c0;
    }
    std::string str() const;
};

IndicialPoly indicial_polynomial(IndicialChannel ch, int n);
IndicialChannel indicial_channel_from_name(const std::string& name);
const char* indicial_channel_name(IndicialChannel ch);

using NcSeries = RhoSeries<NcNormal>;

/// Operator-valued formal solution of the linearized Einstein equation
/// (Delta_L + n + 2) sigma = O(rho^{2n+2}) for the anti-hermitian ansatz with
/// sigma_{ab}|_M = psi_{ab}; coefficients are normal-form operators on psi.
struct LichState {
    int n = 2;
    int max_order = 7;  // 2n+3

    NcSeries tt;  // sigma_{tau tau}   (scalar channel)
    NcSeries ta;  // sigma_{tau a}     (vector channel)
    NcSeries ab;  // sigma_{a b}       (sym2 channel)

    NcSeries res_tt, res_ta, res_ab;  // channel residuals of (Delta_L + n+2) sigma
    NcSeries div_t, div_a;            // channel components of delta sigma

    NcNormal k_ab;  // residual coefficient at rho^{2n+2} in the ab channel
    NcNormal k_ta;  // residual coefficient at rho^{2n+3} in the ta channel

    Report checks;

    LichState(int n_, int m, const NcNormal& zs, const NcNormal& zv, const NcNormal& zt)
        : n(n_), max_order(m), tt(m, zs), ta(m, zv), ab(m, zt),
          res_tt(m, zs), res_ta(m, zv), res_ab(m, zt),
          div_t(m, zs), div_a(m, zv), k_ab(zt), k_ta(zv) {}
};

/// Runs the order-by-order solve through rho^{2n+1}, leaves the free
/// rho^{2n+2} slot of sigma_{ab} at `ab_free_slot` (zero by default), and
/// applies the divergence refinement fixing the rho^{2n+2}, rho^{2n+3} slots
/// of sigma_{tau tau} and sigma_{tau a} so that delta sigma = O(rho^{2n+4}).
LichState solve_lichnerowicz(int n, int max_order = -1,
                             const std::optional<NcNormal>& ab_free_slot = std::nullopt);

/// -(residual at rho^{2n+2} in the ab channel); the caller compares it with
/// obstruction_closed_form. Also validates the two divergence identities
/// 2 Z^b k^{(2n+2)}_{ab} = k^{(2n+3)}_{ta} and Z^a k^{(2n+3)}_{ta} = 0.
struct ObstructionResult {
    NcNormal op;     // the extracted operator
    NcNormal k_ta;   // emitted alongside
    Report checks;
    ObstructionResult(NcNormal o, NcNormal k) : op(std::move(o)), k_ta(std::move(k)) {}
};

ObstructionResult extract_obstruction(int n);
ObstructionResult extract_obstruction(const LichState& st);

/// (i) the composition with the Kuranishi-wiggle operator D f = Z_(a Z_b) f is
/// the zero normal form, (ii) so is the double contraction Z^a Z^b composed
/// with the operator, (iii) polynomial spot checks on `trials` random inputs.
Report check_complex_property(int n, int trials, std::uint64_t seed = 0);

/// Materializes the operator-valued solution (or its residual channels) on a
/// concrete deformation psi as a real anti-hermitian frame tensor.
FrameTensor materialize_sigma(const LichState& st, const TensorPoly& psi);
FrameTensor materialize_residual(const LichState& st, const TensorPoly& psi);
FrameTensor materialize_divergence(const LichState& st, const TensorPoly& psi);

}  // namespace ach

#endif
