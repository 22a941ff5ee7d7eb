#ifndef ACH_OP_POLY_HPP
#define ACH_OP_POLY_HPP

#include "ach/heisenberg.hpp"
#include "ach/rational.hpp"

#include <map>
#include <string>
#include <utility>

namespace ach {

/// Element of the commutative ring Q(i)[Delta_b, T]: a sparse bivariate
/// polynomial keyed by (Delta_b exponent, T exponent). Also reused for the
/// auxiliary polynomials in the commuting formal symbols (x, y).
class OpPoly {
public:
    using Key = std::pair<unsigned, unsigned>;

    /// Graded lexicographic: total degree first, then (db, t) lexicographic.
    struct KeyOrder {
        bool operator()(const Key& a, const Key& b) const {
            unsigned da = a.first + a.second, db = b.first + b.second;
            if (da != db) return da < db;
            return a < b;
        }
    };

    OpPoly() = default;
    static OpPoly constant(GaussianRational c);
    static OpPoly one() { return constant(GaussianRational(1)); }
    /// c * Delta_b^a T^b
    static OpPoly term(unsigned db, unsigned t, GaussianRational c);
    static OpPoly delta_b() { return term(1, 0, GaussianRational(1)); }
    /// i*T as a single term
    static OpPoly iT() { return term(0, 1, GaussianRational::i()); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, GaussianRational, KeyOrder>& terms() const { return terms_; }
    void add_term(unsigned db, unsigned t, const GaussianRational& c);

    OpPoly operator-() const;
    OpPoly& operator+=(const OpPoly& o);
    OpPoly& operator-=(const OpPoly& o);
    friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
    friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }
    friend OpPoly operator*(const OpPoly& a, const OpPoly& b);
    OpPoly scaled(const GaussianRational& c) const;
    bool operator==(const OpPoly&) const = default;

    /// Substitute Delta_b -> Delta_b + s*iT (T fixed); the commutation shift.
    OpPoly shift_db(const BigRational& s) const;

    /// Formal adjoint: Delta_b and iT are self-adjoint, coefficients conjugate.
    /// Termwise: c Delta_b^a T^b |-> conj(c) (-1)^b Delta_b^a T^b.
    OpPoly adjoint() const;

    /// Substitute x -> Delta_b, y -> iT (reading of the (x, y) polynomials).
    OpPoly substitute_x_db_y_iT() const;

    /// Apply as a differential operator on the flat frame.
    HeisPoly apply(const HeisFrame& frame, const HeisPoly& p) const;

    /// Plain-text rendering, e.g. "Db^2 + T^2" or "x^2 - y^2".
    std::string str(const char* var1 = "Db", const char* var2 = "T") const;

private:
    std::map<Key, GaussianRational, KeyOrder> terms_;
};

enum class QMode { Recurrence, ClosedForm };

/// The polynomials q_l in x, y with parameter k:
///   q_0 = 1, q_1 = x, q_l = x q_{l-1} - (l-1)(k-l+1) y^2 q_{l-2},
/// whose top member factors as q_k = prod_{j=0}^{k-1} (x + (k-1-2j) y).
OpPoly qpoly(unsigned k, QMode mode);

/// Flat-model GJMS operator prod_{j=0}^{k-1} (Delta_b + i(k-1-2j)T), expanded.
/// Requires 1 <= k <= n+1.
OpPoly gjms_product(int n, int k);

/// c_k = 2 (-1)^{k+1} / (k! (k-1)!)
GaussianRational gjms_ck(unsigned k);

}  // namespace ach

#endif
