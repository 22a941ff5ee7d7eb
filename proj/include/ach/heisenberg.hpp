#ifndef ACH_HEISENBERG_HPP
#define ACH_HEISENBERG_HPP

#include "ach/rational.hpp"
#include "ach/report.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ach {

/// Monomial z^{ze} zbar^{zbe} t^{te} on the Heisenberg group of CR dimension n.
/// Ordered graded-lex with the t exponent carrying weight 2 (Heisenberg grading).
struct HeisMono {
    std::vector<std::uint32_t> ze;   // exponents of z^1..z^n
    std::vector<std::uint32_t> zbe;  // exponents of zbar^1..zbar^n
    std::uint32_t te = 0;            // exponent of t

    explicit HeisMono(int n) : ze(n, 0), zbe(n, 0) {}
    std::uint64_t weight() const;
    bool operator==(const HeisMono&) const = default;
    bool operator<(const HeisMono& o) const;
};

/// Exact polynomial in z^1..z^n, zbar^1..zbar^n, t over GaussianRational.
class HeisPoly {
public:
    explicit HeisPoly(int n) : n_(n) {}
    static HeisPoly constant(int n, GaussianRational c);
    static HeisPoly zero(int n) { return HeisPoly(n); }

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<HeisMono, GaussianRational>& terms() const { return terms_; }

    /// Adds c * m, dropping the term if the total coefficient cancels.
    void add_term(const HeisMono& m, const GaussianRational& c);

    HeisPoly operator-() const;
    HeisPoly& operator+=(const HeisPoly& o);
    HeisPoly& operator-=(const HeisPoly& o);
    friend HeisPoly operator+(HeisPoly a, const HeisPoly& b) { return a += b; }
    friend HeisPoly operator-(HeisPoly a, const HeisPoly& b) { return a -= b; }
    friend HeisPoly operator*(const HeisPoly& a, const HeisPoly& b);
    HeisPoly scaled(const GaussianRational& c) const;

    bool operator==(const HeisPoly&) const = default;

    /// Swap z <-> zbar exponents and conjugate coefficients (an involution).
    HeisPoly conj() const;
    bool is_real() const { return *this == conj(); }

    /// If constant, its value (zero polynomial gives 0).
    GaussianRational constant_value() const;

    std::string str() const;

private:
    int n_;
    std::map<HeisMono, GaussianRational> terms_;
};

/// The flat contact frame in the fixed coordinate realization
///   theta = (dt + i sum(z^a dzb^a - zb^a dz^a))/2,
///   T = 2 d/dt,  Z_a = d/dz^a + i zb^a d/dt,  Zb_a = d/dzb^a - i z^a d/dt,
/// so the Levi form is the identity and the torsion vanishes.
struct HeisFrame {
    int n;

    /// Verifies every frame identity symbolically on first construction for
    /// each dimension; an inconsistent realization throws.
    explicit HeisFrame(int n_);

    // index a is 1-based, mirroring the index notation everywhere else
    HeisPoly Z(int a, const HeisPoly& p) const;
    HeisPoly Zb(int a, const HeisPoly& p) const;
    /// Z with the index raised by the Levi form; = Zb for h = identity.
    HeisPoly Zup(int a, const HeisPoly& p) const { return Zb(a, p); }
    HeisPoly T(const HeisPoly& p) const;

    /// Delta_b p = -sum_a (Z_a Zb_a + Zb_a Z_a) p.
    HeisPoly sublaplacian(const HeisPoly& p) const;

    /// Symbolic verification of every frame identity: bracket table,
    /// theta(T) = 1, T -| dtheta = 0, h = -i dtheta(Z, Zb) = id, conjugation.
    Report check_relations() const;
};

/// Parses the expression grammar
///   expr := ['-'] term (('+'|'-') term)*
///   term := factor ('*' factor)*
///   factor := atom ('^' uint)?
///   atom := 'z'uint | 'zb'uint | 't' | 'i' | rational | '(' expr ')'
/// Throws ParseError with a byte offset on syntax errors or indices outside 1..n.
HeisPoly parse_expression(std::string_view text, int n);

/// Tensor with polynomial components on one channel:
/// scalar, one lower holomorphic index, or a symmetric pair of them.
enum class Channel { Scalar, Vector, Sym2 };

class TensorPoly {
public:
    TensorPoly(Channel ch, int n);

    Channel channel() const { return ch_; }
    int dim() const { return n_; }

    const HeisPoly& scalar() const;
    const HeisPoly& vec(int a) const;          // 1-based
    const HeisPoly& sym(int a, int b) const;   // 1-based, order-insensitive
    void set_scalar(HeisPoly p);
    void set_vec(int a, HeisPoly p);
    void set_sym(int a, int b, HeisPoly p);

    bool is_zero() const;
    TensorPoly& operator+=(const TensorPoly& o);
    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    TensorPoly scaled(const GaussianRational& c) const;
    bool operator==(const TensorPoly&) const = default;

    /// Componentwise map.
    template <class F>
    TensorPoly map(F&& f) const {
        TensorPoly r(ch_, n_);
        for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = f(comps_[i]);
        return r;
    }

private:
    Channel ch_;
    int n_;
    std::vector<HeisPoly> comps_;  // scalar: 1; vector: n; sym2: n(n+1)/2
    std::size_t sym_index(int a, int b) const;
};

}  // namespace ach

#endif
