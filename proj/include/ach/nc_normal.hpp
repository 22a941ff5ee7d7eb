#ifndef ACH_NC_NORMAL_HPP
#define ACH_NC_NORMAL_HPP

#include "ach/heisenberg.hpp"
#include "ach/op_poly.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ach {

/// Raised when a rewrite would leave the closed shape basis.
struct BasisOverflow : MathError {
    explicit BasisOverflow(const std::string& term)
        : MathError("basis overflow: " + term) {}
};

/// The closed shape basis. The first six tags are contraction patterns of a
/// symmetric deformation psi_{ab}; the last three are the same patterns over
/// a plain scalar source f (used when psi = Z_(a Z_b) f is substituted).
enum class Shape {
    Psi,          // psi_{ab}
    ZsymDivPsi,   // Z_(a (Z.psi)_b)
    ZZdivdivPsi,  // Z_a Z_b (Z.Z.psi)
    DivPsi,       // (Z.psi)_a = Z^g psi_{ag}
    ZdivdivPsi,   // Z_a (Z.Z.psi)
    DivDivPsi,    // Z.Z.psi = Z^g Z^d psi_{gd}
    ZZF,          // Z_a Z_b f
    ZF,           // Z_a f
    F,            // f
};

enum class NcSource { PsiDeformation, ScalarFunction };

Channel shape_channel(Shape s);
NcSource shape_source(Shape s);
const char* shape_tag(Shape s);        // JSON tag
Shape shape_from_tag(const std::string& tag);

/// Normal-form operator on a tensor channel: sum of (OpPoly) o (Shape),
/// with every Delta_b / T polynomial collected on the left of its shape.
class NcNormal {
public:
    NcNormal(int n, Channel ch, NcSource src = NcSource::PsiDeformation)
        : n_(n), ch_(ch), src_(src) {}

    /// The identity operator psi |-> psi (or f |-> f).
    static NcNormal identity(int n, NcSource src = NcSource::PsiDeformation);

    int dim() const { return n_; }
    Channel channel() const { return ch_; }
    NcSource source() const { return src_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Shape, OpPoly>& terms() const { return terms_; }
    void add(Shape s, const OpPoly& p);

    NcNormal operator-() const;
    NcNormal& operator+=(const NcNormal& o);
    NcNormal& operator-=(const NcNormal& o);
    friend NcNormal operator+(NcNormal a, const NcNormal& b) { return a += b; }
    friend NcNormal operator-(NcNormal a, const NcNormal& b) { return a -= b; }
    NcNormal scaled(const GaussianRational& c) const;
    bool operator==(const NcNormal&) const = default;

    /// Left composition with a polynomial in Delta_b, T.
    NcNormal poly_mul(const OpPoly& p) const;

    /// Contraction Z^g against the free index (sym2 -> vector -> scalar).
    NcNormal contract() const;

    /// Insertion of a lower Z_a, symmetrized when landing on sym2
    /// (scalar -> vector -> sym2).
    NcNormal insert() const;

    std::string str() const;

private:
    int n_;
    Channel ch_;
    NcSource src_;
    std::map<Shape, OpPoly> terms_;
};

/// A formal composition applied to the source: steps act right-to-left,
/// i.e. steps.back() is applied first.
struct NcContract {};
struct NcInsert {};
using NcStep = std::variant<OpPoly, NcContract, NcInsert>;

struct NcExpr {
    int n;
    std::vector<NcStep> steps;
    NcSource source = NcSource::PsiDeformation;
};

/// Rewrites a formal composition to its unique normal form.
NcNormal nc_normalize(const NcExpr& expr);

/// The word whose normalization reproduces a single basis shape.
NcExpr shape_word(int n, Shape s);

/// Exact evaluation on a concrete polynomial tensor
/// (psi for the deformation source, a scalar f for the function source).
TensorPoly nc_apply(const NcNormal& op, const TensorPoly& input, const HeisFrame& frame);

/// Oracle path: evaluates the raw composition step by step, with no rewriting.
TensorPoly nc_direct_eval(const NcExpr& expr, const TensorPoly& input, const HeisFrame& frame);

/// The three-term closed form of the linearized obstruction operator:
///   (-1)^{n+1}/(n!)^2 [ prod_{k=0}^{n} L_k psi
///                     + 4(n+1)/(n+2) prod_{k=0}^{n-1} L_k Z_(a (Z.psi)_b)
///                     + 4n/(n+2)     prod_{k=0}^{n-2} L_k Z_a Z_b (Z.Z.psi) ],
/// where L_k = Delta_b + i(n+2-2k)T. Requires n >= 2.
NcNormal obstruction_closed_form(int n);

/// prod_{k=0}^{count-1} (Delta_b + i(n+2-2k)T)
OpPoly obstruction_factor_product(int n, int count);

/// Substitute psi = Z_(a Z_b) f: replays each shape's defining word over the
/// scalar-function source, turning an operator on psi into one on f.
NcNormal substitute_kuranishi(const NcNormal& op);

}  // namespace ach

#endif
