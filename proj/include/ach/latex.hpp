#ifndef ACH_LATEX_HPP
#define ACH_LATEX_HPP

#include "ach/nc_normal.hpp"
#include "ach/op_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ach {

/// Factorization of p into c * prod (Delta_b + i m T) with integer m,
/// when one exists.
struct LinearFactorization {
    GaussianRational scalar;
    std::vector<long> ts;  // one m per factor
};

std::optional<LinearFactorization> factor_linear(const OpPoly& p);

/// Factored product form when the polynomial splits into the familiar linear
/// factors, expanded form otherwise.
std::string latex(const OpPoly& p);

std::string latex(const NcNormal& op);

/// Unicode plain-text rendering (Delta_b as a glyph), factored when possible.
std::string pretty_text(const OpPoly& p);
std::string pretty_text(const NcNormal& op);

}  // namespace ach

#endif
