#ifndef ACH_VOLUME_HPP
#define ACH_VOLUME_HPP

#include "ach/report.hpp"
#include "ach/rho_series.hpp"
#include "ach/scalar_laplacian.hpp"

#include <map>

namespace ach {

/// Spatially constant normalized-metric profile: the 00-component carries
/// b(rho) and the Levi block c(rho), both with constant term 1.
struct VolumeProfile {
    int n;
    RatSeries b;
    RatSeries c;

    VolumeProfile(int n_, RatSeries b_, RatSeries c_);
    static VolumeProfile flat(int n, int max_order);
    ScalarLaplacian laplacian() const { return ScalarLaplacian(n, b, c); }
};

/// Vol({eps <= rho <= eps0}) = sum_{j=-2n-2}^{-1} c_j eps^j + L log(1/eps) + O(1)
/// per unit boundary volume, from the exact density 2 rho^{-2n-3} sqrt(b) c^n.
struct VolumeExpansion {
    std::map<int, BigRational> c;  // divergent coefficients, keyed by j < 0
    BigRational log_coeff;         // L
};

VolumeExpansion volume_coeffs(const VolumeProfile& profile);

/// L = 2 (-1)^{n+1} / (n!^2 (n+1)!) * n! * Q per unit boundary volume, with L
/// from the volume expansion and Q from the log-term solver: two independent
/// pipelines through the same profile.
Report total_q_check(const VolumeProfile& profile);

}  // namespace ach

#endif
