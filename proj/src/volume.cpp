#include "ach/volume.hpp"

namespace ach {

VolumeProfile::VolumeProfile(int n_, RatSeries b_, RatSeries c_)
    : n(n_), b(std::move(b_)), c(std::move(c_)) {
    if (!(b.at(0) == BigRational(1)) || !(c.at(0) == BigRational(1)))
        throw MathError("volume profile must have constant term 1");
}

VolumeProfile VolumeProfile::flat(int n, int max_order) {
    return VolumeProfile(n, RatSeries(max_order, BigRational(1)),
                         RatSeries(max_order, BigRational(1)));
}

VolumeExpansion volume_coeffs(const VolumeProfile& profile) {
    const int n = profile.n;
    int m = std::min(profile.b.max_order(), profile.c.max_order());
    if (m < 2 * n + 2) throw MathError("volume profile must be given through rho^{2n+2}");

    // density = 2 rho^{-2n-3} e(rho), e = sqrt(b) c^n
    RatSeries e = profile.b.sqrt_unit();
    for (int i = 0; i < n; ++i) e = e * profile.c;

    VolumeExpansion out;
    out.log_coeff = BigRational(0);
    for (int k = 0; k <= std::min(m, 2 * n + 2); ++k) {
        BigRational coeff = e.at(k) * BigRational(2);
        if (coeff.is_zero()) continue;
        int j = k - 2 * n - 2;  // power of eps after integration (j < 0), or log at j = 0
        if (j < 0)
            out.c[j] = coeff / BigRational(-j);  // -coeff/(k-2n-2)
        else
            out.log_coeff = coeff;
    }
    return out;
}

Report total_q_check(const VolumeProfile& profile) {
    const int n = profile.n;
    Report rep;
    VolumeExpansion vol = volume_coeffs(profile);
    BigRational q = q_curvature(profile.laplacian());
    // 2 (-1)^{n+1} / (n!^2 (n+1)!) * Qbar with Qbar = n! Q per unit volume
    BigRational nfact = BigRational::factorial(static_cast<unsigned>(n));
    BigRational rhs = BigRational(2) * nfact * q /
                      (nfact * nfact * BigRational::factorial(static_cast<unsigned>(n) + 1));
    if (n % 2 == 0) rhs = -rhs;  // (-1)^{n+1}
    rep.add("volume.total_q", "L = 2 (-1)^{n+1}/(n!^2 (n+1)!) Qbar",
            vol.log_coeff == rhs,
            "L = " + vol.log_coeff.str() + ", rhs = " + rhs.str());
    return rep;
}

}  // namespace ach
