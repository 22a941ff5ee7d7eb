#include "ach/scalar_laplacian.hpp"

namespace ach {

ScalarLaplacian::ScalarLaplacian(int n_, RatSeries b, RatSeries c)
    : n(n_),
      prof_b(std::move(b)),
      prof_c(std::move(c)),
      mu(prof_b.max_order()),
      inv_b(prof_b.max_order()),
      inv_c(prof_c.max_order()) {
    if (!(prof_b.at(0) == BigRational(1)) || !(prof_c.at(0) == BigRational(1)))
        throw MathError("profile series must have constant term 1");
    mu = prof_b.log_derivative() + prof_c.log_derivative().scaled(BigRational(2 * n));
    inv_b = prof_b.inverse();
    inv_c = prof_c.inverse();
}

ScalarLaplacian ScalarLaplacian::flat(int n, int max_order) {
    return ScalarLaplacian(n, RatSeries(max_order, BigRational(1)),
                           RatSeries(max_order, BigRational(1)));
}

EigenResultT<HeisPoly> solve_eigen(int n, int k, const HeisPoly& f, int max_order,
                                   const std::optional<HeisPoly>& f_2k) {
    if (f.dim() != n) throw MathError("boundary data dimension mismatch");
    return solve_eigen_generic(n, k, f, max_order, HeisCoeffOps(n), f_2k);
}

OpPoly extract_gjms(int n, int k) {
    auto r = solve_eigen_generic<OpPoly>(n, k, OpPoly::one(), 2 * k + 2, OpPolyCoeffOps{});
    GaussianRational ck = gjms_ck(static_cast<unsigned>(k));
    return r.g0.scaled(GaussianRational(1) / ck);
}

LogResult solve_log(const ScalarLaplacian& lap, int max_order,
                    const std::optional<GaussianRational>& a_2n2) {
    const int n = lap.n;
    if (max_order < 2 * n + 2) throw MathError("solve_log requires max_order >= 2n+2");
    ShiftedLaplacian<GaussianRational, ConstCoeffOps> op{lap, ConstCoeffOps{}, 0, BigRational(0)};
    RhoSeries<GaussianRational> init(max_order, GaussianRational(0));
    init.set_b(0, GaussianRational(1));  // leading log rho
    RhoSeries<GaussianRational> rhs(max_order, GaussianRational(0));
    rhs.set_a(0, GaussianRational(BigRational(n + 1, 2)));
    std::map<int, GaussianRational> frees;
    if (a_2n2) frees.emplace(2 * n + 2, *a_2n2);
    RhoSeries<GaussianRational> u = solve_formal(op, rhs, init, {0}, frees);
    LogResult r(std::move(u));
    r.n = n;
    r.b0 = r.full.b(2 * n + 2);
    return r;
}

BigRational q_curvature(const ScalarLaplacian& lap, const std::optional<GaussianRational>& a_2n2) {
    const int n = lap.n;
    int order = std::max(2 * n + 2, lap.prof_b.max_order());
    LogResult lr = solve_log(lap, order, a_2n2);
    if (!lr.b0.is_real()) throw MathError("log coefficient is not real");
    BigRational q = lr.b0.re() * BigRational::factorial(static_cast<unsigned>(n)) *
                    BigRational::factorial(static_cast<unsigned>(n) + 1);
    if (n % 2 == 1) q = -q;
    return q;
}

HeisPoly q_transform(int n, const HeisPoly& upsilon) {
    if (upsilon.dim() != n) throw MathError("dimension mismatch");
    OpPoly p = extract_gjms(n, n + 1);
    HeisFrame frame(n);
    return p.apply(frame, upsilon);
}

}  // namespace ach
