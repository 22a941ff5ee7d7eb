#include "ach/frame_geometry.hpp"

namespace ach {

std::string FrameIndexing::name(int p) const {
    if (p == 0) return "t";
    if (p == n + 1) return "bt";
    if (p <= n) return std::to_string(p);
    return "b" + std::to_string(p - n - 1);
}

int FrameIndexing::parse_name(const std::string& s) const {
    if (s == "t") return 0;
    if (s == "bt") return n + 1;
    bool barred = !s.empty() && s[0] == 'b';
    std::string digits = barred ? s.substr(1) : s;
    int a = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') throw MathError("bad frame index name: " + s);
        a = a * 10 + (c - '0');
    }
    if (a < 1 || a > n) throw MathError("frame index out of range: " + s);
    return barred ? holbar(a) : hol(a);
}

FrameTensor::FrameTensor(int n, int valence, int max_order)
    : n_(n), valence_(valence), max_order_(max_order) {
    std::size_t count = 1;
    for (int i = 0; i < valence; ++i) count *= static_cast<std::size_t>(2 * n + 2);
    comps_.assign(count, FrameSeries(max_order, HeisPoly(n)));
}

std::size_t FrameTensor::flat(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != valence_) throw MathError("frame tensor valence mismatch");
    std::size_t f = 0;
    for (int i : idx) {
        if (i < 0 || i >= 2 * n_ + 2) throw MathError("frame index out of range");
        f = f * static_cast<std::size_t>(2 * n_ + 2) + static_cast<std::size_t>(i);
    }
    return f;
}

const FrameSeries& FrameTensor::at(const std::vector<int>& idx) const { return comps_[flat(idx)]; }
FrameSeries& FrameTensor::at(const std::vector<int>& idx) { return comps_[flat(idx)]; }
void FrameTensor::set(const std::vector<int>& idx, FrameSeries s) { comps_[flat(idx)] = std::move(s); }

bool FrameTensor::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

FrameTensor& FrameTensor::operator+=(const FrameTensor& o) {
    if (o.n_ != n_ || o.valence_ != valence_) throw MathError("frame tensor mismatch");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

FrameTensor& FrameTensor::operator-=(const FrameTensor& o) {
    if (o.n_ != n_ || o.valence_ != valence_) throw MathError("frame tensor mismatch");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
}

FrameTensor FrameTensor::scaled(const GaussianRational& c) const {
    FrameTensor r(n_, valence_, max_order_);
    for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i].scaled(c);
    return r;
}

std::vector<std::vector<int>> FrameTensor::tuples() const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(valence_, 0);
    const int N = 2 * n_ + 2;
    for (;;) {
        out.push_back(cur);
        int i = valence_ - 1;
        while (i >= 0 && ++cur[i] == N) cur[i--] = 0;
        if (i < 0) break;
    }
    if (valence_ == 0) out.assign(1, {});
    return out;
}

FrameTensor FrameTensor::conjugated() const {
    FrameIndexing ix(n_);
    FrameTensor r(n_, valence_, max_order_);
    for (const auto& idx : tuples()) {
        std::vector<int> cidx;
        cidx.reserve(idx.size());
        for (int p : idx) cidx.push_back(ix.conj(p));
        r.set(cidx, at(idx).map([](const HeisPoly& p) { return p.conj(); }));
    }
    return r;
}

// ---------------------------------------------------------------------------

FrameGeometry::FrameGeometry(int n)
    : n_(n), ix_(n), N_(2 * n + 2), heis_(n) {
    const GaussianRational zero(0), one(1), half(BigRational(1, 2));

    g_.assign(N_, std::vector<GaussianRational>(N_, zero));
    ginv_ = g_;
    g_[ix_.tau()][ix_.taubar()] = GaussianRational(2);
    g_[ix_.taubar()][ix_.tau()] = GaussianRational(2);
    ginv_[ix_.tau()][ix_.taubar()] = half;
    ginv_[ix_.taubar()][ix_.tau()] = half;
    for (int a = 1; a <= n; ++a) {
        g_[ix_.hol(a)][ix_.holbar(a)] = one;
        g_[ix_.holbar(a)][ix_.hol(a)] = one;
        ginv_[ix_.hol(a)][ix_.holbar(a)] = one;
        ginv_[ix_.holbar(a)][ix_.hol(a)] = one;
    }

    // Structure constants of the model frame; exactly rho-independent.
    brk_.assign(N_, std::vector<std::vector<GaussianRational>>(
                        N_, std::vector<GaussianRational>(N_, zero)));
    const int tau = ix_.tau(), tb = ix_.taubar();
    auto set_brk = [&](int p, int q, int r, const GaussianRational& v) {
        brk_[p][q][r] += v;
        brk_[q][p][r] -= v;
    };
    // [Z_tau, Z_taubar] = -(Z_tau - Z_taubar)
    set_brk(tau, tb, tau, -one);
    set_brk(tau, tb, tb, one);
    for (int a = 1; a <= n; ++a) {
        // [Z_tau, Z_a] = (1/2) Z_a and conjugates
        set_brk(tau, ix_.hol(a), ix_.hol(a), half);
        set_brk(tau, ix_.holbar(a), ix_.holbar(a), half);
        set_brk(tb, ix_.hol(a), ix_.hol(a), half);
        set_brk(tb, ix_.holbar(a), ix_.holbar(a), half);
        // [Z_a, Z_bbar] = -(1/2) h_{a bbar} (Z_tau - Z_taubar)
        set_brk(ix_.hol(a), ix_.holbar(a), tau, -half);
        set_brk(ix_.hol(a), ix_.holbar(a), tb, half);
    }

    // Koszul formula with the constant metric: only the bracket terms remain.
    auto lower_brk = [&](int p, int q, int r) {
        GaussianRational acc(0);
        for (int s = 0; s < N_; ++s) {
            if (g_[r][s].is_zero() || brk_[p][q][s].is_zero()) continue;
            acc += g_[r][s] * brk_[p][q][s];
        }
        return acc;
    };
    gamma_.assign(N_, std::vector<std::vector<GaussianRational>>(
                          N_, std::vector<GaussianRational>(N_, zero)));
    for (int p = 0; p < N_; ++p) {
        for (int q = 0; q < N_; ++q) {
            for (int r = 0; r < N_; ++r) {
                GaussianRational low =
                    (lower_brk(p, q, r) - lower_brk(p, r, q) - lower_brk(q, r, p))
                        .scaled(half);
                if (low.is_zero()) continue;
                for (int s = 0; s < N_; ++s) {
                    if (ginv_[s][r].is_zero()) continue;
                    gamma_[s][p][q] += ginv_[s][r] * low;
                }
            }
        }
    }

    // Curvature of the model: R(X,Y)Z = grad_X grad_Y Z - grad_Y grad_X Z
    // - grad_{[X,Y]} Z with constant Christoffel symbols.
    riem_.assign(static_cast<std::size_t>(N_) * N_ * N_ * N_, zero);
    for (int p = 0; p < N_; ++p) {
        for (int q = 0; q < N_; ++q) {
            for (int c = 0; c < N_; ++c) {
                for (int e = 0; e < N_; ++e) {
                    GaussianRational acc(0);
                    for (int s = 0; s < N_; ++s) {
                        if (!gamma_[s][q][c].is_zero() && !gamma_[e][p][s].is_zero())
                            acc += gamma_[s][q][c] * gamma_[e][p][s];
                        if (!gamma_[s][p][c].is_zero() && !gamma_[e][q][s].is_zero())
                            acc -= gamma_[s][p][c] * gamma_[e][q][s];
                        if (!brk_[p][q][s].is_zero() && !gamma_[e][s][c].is_zero())
                            acc -= brk_[p][q][s] * gamma_[e][s][c];
                    }
                    if (acc.is_zero()) continue;
                    for (int d = 0; d < N_; ++d) {
                        if (g_[e][d].is_zero()) continue;
                        riem_at(p, q, c, d) += acc * g_[e][d];
                    }
                }
            }
        }
    }

    ric_.assign(N_, std::vector<GaussianRational>(N_, zero));
    for (int q = 0; q < N_; ++q)
        for (int c = 0; c < N_; ++c) {
            GaussianRational acc(0);
            for (int p = 0; p < N_; ++p)
                for (int s = 0; s < N_; ++s) {
                    if (ginv_[p][s].is_zero()) continue;
                    const GaussianRational& r4 = riemann(p, q, c, s);
                    if (!r4.is_zero()) acc += ginv_[p][s] * r4;
                }
            ric_[q][c] = acc;
        }

    scal_ = GaussianRational(0);
    for (int q = 0; q < N_; ++q)
        for (int c = 0; c < N_; ++c) {
            if (ginv_[q][c].is_zero() || ric_[q][c].is_zero()) continue;
            scal_ += ginv_[q][c] * ric_[q][c];
        }
}

GaussianRational FrameGeometry::christoffel_reference(int r, int p, int q) const {
    const GaussianRational zero(0), one(1), half(BigRational(1, 2));
    const int tau = ix_.tau(), tb = ix_.taubar();

    if (ix_.is_barred(q))
        return christoffel_reference(ix_.conj(r), ix_.conj(p), ix_.conj(q)).conj();
    // q is tau or holomorphic; Gamma_{C P B} = 0 kills every barred upper index here.
    if (ix_.is_barred(r)) return zero;

    if (q == tau) {
        if (r == tau) {
            if (p == tau) return -one;
            if (p == tb) return one;
            return zero;
        }
        return (p == r) ? -one : zero;  // Gamma^g_{a tau} = -delta_a^g
    }
    // q = beta holomorphic
    if (r == tau) {
        if (ix_.is_barred(p) && !ix_.is_tau_type(p))
            return (ix_.hol_index(p) == ix_.hol_index(q)) ? half : zero;  // (1/2) h_{b abar}
        return zero;
    }
    // r = gamma holomorphic
    if (p == tau) return (r == q) ? -half : zero;
    if (p == tb) return (r == q) ? half : zero;
    return zero;
}

Report FrameGeometry::check_christoffel() const {
    Report rep;
    bool all = true;
    std::string first_bad;
    for (int r = 0; r < N_; ++r)
        for (int p = 0; p < N_; ++p)
            for (int q = 0; q < N_; ++q) {
                if (gamma_[r][p][q] == christoffel_reference(r, p, q)) continue;
                all = false;
                if (first_bad.empty())
                    first_bad = "Gamma^" + ix_.name(r) + "_{" + ix_.name(p) + "," + ix_.name(q) + "}";
            }
    rep.add("frame.christoffel_table", "Koszul Christoffel symbols match the tabulated values",
            all, first_bad);
    return rep;
}

FrameTensor FrameGeometry::metric_tensor(int max_order) const {
    FrameTensor t(n_, 2, max_order);
    for (int p = 0; p < N_; ++p)
        for (int q = 0; q < N_; ++q) {
            if (g_[p][q].is_zero()) continue;
            FrameSeries s(max_order, HeisPoly(n_));
            s.set_a(0, HeisPoly::constant(n_, g_[p][q]));
            t.set({p, q}, std::move(s));
        }
    return t;
}

FrameTensor FrameGeometry::curvature_tensor(int max_order) const {
    FrameTensor t(n_, 4, max_order);
    for (const auto& idx : t.tuples()) {
        const GaussianRational& v = riemann(idx[0], idx[1], idx[2], idx[3]);
        if (v.is_zero()) continue;
        FrameSeries s(max_order, HeisPoly(n_));
        s.set_a(0, HeisPoly::constant(n_, v));
        t.set(idx, std::move(s));
    }
    return t;
}

Report FrameGeometry::einstein_check() const {
    Report rep;
    const int tau = ix_.tau(), tb = ix_.taubar();

    bool einstein = true;
    GaussianRational factor(BigRational(-(n_ + 2), 2));
    for (int p = 0; p < N_; ++p)
        for (int q = 0; q < N_; ++q)
            if (!(ric_[p][q] == factor * g_[p][q])) einstein = false;
    rep.add("curv.einstein", "Ric + ((n+2)/2) g = 0", einstein);

    rep.add("curv.scal", "Scal = -(n+1)(n+2)",
            scal_ == GaussianRational(static_cast<long>(-(n_ + 1) * (n_ + 2))));

    bool kahler = true;
    for (int p = 0; p < N_ && kahler; ++p)
        for (int q = 0; q < N_ && kahler; ++q)
            for (int c = 0; c < N_ && kahler; ++c)
                for (int d = 0; d < N_ && kahler; ++d) {
                    bool pair12 = ix_.is_barred(p) != ix_.is_barred(q);
                    bool pair34 = ix_.is_barred(c) != ix_.is_barred(d);
                    if (!pair12 || !pair34)
                        if (!riemann(p, q, c, d).is_zero()) kahler = false;
                }
    rep.add("curv.kahler_type", "non-Kahler-type curvature components vanish at rho = 0", kahler);

    bool prop_formula = true;
    for (int a = 0; a < N_; ++a)
        for (int b = 0; b < N_; ++b)
            for (int c = 0; c < N_; ++c)
                for (int d = 0; d < N_; ++d) {
                    if (ix_.is_barred(a) || !ix_.is_barred(b) || ix_.is_barred(c) ||
                        !ix_.is_barred(d))
                        continue;
                    GaussianRational expect =
                        (g_[a][b] * g_[c][d] + g_[a][d] * g_[c][b])
                            .scaled(GaussianRational(BigRational(-1, 2)));
                    if (!(riemann(a, b, c, d) == expect)) prop_formula = false;
                }
    rep.add("curv.boundary_formula", "R_{A Bbar C Dbar} = -(1/2)(g_{A Bbar} g_{C Dbar} + g_{A Dbar} g_{C Bbar})",
            prop_formula);

    rep.add("curv.pinned_tau", "R_{tau taubar tau taubar} = -4",
            riemann(tau, tb, tau, tb) == GaussianRational(-4));
    if (n_ >= 1) {
        rep.add("curv.pinned_11", "R_{1 1bar 1 1bar} = -1",
                riemann(ix_.hol(1), ix_.holbar(1), ix_.hol(1), ix_.holbar(1)) ==
                    GaussianRational(-1));
    }

    bool bianchi = true, pair_sym = true, antisym = true;
    for (int p = 0; p < N_; ++p)
        for (int q = 0; q < N_; ++q)
            for (int c = 0; c < N_; ++c)
                for (int d = 0; d < N_; ++d) {
                    GaussianRational cyc = riemann(p, q, c, d);
                    cyc += riemann(q, c, p, d);
                    cyc += riemann(c, p, q, d);
                    if (!cyc.is_zero()) bianchi = false;
                    if (!(riemann(p, q, c, d) == riemann(c, d, p, q))) pair_sym = false;
                    if (!(riemann(p, q, c, d) == -riemann(q, p, c, d))) antisym = false;
                }
    rep.add("curv.bianchi", "first Bianchi identity R_{[PQC]D} = 0", bianchi);
    rep.add("curv.pair_symmetry", "R_{PQCD} = R_{CDPQ}", pair_sym);
    rep.add("curv.antisymmetry", "R_{PQCD} = -R_{QPCD}", antisym);
    return rep;
}

FrameSeries FrameGeometry::frame_apply(int p, const FrameSeries& s) const {
    const GaussianRational half(BigRational(1, 2));
    const GaussianRational i = GaussianRational::i();
    if (p == ix_.tau() || p == ix_.taubar()) {
        FrameSeries r = s.rho_d_rho().scaled(half);
        FrameSeries ts = s.map([&](const HeisPoly& c) { return heis_.T(c); }).shifted(2);
        r += ts.scaled(p == ix_.tau() ? i : -i);
        return r;
    }
    int a = ix_.hol_index(p);
    if (ix_.is_barred(p))
        return s.map([&](const HeisPoly& c) { return heis_.Zb(a, c); }).shifted(1);
    return s.map([&](const HeisPoly& c) { return heis_.Z(a, c); }).shifted(1);
}

FrameTensor FrameGeometry::covariant_derivative(const FrameTensor& t) const {
    FrameTensor r(n_, t.valence() + 1, t.max_order());
    for (const auto& idx : t.tuples()) {
        const FrameSeries& comp = t.at(idx);
        bool comp_zero = comp.is_zero();
        for (int p = 0; p < N_; ++p) {
            std::vector<int> out;
            out.reserve(idx.size() + 1);
            out.push_back(p);
            out.insert(out.end(), idx.begin(), idx.end());
            FrameSeries acc = comp_zero ? FrameSeries(t.max_order(), HeisPoly(n_))
                                        : frame_apply(p, comp);
            for (std::size_t slot = 0; slot < idx.size(); ++slot) {
                for (int s = 0; s < N_; ++s) {
                    const GaussianRational& gam = gamma_[s][p][idx[slot]];
                    if (gam.is_zero()) continue;
                    std::vector<int> sub = idx;
                    sub[slot] = s;
                    const FrameSeries& other = t.at(sub);
                    if (other.is_zero()) continue;
                    acc -= other.scaled(gam);
                }
            }
            r.set(out, std::move(acc));
        }
    }
    return r;
}

FrameTensor FrameGeometry::divergence(const FrameTensor& sigma) const {
    if (sigma.valence() != 2) throw MathError("divergence expects a 2-tensor");
    FrameTensor grad = covariant_derivative(sigma);
    FrameTensor r(n_, 1, sigma.max_order());
    for (int q = 0; q < N_; ++q) {
        FrameSeries acc(sigma.max_order(), HeisPoly(n_));
        for (int p = 0; p < N_; ++p)
            for (int s = 0; s < N_; ++s) {
                if (ginv_[p][s].is_zero()) continue;
                const FrameSeries& g3 = grad.at({p, s, q});
                if (g3.is_zero()) continue;
                acc += g3.scaled(-ginv_[p][s]);
            }
        r.set({q}, std::move(acc));
    }
    return r;
}

FrameSeries FrameGeometry::trace(const FrameTensor& sigma) const {
    if (sigma.valence() != 2) throw MathError("trace expects a 2-tensor");
    FrameSeries acc(sigma.max_order(), HeisPoly(n_));
    for (int p = 0; p < N_; ++p)
        for (int q = 0; q < N_; ++q) {
            if (ginv_[p][q].is_zero()) continue;
            const FrameSeries& c = sigma.at({p, q});
            if (c.is_zero()) continue;
            acc += c.scaled(ginv_[p][q]);
        }
    return acc;
}

FrameTensor FrameGeometry::lichnerowicz_apply(const FrameTensor& sigma) const {
    if (sigma.valence() != 2) throw MathError("lichnerowicz expects a 2-tensor");
    const int m = sigma.max_order();
    FrameTensor d2 = covariant_derivative(covariant_derivative(sigma));

    // Ric_A{}^C and R_A{}^C{}_B{}^D with the indices raised by the model metric.
    std::vector<std::vector<GaussianRational>> ric_up(
        N_, std::vector<GaussianRational>(N_, GaussianRational(0)));
    for (int a = 0; a < N_; ++a)
        for (int c = 0; c < N_; ++c)
            for (int s = 0; s < N_; ++s) {
                if (ginv_[c][s].is_zero() || ric_[a][s].is_zero()) continue;
                ric_up[a][c] += ginv_[c][s] * ric_[a][s];
            }

    FrameTensor out(n_, 2, m);
    for (int a = 0; a < N_; ++a) {
        for (int b = 0; b < N_; ++b) {
            FrameSeries acc(m, HeisPoly(n_));
            // nabla* nabla = -g^{PQ} nabla_P nabla_Q
            for (int p = 0; p < N_; ++p)
                for (int q = 0; q < N_; ++q) {
                    if (ginv_[p][q].is_zero()) continue;
                    const FrameSeries& c4 = d2.at({p, q, a, b});
                    if (c4.is_zero()) continue;
                    acc += c4.scaled(-ginv_[p][q]);
                }
            // + Ric_A^C sigma_BC + Ric_B^C sigma_AC
            for (int c = 0; c < N_; ++c) {
                if (!ric_up[a][c].is_zero()) {
                    const FrameSeries& s2 = sigma.at({b, c});
                    if (!s2.is_zero()) acc += s2.scaled(ric_up[a][c]);
                }
                if (!ric_up[b][c].is_zero()) {
                    const FrameSeries& s2 = sigma.at({a, c});
                    if (!s2.is_zero()) acc += s2.scaled(ric_up[b][c]);
                }
            }
            // + 2 R_A^C_B^D sigma_CD
            for (int c = 0; c < N_; ++c)
                for (int d = 0; d < N_; ++d) {
                    const FrameSeries& s2 = sigma.at({c, d});
                    if (s2.is_zero()) continue;
                    GaussianRational rup(0);
                    for (int x = 0; x < N_; ++x) {
                        if (ginv_[c][x].is_zero()) continue;
                        for (int y = 0; y < N_; ++y) {
                            if (ginv_[d][y].is_zero()) continue;
                            const GaussianRational& r4 = riemann(a, x, b, y);
                            if (!r4.is_zero()) rup += ginv_[c][x] * ginv_[d][y] * r4;
                        }
                    }
                    if (!rup.is_zero()) acc += s2.scaled(rup.scaled(GaussianRational(2)));
                }
            // + (n+2) sigma_AB
            const FrameSeries& s0 = sigma.at({a, b});
            if (!s0.is_zero()) acc += s0.scaled(GaussianRational(n_ + 2));
            out.set({a, b}, std::move(acc));
        }
    }
    return out;
}

}  // namespace ach
