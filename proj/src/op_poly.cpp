#include "ach/op_poly.hpp"

namespace ach {

OpPoly OpPoly::constant(GaussianRational c) {
    OpPoly p;
    p.add_term(0, 0, c);
    return p;
}

OpPoly OpPoly::term(unsigned db, unsigned t, GaussianRational c) {
    OpPoly p;
    p.add_term(db, t, c);
    return p;
}

void OpPoly::add_term(unsigned db, unsigned t, const GaussianRational& c) {
    if (c.is_zero()) return;
    Key k{db, t};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

OpPoly OpPoly::operator-() const {
    OpPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

OpPoly& OpPoly::operator+=(const OpPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
}

OpPoly operator*(const OpPoly& a, const OpPoly& b) {
    OpPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

OpPoly OpPoly::scaled(const GaussianRational& c) const {
    OpPoly r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

OpPoly OpPoly::shift_db(const BigRational& s) const {
    OpPoly shifted_db = delta_b() + iT().scaled(GaussianRational(s));
    OpPoly r;
    for (const auto& [k, c] : terms_) {
        OpPoly factor = constant(c);
        for (unsigned j = 0; j < k.first; ++j) factor = factor * shifted_db;
        r += factor * term(0, k.second, GaussianRational(1));
    }
    return r;
}

OpPoly OpPoly::adjoint() const {
    OpPoly r;
    for (const auto& [k, c] : terms_) {
        GaussianRational v = c.conj();
        if (k.second % 2 == 1) v = -v;
        r.add_term(k.first, k.second, v);
    }
    return r;
}

OpPoly OpPoly::substitute_x_db_y_iT() const {
    OpPoly r;
    GaussianRational i = GaussianRational::i();
    for (const auto& [k, c] : terms_) {
        GaussianRational v = c;
        for (unsigned j = 0; j < k.second; ++j) v *= i;
        r.add_term(k.first, k.second, v);
    }
    return r;
}

HeisPoly OpPoly::apply(const HeisFrame& frame, const HeisPoly& p) const {
    HeisPoly r(frame.n);
    // The powers commute, so evaluate by increasing degree with memoized rows.
    for (const auto& [k, c] : terms_) {
        HeisPoly v = p;
        for (unsigned j = 0; j < k.first; ++j) v = frame.sublaplacian(v);
        for (unsigned j = 0; j < k.second; ++j) v = frame.T(v);
        r += v.scaled(c);
    }
    return r;
}

std::string OpPoly::str(const char* var1, const char* var2) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        std::string piece;
        GaussianRational coeff = c;
        bool lead_minus = false;
        if (c.is_real() && c.re().is_negative()) {
            lead_minus = true;
            coeff = -coeff;
        }
        std::string cs = coeff.str();
        bool unit = (coeff == GaussianRational(1));
        if (!coeff.is_real()) cs = "(" + cs + ")";
        std::string mono;
        if (k.first) {
            mono += var1;
            if (k.first > 1) mono += "^" + std::to_string(k.first);
        }
        if (k.second) {
            if (!mono.empty()) mono += "*";
            mono += var2;
            if (k.second > 1) mono += "^" + std::to_string(k.second);
        }
        if (mono.empty()) piece = cs;
        else if (unit) piece = mono;
        else piece = cs + "*" + mono;
        if (s.empty()) s = (lead_minus ? "-" : "") + piece;
        else s += (lead_minus ? " - " : " + ") + piece;
    }
    return s;
}

OpPoly qpoly(unsigned k, QMode mode) {
    if (k < 1) throw MathError("qpoly requires k >= 1");
    if (mode == QMode::ClosedForm) {
        // prod_{j=0}^{k-1} (x + (k-1-2j) y)
        OpPoly r = OpPoly::one();
        for (unsigned j = 0; j < k; ++j) {
            long c = static_cast<long>(k) - 1 - 2 * static_cast<long>(j);
            OpPoly f = OpPoly::term(1, 0, GaussianRational(1));
            f.add_term(0, 1, GaussianRational(c));
            r = r * f;
        }
        return r;
    }
    // q_0 = 1, q_1 = x, q_l = x q_{l-1} - (l-1)(k-l+1) y^2 q_{l-2}
    OpPoly qm2 = OpPoly::one();
    OpPoly qm1 = OpPoly::term(1, 0, GaussianRational(1));
    if (k == 1) return qm1;
    OpPoly x = OpPoly::term(1, 0, GaussianRational(1));
    OpPoly y2 = OpPoly::term(0, 2, GaussianRational(1));
    OpPoly q;
    for (unsigned l = 2; l <= k; ++l) {
        long c = static_cast<long>(l - 1) * (static_cast<long>(k) - static_cast<long>(l) + 1);
        q = x * qm1 - (y2 * qm2).scaled(GaussianRational(c));
        qm2 = qm1;
        qm1 = q;
    }
    return q;
}

OpPoly gjms_product(int n, int k) {
    if (k < 1 || k > n + 1) throw MathError("gjms_product requires 1 <= k <= n+1");
    OpPoly r = OpPoly::one();
    for (int j = 0; j < k; ++j) {
        long c = static_cast<long>(k) - 1 - 2 * static_cast<long>(j);
        OpPoly f = OpPoly::delta_b() + OpPoly::iT().scaled(GaussianRational(c));
        r = r * f;
    }
    return r;
}

GaussianRational gjms_ck(unsigned k) {
    if (k < 1) throw MathError("c_k requires k >= 1");
    BigRational denom = BigRational::factorial(k) * BigRational::factorial(k - 1);
    BigRational v = BigRational(2) / denom;
    if (k % 2 == 0) v = -v;
    return GaussianRational(v);
}

}  // namespace ach
