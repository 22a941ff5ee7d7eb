#include "ach/heisenberg.hpp"

#include <cctype>
#include <mutex>
#include <set>

namespace ach {

std::uint64_t HeisMono::weight() const {
    std::uint64_t w = 2 * static_cast<std::uint64_t>(te);
    for (auto e : ze) w += e;
    for (auto e : zbe) w += e;
    return w;
}

bool HeisMono::operator<(const HeisMono& o) const {
    auto wa = weight(), wb = o.weight();
    if (wa != wb) return wa < wb;
    if (ze != o.ze) return ze < o.ze;
    if (zbe != o.zbe) return zbe < o.zbe;
    return te < o.te;
}

HeisPoly HeisPoly::constant(int n, GaussianRational c) {
    HeisPoly p(n);
    p.add_term(HeisMono(n), c);
    return p;
}

void HeisPoly::add_term(const HeisMono& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

HeisPoly HeisPoly::operator-() const {
    HeisPoly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

HeisPoly& HeisPoly::operator+=(const HeisPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

HeisPoly& HeisPoly::operator-=(const HeisPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

HeisPoly operator*(const HeisPoly& a, const HeisPoly& b) {
    HeisPoly r(a.n_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            HeisMono m(a.n_);
            for (int i = 0; i < a.n_; ++i) {
                m.ze[i] = ma.ze[i] + mb.ze[i];
                m.zbe[i] = ma.zbe[i] + mb.zbe[i];
            }
            m.te = ma.te + mb.te;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

HeisPoly HeisPoly::scaled(const GaussianRational& c) const {
    HeisPoly r(n_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

HeisPoly HeisPoly::conj() const {
    HeisPoly r(n_);
    for (const auto& [m, c] : terms_) {
        HeisMono mc(n_);
        mc.ze = m.zbe;
        mc.zbe = m.ze;
        mc.te = m.te;
        r.terms_.emplace(std::move(mc), c.conj());
    }
    return r;
}

GaussianRational HeisPoly::constant_value() const {
    if (terms_.empty()) return GaussianRational(0);
    if (terms_.size() != 1 || terms_.begin()->first.weight() != 0)
        throw MathError("polynomial is not constant: " + str());
    return terms_.begin()->second;
}

std::string HeisPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        const auto& [m, c] = *it;
        std::string cs = c.str();
        if (!c.is_real() || c.re().is_negative()) cs = "(" + cs + ")";
        s += cs;
        for (int i = 0; i < n_; ++i) {
            if (m.ze[i]) {
                s += "*z" + std::to_string(i + 1);
                if (m.ze[i] > 1) s += "^" + std::to_string(m.ze[i]);
            }
        }
        for (int i = 0; i < n_; ++i) {
            if (m.zbe[i]) {
                s += "*zb" + std::to_string(i + 1);
                if (m.zbe[i] > 1) s += "^" + std::to_string(m.zbe[i]);
            }
        }
        if (m.te) {
            s += "*t";
            if (m.te > 1) s += "^" + std::to_string(m.te);
        }
    }
    return s;
}

namespace {

// Partial derivatives in the coordinates z^a, zbar^a, t.
HeisPoly d_z(const HeisPoly& p, int a) {
    HeisPoly r(p.dim());
    for (const auto& [m, c] : p.terms()) {
        if (m.ze[a - 1] == 0) continue;
        HeisMono d = m;
        GaussianRational k = c * GaussianRational(static_cast<long>(d.ze[a - 1]));
        d.ze[a - 1] -= 1;
        r.add_term(d, k);
    }
    return r;
}

HeisPoly d_zb(const HeisPoly& p, int a) {
    HeisPoly r(p.dim());
    for (const auto& [m, c] : p.terms()) {
        if (m.zbe[a - 1] == 0) continue;
        HeisMono d = m;
        GaussianRational k = c * GaussianRational(static_cast<long>(d.zbe[a - 1]));
        d.zbe[a - 1] -= 1;
        r.add_term(d, k);
    }
    return r;
}

HeisPoly d_t(const HeisPoly& p) {
    HeisPoly r(p.dim());
    for (const auto& [m, c] : p.terms()) {
        if (m.te == 0) continue;
        HeisMono d = m;
        GaussianRational k = c * GaussianRational(static_cast<long>(d.te));
        d.te -= 1;
        r.add_term(d, k);
    }
    return r;
}

HeisPoly coord_z(int n, int a) {
    HeisMono m(n);
    m.ze[a - 1] = 1;
    HeisPoly p(n);
    p.add_term(m, GaussianRational(1));
    return p;
}

HeisPoly coord_zb(int n, int a) {
    HeisMono m(n);
    m.zbe[a - 1] = 1;
    HeisPoly p(n);
    p.add_term(m, GaussianRational(1));
    return p;
}

}  // namespace

HeisFrame::HeisFrame(int n_) : n(n_) {
    if (n < 1) throw MathError("CR dimension must be >= 1");
    // The frame identities are verified symbolically once per dimension;
    // a failure means the coordinate realization is inconsistent.
    static std::mutex mu;
    static std::set<int> verified;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (verified.count(n)) return;
    }
    Report rep = check_relations();
    for (const auto& c : rep.checks)
        if (!c.passed) throw MathError("frame relation failed: " + c.id);
    std::lock_guard<std::mutex> lock(mu);
    verified.insert(n);
}

HeisPoly HeisFrame::Z(int a, const HeisPoly& p) const {
    if (a < 1 || a > n) throw MathError("frame index out of range");
    // Z_a = d/dz^a + i zb^a d/dt
    return d_z(p, a) + (coord_zb(n, a) * d_t(p)).scaled(GaussianRational::i());
}

HeisPoly HeisFrame::Zb(int a, const HeisPoly& p) const {
    if (a < 1 || a > n) throw MathError("frame index out of range");
    return d_zb(p, a) - (coord_z(n, a) * d_t(p)).scaled(GaussianRational::i());
}

HeisPoly HeisFrame::T(const HeisPoly& p) const {
    return d_t(p).scaled(GaussianRational(2));
}

HeisPoly HeisFrame::sublaplacian(const HeisPoly& p) const {
    HeisPoly r(n);
    for (int a = 1; a <= n; ++a) {
        r -= Z(a, Zb(a, p));
        r -= Zb(a, Z(a, p));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Frame relation checks: first-order operators with polynomial coefficients.
// Directions: 0..n-1 = d/dz, n..2n-1 = d/dzb, 2n = d/dt.
// ---------------------------------------------------------------------------
namespace {

struct VField {
    int n;
    std::vector<HeisPoly> coef;  // size 2n+1

    explicit VField(int n_) : n(n_), coef(2 * n_ + 1, HeisPoly(n_)) {}

    HeisPoly apply(const HeisPoly& p) const {
        HeisPoly r(n);
        for (int a = 1; a <= n; ++a) {
            r += coef[a - 1] * d_z(p, a);
            r += coef[n + a - 1] * d_zb(p, a);
        }
        r += coef[2 * n] * d_t(p);
        return r;
    }

    friend VField bracket(const VField& v, const VField& w) {
        VField r(v.n);
        for (int d = 0; d < 2 * v.n + 1; ++d) {
            r.coef[d] = v.apply(w.coef[d]) - w.apply(v.coef[d]);
        }
        return r;
    }

    VField scaled(const GaussianRational& c) const {
        VField r(n);
        for (std::size_t i = 0; i < coef.size(); ++i) r.coef[i] = coef[i].scaled(c);
        return r;
    }

    bool operator==(const VField&) const = default;
};

struct OneForm {
    int n;
    std::vector<HeisPoly> coef;  // dual pairing with the same direction list

    explicit OneForm(int n_) : n(n_), coef(2 * n_ + 1, HeisPoly(n_)) {}

    HeisPoly pair(const VField& v) const {
        HeisPoly r(n);
        for (std::size_t i = 0; i < coef.size(); ++i) r += coef[i] * v.coef[i];
        return r;
    }

    // d(omega)(V, W) = V(omega(W)) - W(omega(V)) - omega([V, W]); exact.
    HeisPoly d_pair(const VField& v, const VField& w) const {
        return v.apply(pair(w)) - w.apply(pair(v)) - pair(bracket(v, w));
    }
};

}  // namespace

Report HeisFrame::check_relations() const {
    Report rep;
    VField t(n);
    t.coef[2 * n] = HeisPoly::constant(n, GaussianRational(2));  // T = 2 d/dt

    std::vector<VField> z, zb;
    for (int a = 1; a <= n; ++a) {
        VField za(n);
        za.coef[a - 1] = HeisPoly::constant(n, GaussianRational(1));
        za.coef[2 * n] = coord_zb(n, a).scaled(GaussianRational::i());
        z.push_back(za);
        VField zba(n);
        zba.coef[n + a - 1] = HeisPoly::constant(n, GaussianRational(1));
        zba.coef[2 * n] = coord_z(n, a).scaled(-GaussianRational::i());
        zb.push_back(zba);
    }

    // theta = (dt + i sum(z^a dzb^a - zb^a dz^a)) / 2
    OneForm theta(n);
    theta.coef[2 * n] = HeisPoly::constant(n, GaussianRational(BigRational(1, 2)));
    for (int a = 1; a <= n; ++a) {
        GaussianRational half_i = GaussianRational(BigRational(0), BigRational(1, 2));
        theta.coef[n + a - 1] = coord_z(n, a).scaled(half_i);
        theta.coef[a - 1] = coord_zb(n, a).scaled(-half_i);
    }

    const HeisPoly one = HeisPoly::constant(n, GaussianRational(1));

    rep.add("frame.theta_T", "theta(T) = 1", theta.pair(t) == one);
    for (int a = 1; a <= n; ++a) {
        rep.add("frame.theta_Z" + std::to_string(a), "theta(Z_a) = 0",
                theta.pair(z[a - 1]).is_zero());
    }

    // T -| dtheta = 0, tested against the coordinate basis fields.
    {
        bool ok = true;
        for (int d = 0; d < 2 * n + 1; ++d) {
            VField basis(n);
            basis.coef[d] = one;
            if (!theta.d_pair(t, basis).is_zero()) ok = false;
        }
        rep.add("frame.reeb_contraction", "T -| dtheta = 0", ok);
    }

    // Levi form h_{a bbar} = -i dtheta(Z_a, Zb_b) = delta_{ab}
    for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
            HeisPoly h = theta.d_pair(z[a - 1], zb[b - 1]).scaled(-GaussianRational::i());
            bool ok = (a == b) ? (h == one) : h.is_zero();
            rep.add("frame.levi_" + std::to_string(a) + std::to_string(b),
                    "-i dtheta(Z_a, Zb_b) = delta_ab", ok);
        }
    }

    // Bracket table
    for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
            VField br = bracket(z[a - 1], zb[b - 1]);
            VField expect = (a == b) ? t.scaled(-GaussianRational::i()) : VField(n);
            rep.add("frame.bracket_zzb_" + std::to_string(a) + std::to_string(b),
                    "[Z_a, Zb_b] = -i delta_ab T", br == expect);
            rep.add("frame.bracket_zz_" + std::to_string(a) + std::to_string(b),
                    "[Z_a, Z_b] = 0", bracket(z[a - 1], z[b - 1]) == VField(n));
        }
        rep.add("frame.bracket_zT_" + std::to_string(a), "[Z_a, T] = 0",
                bracket(z[a - 1], t) == VField(n));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------
namespace {

struct ExprParser {
    std::string_view s;
    std::size_t pos = 0;
    int n;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }

    std::uint32_t uint_lit() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected unsigned integer", pos);
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 0xffffffffull) throw ParseError("integer literal too large", pos);
            ++pos;
        }
        return static_cast<std::uint32_t>(v);
    }

    BigInt bigint_lit() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected digit", pos);
        BigInt v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return v;
    }

    HeisPoly expr() {
        bool neg = eat('-');
        HeisPoly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }

    HeisPoly term() {
        HeisPoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    HeisPoly factor() {
        HeisPoly base = atom();
        if (eat('^')) {
            std::uint32_t e = uint_lit();
            HeisPoly r = HeisPoly::constant(n, GaussianRational(1));
            for (std::uint32_t i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    HeisPoly atom() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            HeisPoly inner = expr();
            skip_ws();
            if (!eat(')')) throw ParseError("expected ')'", pos);
            return inner;
        }
        if (c == 'z') {
            std::size_t at = pos;
            ++pos;
            bool bar = (pos < s.size() && s[pos] == 'b');
            if (bar) ++pos;
            std::uint32_t idx = uint_lit();
            if (idx < 1 || static_cast<int>(idx) > n)
                throw ParseError("variable index out of range 1.." + std::to_string(n), at);
            return bar ? coord_zb(n, static_cast<int>(idx)) : coord_z(n, static_cast<int>(idx));
        }
        if (c == 't') {
            ++pos;
            HeisMono m(n);
            m.te = 1;
            HeisPoly p(n);
            p.add_term(m, GaussianRational(1));
            return p;
        }
        if (c == 'i') {
            ++pos;
            return HeisPoly::constant(n, GaussianRational::i());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = bigint_lit();
            if (eat('/')) {
                std::size_t at = pos;
                BigInt den = bigint_lit();
                if (den == 0) throw ParseError("zero denominator", at);
                return HeisPoly::constant(n, GaussianRational(BigRational(num, den)));
            }
            return HeisPoly::constant(n, GaussianRational(BigRational(num)));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
};

}  // namespace

HeisPoly parse_expression(std::string_view text, int n) {
    if (n < 1) throw MathError("CR dimension must be >= 1");
    ExprParser p{text, 0, n};
    HeisPoly r = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing characters", p.pos);
    return r;
}

// ---------------------------------------------------------------------------
// TensorPoly
// ---------------------------------------------------------------------------

TensorPoly::TensorPoly(Channel ch, int n) : ch_(ch), n_(n) {
    std::size_t count = 1;
    if (ch == Channel::Vector) count = n;
    if (ch == Channel::Sym2) count = static_cast<std::size_t>(n) * (n + 1) / 2;
    comps_.assign(count, HeisPoly(n));
}

std::size_t TensorPoly::sym_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (a < 1 || b > n_) throw MathError("tensor index out of range");
    std::size_t row_start = static_cast<std::size_t>(a - 1) * n_
                            - static_cast<std::size_t>(a - 1) * (a - 2) / 2;
    return row_start + static_cast<std::size_t>(b - a);
}

const HeisPoly& TensorPoly::scalar() const {
    if (ch_ != Channel::Scalar) throw MathError("not a scalar channel");
    return comps_[0];
}

const HeisPoly& TensorPoly::vec(int a) const {
    if (ch_ != Channel::Vector) throw MathError("not a vector channel");
    if (a < 1 || a > n_) throw MathError("tensor index out of range");
    return comps_[a - 1];
}

const HeisPoly& TensorPoly::sym(int a, int b) const {
    if (ch_ != Channel::Sym2) throw MathError("not a sym2 channel");
    return comps_[sym_index(a, b)];
}

void TensorPoly::set_scalar(HeisPoly p) {
    if (ch_ != Channel::Scalar) throw MathError("not a scalar channel");
    comps_[0] = std::move(p);
}

void TensorPoly::set_vec(int a, HeisPoly p) {
    if (ch_ != Channel::Vector) throw MathError("not a vector channel");
    if (a < 1 || a > n_) throw MathError("tensor index out of range");
    comps_[a - 1] = std::move(p);
}

void TensorPoly::set_sym(int a, int b, HeisPoly p) {
    if (ch_ != Channel::Sym2) throw MathError("not a sym2 channel");
    comps_[sym_index(a, b)] = std::move(p);
}

bool TensorPoly::is_zero() const {
    for (const auto& p : comps_)
        if (!p.is_zero()) return false;
    return true;
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
    if (ch_ != o.ch_ || n_ != o.n_) throw MathError("tensor channel mismatch");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

TensorPoly TensorPoly::scaled(const GaussianRational& c) const {
    TensorPoly r(ch_, n_);
    for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i].scaled(c);
    return r;
}

}  // namespace ach
