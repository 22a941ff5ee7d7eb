#include "ach/latex.hpp"

namespace ach {

namespace {

unsigned db_degree(const OpPoly& p) {
    unsigned d = 0;
    for (const auto& [k, c] : p.terms()) d = std::max(d, k.first);
    return d;
}

unsigned total_degree(const OpPoly& p) {
    unsigned d = 0;
    for (const auto& [k, c] : p.terms()) d = std::max(d, k.first + k.second);
    return d;
}

/// Exact division by the monic-in-Delta_b factor (Delta_b + i m T).
std::optional<OpPoly> divide_exact(const OpPoly& p, long m) {
    OpPoly rem = p;
    OpPoly quot;
    GaussianRational lam = GaussianRational::i() * GaussianRational(m);
    while (!rem.is_zero()) {
        // highest Delta_b power first; map keys sort by (db, t)
        auto it = std::prev(rem.terms().end());
        auto [key, coeff] = *it;
        if (key.first == 0) return std::nullopt;
        OpPoly qt = OpPoly::term(key.first - 1, key.second, coeff);
        quot += qt;
        OpPoly factor = OpPoly::delta_b() + OpPoly::term(0, 1, lam);
        rem -= qt * factor;
    }
    return quot;
}

struct Renderer {
    const char* db;
    const char* times;
    const char* i_sym;
    bool frac;
};

std::string coeff_str(const GaussianRational& c, const Renderer& r) {
    auto rat = [&](const BigRational& v) -> std::string {
        if (r.frac && v.den() != 1) {
            std::string num = v.num().str();
            bool neg = false;
            if (!num.empty() && num[0] == '-') {
                neg = true;
                num = num.substr(1);
            }
            return std::string(neg ? "-" : "") + "\\frac{" + num + "}{" + v.den().str() + "}";
        }
        return v.str();
    };
    if (c.is_real()) return rat(c.re());
    if (c.re().is_zero()) {
        if (c.im() == BigRational(1)) return r.i_sym;
        if (c.im() == BigRational(-1)) return std::string("-") + r.i_sym;
        return rat(c.im()) + r.i_sym;
    }
    std::string s = "(" + rat(c.re());
    s += c.im().is_negative() ? "-" : "+";
    BigRational ai = c.im().is_negative() ? -c.im() : c.im();
    if (!(ai == BigRational(1))) s += rat(ai);
    s += r.i_sym;
    s += ")";
    return s;
}

std::string render_expanded(const OpPoly& p, const Renderer& r) {
    if (p.is_zero()) return "0";
    std::string s;
    // highest degree first
    std::vector<std::pair<OpPoly::Key, GaussianRational>> terms(p.terms().begin(),
                                                                p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        unsigned da = a.first.first + a.first.second, db_ = b.first.first + b.first.second;
        if (da != db_) return da > db_;
        return a.first > b.first;
    });
    for (const auto& [k, c] : terms) {
        GaussianRational coeff = c;
        bool minus = coeff.is_real() && coeff.re().is_negative();
        if (minus) coeff = -coeff;
        std::string mono;
        if (k.first) {
            mono += r.db;
            if (k.first > 1) mono += "^" + std::to_string(k.first);
        }
        if (k.second) {
            if (!mono.empty()) mono += r.times;
            mono += "T";
            if (k.second > 1) mono += "^" + std::to_string(k.second);
        }
        std::string piece;
        if (mono.empty()) piece = coeff_str(coeff, r);
        else if (coeff == GaussianRational(1)) piece = mono;
        else piece = coeff_str(coeff, r) + r.times + mono;
        if (s.empty()) s = (minus ? "-" : "") + piece;
        else s += (minus ? "-" : "+") + piece;
    }
    return s;
}

std::string render_factor(long m, const Renderer& r) {
    if (m == 0) return r.db;
    std::string s = "(";
    s += r.db;
    s += (m > 0) ? "+" : "-";
    long a = m > 0 ? m : -m;
    if (a != 1) s += std::to_string(a);
    s += r.i_sym;
    s += "T)";
    return s;
}

std::string render(const OpPoly& p, const Renderer& r) {
    auto fac = factor_linear(p);
    if (!fac || fac->ts.empty()) return render_expanded(p, r);
    std::string s;
    if (!(fac->scalar == GaussianRational(1))) s += coeff_str(fac->scalar, r);
    for (long m : fac->ts) s += render_factor(m, r);
    return s;
}

}  // namespace

std::optional<LinearFactorization> factor_linear(const OpPoly& p) {
    if (p.is_zero()) return std::nullopt;
    unsigned deg = db_degree(p);
    if (deg == 0) return std::nullopt;
    if (total_degree(p) != deg) return std::nullopt;  // must be monic-degree in Delta_b
    LinearFactorization out;
    OpPoly cur = p;
    long bound = 2 * static_cast<long>(deg) + 4;
    while (db_degree(cur) >= 1) {
        bool found = false;
        for (long m = -bound; m <= bound && !found; ++m) {
            if (auto q = divide_exact(cur, m)) {
                out.ts.push_back(m);
                cur = *q;
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    if (!cur.terms().empty() &&
        (cur.terms().size() != 1 || cur.terms().begin()->first != OpPoly::Key{0, 0}))
        return std::nullopt;
    out.scalar = cur.is_zero() ? GaussianRational(0) : cur.terms().begin()->second;
    std::sort(out.ts.rbegin(), out.ts.rend());
    return out;
}

std::string latex(const OpPoly& p) {
    return render(p, Renderer{"\\Delta_b", "", "i", true});
}

std::string pretty_text(const OpPoly& p) {
    return render(p, Renderer{"Δ_b", "*", "i", false});
}

namespace {

const char* shape_latex(Shape s) {
    switch (s) {
        case Shape::Psi: return "\\psi_{\\alpha\\beta}";
        case Shape::ZsymDivPsi: return "Z_{(\\alpha}Z^{\\gamma}\\psi_{\\beta)\\gamma}";
        case Shape::ZZdivdivPsi: return "Z_{\\alpha}Z_{\\beta}Z^{\\gamma}Z^{\\delta}\\psi_{\\gamma\\delta}";
        case Shape::DivPsi: return "Z^{\\beta}\\psi_{\\alpha\\beta}";
        case Shape::ZdivdivPsi: return "Z_{\\alpha}Z^{\\gamma}Z^{\\delta}\\psi_{\\gamma\\delta}";
        case Shape::DivDivPsi: return "Z^{\\gamma}Z^{\\delta}\\psi_{\\gamma\\delta}";
        case Shape::ZZF: return "Z_{\\alpha}Z_{\\beta}f";
        case Shape::ZF: return "Z_{\\alpha}f";
        case Shape::F: return "f";
    }
    throw MathError("bad shape");
}

}  // namespace

std::string latex(const NcNormal& op) {
    if (op.is_zero()) return "0";
    std::string s;
    for (const auto& [sh, p] : op.terms()) {
        if (!s.empty()) s += "+";
        s += "\\left[" + latex(p) + "\\right]" + shape_latex(sh);
    }
    return s;
}

std::string pretty_text(const NcNormal& op) {
    if (op.is_zero()) return "0";
    std::string s;
    for (const auto& [sh, p] : op.terms()) {
        if (!s.empty()) s += " + ";
        s += "[" + pretty_text(p) + "] " + shape_tag(sh);
    }
    return s;
}

}  // namespace ach
