#include "ach/nc_normal.hpp"

#include "ach/rng.hpp"

#include <mutex>
#include <set>

namespace ach {

namespace {
void validate_rewrite_rules(int n);
}

Channel shape_channel(Shape s) {
    switch (s) {
        case Shape::Psi:
        case Shape::ZsymDivPsi:
        case Shape::ZZdivdivPsi:
        case Shape::ZZF:
            return Channel::Sym2;
        case Shape::DivPsi:
        case Shape::ZdivdivPsi:
        case Shape::ZF:
            return Channel::Vector;
        case Shape::DivDivPsi:
        case Shape::F:
            return Channel::Scalar;
    }
    throw MathError("bad shape");
}

NcSource shape_source(Shape s) {
    switch (s) {
        case Shape::ZZF:
        case Shape::ZF:
        case Shape::F:
            return NcSource::ScalarFunction;
        default:
            return NcSource::PsiDeformation;
    }
}

const char* shape_tag(Shape s) {
    switch (s) {
        case Shape::Psi: return "psi";
        case Shape::ZsymDivPsi: return "ZsymDivPsi";
        case Shape::ZZdivdivPsi: return "ZZdivdivPsi";
        case Shape::DivPsi: return "divPsi";
        case Shape::ZdivdivPsi: return "ZdivdivPsi";
        case Shape::DivDivPsi: return "divdivPsi";
        case Shape::ZZF: return "ZZf";
        case Shape::ZF: return "Zf";
        case Shape::F: return "f";
    }
    throw MathError("bad shape");
}

Shape shape_from_tag(const std::string& tag) {
    for (Shape s : {Shape::Psi, Shape::ZsymDivPsi, Shape::ZZdivdivPsi, Shape::DivPsi,
                    Shape::ZdivdivPsi, Shape::DivDivPsi, Shape::ZZF, Shape::ZF, Shape::F}) {
        if (tag == shape_tag(s)) return s;
    }
    throw MathError("unknown shape tag: " + tag);
}

NcNormal NcNormal::identity(int n, NcSource src) {
    Channel ch = (src == NcSource::PsiDeformation) ? Channel::Sym2 : Channel::Scalar;
    NcNormal r(n, ch, src);
    r.add(src == NcSource::PsiDeformation ? Shape::Psi : Shape::F, OpPoly::one());
    return r;
}

void NcNormal::add(Shape s, const OpPoly& p) {
    if (p.is_zero()) return;
    if (shape_channel(s) != ch_ || shape_source(s) != src_)
        throw MathError("shape does not match operator channel");
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, p);
    } else {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NcNormal NcNormal::operator-() const {
    NcNormal r(n_, ch_, src_);
    for (const auto& [s, p] : terms_) r.terms_.emplace(s, -p);
    return r;
}

NcNormal& NcNormal::operator+=(const NcNormal& o) {
    if (o.ch_ != ch_ || o.n_ != n_ || o.src_ != src_)
        throw MathError("channel mismatch in NcNormal sum");
    for (const auto& [s, p] : o.terms_) add(s, p);
    return *this;
}

NcNormal& NcNormal::operator-=(const NcNormal& o) {
    if (o.ch_ != ch_ || o.n_ != n_ || o.src_ != src_)
        throw MathError("channel mismatch in NcNormal sum");
    for (const auto& [s, p] : o.terms_) add(s, -p);
    return *this;
}

NcNormal NcNormal::scaled(const GaussianRational& c) const {
    NcNormal r(n_, ch_, src_);
    if (c.is_zero()) return r;
    for (const auto& [s, p] : terms_) r.terms_.emplace(s, p.scaled(c));
    return r;
}

NcNormal NcNormal::poly_mul(const OpPoly& p) const {
    NcNormal r(n_, ch_, src_);
    for (const auto& [s, q] : terms_) r.add(s, p * q);
    return r;
}

namespace {

// -1/2 (Delta_b - i n T): the value of Z^a Z_a on any scalar.
OpPoly zupzdown(int n) {
    OpPoly p = OpPoly::delta_b() - OpPoly::iT().scaled(GaussianRational(n));
    return p.scaled(GaussianRational(BigRational(-1, 2)));
}

// -1/4 (Delta_b - i(n+2) T)
OpPoly quarter_block(int n) {
    OpPoly p = OpPoly::delta_b() - OpPoly::iT().scaled(GaussianRational(n + 2));
    return p.scaled(GaussianRational(BigRational(-1, 4)));
}

}  // namespace

NcNormal NcNormal::contract() const {
    if (ch_ == Channel::Scalar)
        throw BasisOverflow("Z^a applied to a scalar-channel operator");
    validate_rewrite_rules(n_);
    Channel out = (ch_ == Channel::Sym2) ? Channel::Vector : Channel::Scalar;
    NcNormal r(n_, out, src_);
    const BigRational minus2(-2);
    for (const auto& [s, p] : terms_) {
        OpPoly q = p.shift_db(minus2);  // Z^a p(Db, T) = p(Db - 2iT, T) Z^a
        switch (s) {
            case Shape::Psi:
                r.add(Shape::DivPsi, q);
                break;
            case Shape::ZsymDivPsi:
                // Z^b Z_(a (Z.psi)_b) = -1/4 (Db - i(n+2)T)(Z.psi)_a
                //                       + 1/2 Z_a (Z.Z.psi)
                r.add(Shape::DivPsi, q * quarter_block(n_));
                r.add(Shape::ZdivdivPsi, q.scaled(GaussianRational(BigRational(1, 2))));
                break;
            case Shape::ZZdivdivPsi:
                // Z^b Z_a Z_b <s> = -1/2 (Db - inT) Z_a <s>
                r.add(Shape::ZdivdivPsi, q * zupzdown(n_));
                break;
            case Shape::ZZF:
                r.add(Shape::ZF, q * zupzdown(n_));
                break;
            case Shape::DivPsi:
                r.add(Shape::DivDivPsi, q);
                break;
            case Shape::ZdivdivPsi:
                // Z^a Z_a <s> = -1/2 (Db - inT) <s>
                r.add(Shape::DivDivPsi, q * zupzdown(n_));
                break;
            case Shape::ZF:
                r.add(Shape::F, q * zupzdown(n_));
                break;
            default:
                throw BasisOverflow(std::string("contraction of ") + shape_tag(s));
        }
    }
    return r;
}

NcNormal NcNormal::insert() const {
    if (ch_ == Channel::Sym2)
        throw BasisOverflow("Z_a applied to a sym2-channel operator (three lower indices)");
    validate_rewrite_rules(n_);
    Channel out = (ch_ == Channel::Scalar) ? Channel::Vector : Channel::Sym2;
    NcNormal r(n_, out, src_);
    const BigRational plus2(2);
    for (const auto& [s, p] : terms_) {
        OpPoly q = p.shift_db(plus2);  // Z_a p(Db, T) = p(Db + 2iT, T) Z_a
        switch (s) {
            case Shape::DivDivPsi: r.add(Shape::ZdivdivPsi, q); break;
            case Shape::F: r.add(Shape::ZF, q); break;
            case Shape::DivPsi: r.add(Shape::ZsymDivPsi, q); break;
            case Shape::ZdivdivPsi: r.add(Shape::ZZdivdivPsi, q); break;
            case Shape::ZF: r.add(Shape::ZZF, q); break;
            default:
                throw BasisOverflow(std::string("insertion on ") + shape_tag(s));
        }
    }
    return r;
}

std::string NcNormal::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [sh, p] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + p.str() + ") o " + shape_tag(sh);
    }
    return s;
}

NcNormal nc_normalize(const NcExpr& expr) {
    NcNormal acc = NcNormal::identity(expr.n, expr.source);
    for (auto it = expr.steps.rbegin(); it != expr.steps.rend(); ++it) {
        if (std::holds_alternative<OpPoly>(*it)) {
            acc = acc.poly_mul(std::get<OpPoly>(*it));
        } else if (std::holds_alternative<NcContract>(*it)) {
            acc = acc.contract();
        } else {
            acc = acc.insert();
        }
    }
    return acc;
}

NcExpr shape_word(int n, Shape s) {
    NcExpr e{n, {}, shape_source(s)};
    switch (s) {
        case Shape::Psi:
        case Shape::F:
            break;
        case Shape::DivPsi:
            e.steps = {NcContract{}};
            break;
        case Shape::DivDivPsi:
            e.steps = {NcContract{}, NcContract{}};
            break;
        case Shape::ZdivdivPsi:
            e.steps = {NcInsert{}, NcContract{}, NcContract{}};
            break;
        case Shape::ZsymDivPsi:
            e.steps = {NcInsert{}, NcContract{}};
            break;
        case Shape::ZZdivdivPsi:
            e.steps = {NcInsert{}, NcInsert{}, NcContract{}, NcContract{}};
            break;
        case Shape::ZF:
            e.steps = {NcInsert{}};
            break;
        case Shape::ZZF:
            e.steps = {NcInsert{}, NcInsert{}};
            break;
    }
    return e;
}

namespace {

TensorPoly contract_tensor(const TensorPoly& t, const HeisFrame& fr) {
    int n = fr.n;
    if (t.channel() == Channel::Sym2) {
        TensorPoly r(Channel::Vector, n);
        for (int a = 1; a <= n; ++a) {
            HeisPoly acc(n);
            for (int g = 1; g <= n; ++g) acc += fr.Zup(g, t.sym(a, g));
            r.set_vec(a, std::move(acc));
        }
        return r;
    }
    if (t.channel() == Channel::Vector) {
        TensorPoly r(Channel::Scalar, n);
        HeisPoly acc(n);
        for (int g = 1; g <= n; ++g) acc += fr.Zup(g, t.vec(g));
        r.set_scalar(std::move(acc));
        return r;
    }
    throw BasisOverflow("contraction of a scalar tensor");
}

TensorPoly insert_tensor(const TensorPoly& t, const HeisFrame& fr) {
    int n = fr.n;
    if (t.channel() == Channel::Scalar) {
        TensorPoly r(Channel::Vector, n);
        for (int a = 1; a <= n; ++a) r.set_vec(a, fr.Z(a, t.scalar()));
        return r;
    }
    if (t.channel() == Channel::Vector) {
        TensorPoly r(Channel::Sym2, n);
        const GaussianRational half(BigRational(1, 2));
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b)
                r.set_sym(a, b, (fr.Z(a, t.vec(b)) + fr.Z(b, t.vec(a))).scaled(half));
        return r;
    }
    throw BasisOverflow("insertion on a sym2 tensor");
}

TensorPoly apply_op_poly(const OpPoly& p, const TensorPoly& t, const HeisFrame& fr) {
    return t.map([&](const HeisPoly& c) { return p.apply(fr, c); });
}

TensorPoly materialize_shape(Shape s, const TensorPoly& input, const HeisFrame& fr) {
    TensorPoly cur = input;
    const NcExpr word = shape_word(fr.n, s);
    for (auto it = word.steps.rbegin(); it != word.steps.rend(); ++it) {
        if (std::holds_alternative<NcContract>(*it)) cur = contract_tensor(cur, fr);
        else if (std::holds_alternative<NcInsert>(*it)) cur = insert_tensor(cur, fr);
    }
    return cur;
}

void check_input_channel(NcSource src, const TensorPoly& input) {
    Channel want = (src == NcSource::PsiDeformation) ? Channel::Sym2 : Channel::Scalar;
    if (input.channel() != want) throw MathError("nc_apply: input channel mismatch");
}

}  // namespace

namespace {

// The composite rewrite rules are stated identities; rather than trusting
// them, they are re-proved from the primitive field actions by sampling, once
// per dimension, the first time the rewriting engine fires.
void validate_rewrite_rules(int n) {
    static std::mutex mu;
    static std::set<int> validated;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (validated.count(n)) return;
    }

    HeisFrame fr(n);
    SplitMix64 rng(0x5eed0000ull + static_cast<unsigned>(n));
    OpPoly db = OpPoly::delta_b();
    OpPoly iT = OpPoly::iT();
    const GaussianRational half(BigRational(1, 2)), quarter(BigRational(1, 4));

    for (int t = 0; t < 5; ++t) {
        TensorPoly psi(Channel::Sym2, n);
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) psi.set_sym(a, b, random_heis_poly(rng, n, 2, 2));

        TensorPoly div = materialize_shape(Shape::DivPsi, psi, fr);
        TensorPoly divdiv = materialize_shape(Shape::DivDivPsi, psi, fr);
        TensorPoly zdd = materialize_shape(Shape::ZdivdivPsi, psi, fr);

        // commutation shifts: Z^a Db = (Db - 2iT) Z^a and Z_a Db = (Db + 2iT) Z_a
        if (!(contract_tensor(apply_op_poly(db, div, fr), fr) ==
              apply_op_poly(db - iT.scaled(GaussianRational(2)),
                            contract_tensor(div, fr), fr)))
            throw MathError("rewrite validation failed: contraction shift");
        if (!(insert_tensor(apply_op_poly(db, divdiv, fr), fr) ==
              apply_op_poly(db + iT.scaled(GaussianRational(2)), insert_tensor(divdiv, fr), fr)))
            throw MathError("rewrite validation failed: insertion shift");

        // Z^a Z_a = -(1/2)(Db - inT) on scalars
        OpPoly zz = (db - iT.scaled(GaussianRational(n))).scaled(-half);
        if (!(contract_tensor(insert_tensor(divdiv, fr), fr) == apply_op_poly(zz, divdiv, fr)))
            throw MathError("rewrite validation failed: Z^a Z_a identity");

        // Z^b Z_(a (Z.psi)_b) = -(1/4)(Db - i(n+2)T)(Z.psi)_a + (1/2) Z_a(Z.Z.psi)
        TensorPoly lhs1 =
            contract_tensor(materialize_shape(Shape::ZsymDivPsi, psi, fr), fr);
        OpPoly blk = (db - iT.scaled(GaussianRational(n + 2))).scaled(-quarter);
        TensorPoly rhs1 = apply_op_poly(blk, div, fr);
        rhs1 += zdd.scaled(half);
        if (!(lhs1 == rhs1))
            throw MathError("rewrite validation failed: symmetrized divergence identity");

        // Z^b Z_a Z_b <s> = -(1/2)(Db - inT) Z_a <s>
        TensorPoly lhs2 =
            contract_tensor(materialize_shape(Shape::ZZdivdivPsi, psi, fr), fr);
        if (!(lhs2 == apply_op_poly(zz, zdd, fr)))
            throw MathError("rewrite validation failed: double-insertion identity");
    }

    std::lock_guard<std::mutex> lock(mu);
    validated.insert(n);
}

}  // namespace

TensorPoly nc_apply(const NcNormal& op, const TensorPoly& input, const HeisFrame& frame) {
    if (op.dim() != frame.n || input.dim() != frame.n)
        throw MathError("nc_apply: dimension mismatch");
    check_input_channel(op.source(), input);
    TensorPoly acc(op.channel(), frame.n);
    for (const auto& [s, p] : op.terms()) {
        acc += apply_op_poly(p, materialize_shape(s, input, frame), frame);
    }
    return acc;
}

TensorPoly nc_direct_eval(const NcExpr& expr, const TensorPoly& input, const HeisFrame& frame) {
    if (expr.n != frame.n || input.dim() != frame.n)
        throw MathError("nc_direct_eval: dimension mismatch");
    check_input_channel(expr.source, input);
    TensorPoly cur = input;
    for (auto it = expr.steps.rbegin(); it != expr.steps.rend(); ++it) {
        if (std::holds_alternative<OpPoly>(*it)) cur = apply_op_poly(std::get<OpPoly>(*it), cur, frame);
        else if (std::holds_alternative<NcContract>(*it)) cur = contract_tensor(cur, frame);
        else cur = insert_tensor(cur, frame);
    }
    return cur;
}

OpPoly obstruction_factor_product(int n, int count) {
    OpPoly r = OpPoly::one();
    for (int k = 0; k < count; ++k) {
        long c = static_cast<long>(n) + 2 - 2 * static_cast<long>(k);
        r = r * (OpPoly::delta_b() + OpPoly::iT().scaled(GaussianRational(c)));
    }
    return r;
}

NcNormal obstruction_closed_form(int n) {
    if (n < 2) throw MathError("obstruction requires n >= 2 (dimension >= 5)");
    BigRational nfact = BigRational::factorial(static_cast<unsigned>(n));
    BigRational pref = BigRational(1) / (nfact * nfact);
    if (n % 2 == 0) pref = -pref;  // (-1)^{n+1}
    GaussianRational prefactor(pref);

    NcNormal r(n, Channel::Sym2);
    r.add(Shape::Psi, obstruction_factor_product(n, n + 1).scaled(prefactor));
    GaussianRational c1(BigRational(4 * static_cast<long>(n) + 4, n + 2));
    r.add(Shape::ZsymDivPsi, obstruction_factor_product(n, n).scaled(prefactor * c1));
    GaussianRational c2(BigRational(4 * static_cast<long>(n), n + 2));
    r.add(Shape::ZZdivdivPsi, obstruction_factor_product(n, n - 1).scaled(prefactor * c2));
    return r;
}

NcNormal substitute_kuranishi(const NcNormal& op) {
    if (op.source() != NcSource::PsiDeformation)
        throw MathError("substitute_kuranishi expects an operator on psi");
    int n = op.dim();
    // psi = Z_(a Z_b) f is the double insertion applied to the identity on f.
    NcNormal df = NcNormal::identity(n, NcSource::ScalarFunction).insert().insert();
    NcNormal acc(n, op.channel(), NcSource::ScalarFunction);
    for (const auto& [s, p] : op.terms()) {
        NcNormal piece = df;
        const NcExpr word = shape_word(n, s);
        for (auto it = word.steps.rbegin(); it != word.steps.rend(); ++it) {
            if (std::holds_alternative<NcContract>(*it)) piece = piece.contract();
            else if (std::holds_alternative<NcInsert>(*it)) piece = piece.insert();
        }
        acc += piece.poly_mul(p);
    }
    return acc;
}

}  // namespace ach
