#include "ach/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>

namespace ach {

namespace {

using boost::multiprecision::gcd;

// --- tiny cursor over a string for the scalar parsers ---
struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    bool eat(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    BigInt integer() {
        bool neg = eat('-');
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected digit", pos);
        BigInt v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return neg ? BigInt(-v) : v;
    }
};

BigRational parse_rational(Cursor& c) {
    BigInt num = c.integer();
    if (c.eat('/')) {
        BigInt den = c.integer();
        if (den == 0) throw ParseError("zero denominator", c.pos);
        return BigRational(num, den);
    }
    return BigRational(num);
}

}  // namespace

BigRational::BigRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DivisionByZero();
    reduce();
}

void BigRational::reduce() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    if (num_ == 0) { den_ = 1; return; }
    BigInt g = gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
}

BigRational BigRational::operator-() const {
    BigRational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

BigRational& BigRational::operator+=(const BigRational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.num_ == 0) throw DivisionByZero();
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string BigRational::str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

BigRational BigRational::parse(std::string_view text) {
    Cursor c{text};
    BigRational r = parse_rational(c);
    if (!c.done()) throw ParseError("trailing characters", c.pos);
    return r;
}

BigRational BigRational::factorial(unsigned k) {
    BigInt v = 1;
    for (unsigned j = 2; j <= k; ++j) v *= j;
    return BigRational(v);
}

std::optional<BigRational> checked_div(const BigRational& a, const BigRational& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    BigRational re = re_ * o.re_ - im_ * o.im_;
    BigRational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    BigRational n2 = o.norm2();
    if (n2.is_zero()) throw DivisionByZero();
    GaussianRational num = *this * o.conj();
    re_ = num.re_ / n2;
    im_ = num.im_ / n2;
    return *this;
}

std::string GaussianRational::str() const {
    if (im_.is_zero()) return re_.str();
    std::string s = "(" + re_.str() + ")";
    if (im_.is_negative())
        s += "-(" + (-im_).str() + ")i";
    else
        s += "+(" + im_.str() + ")i";
    return s;
}

GaussianRational GaussianRational::parse(std::string_view text) {
    Cursor c{text};
    if (c.peek() != '(') {
        BigRational re = parse_rational(c);
        if (!c.done()) throw ParseError("trailing characters", c.pos);
        return GaussianRational(std::move(re));
    }
    c.expect('(');
    BigRational re = parse_rational(c);
    c.expect(')');
    bool neg;
    if (c.eat('+')) neg = false;
    else if (c.eat('-')) neg = true;
    else throw ParseError("expected '+' or '-'", c.pos);
    c.expect('(');
    BigRational im = parse_rational(c);
    c.expect(')');
    c.expect('i');
    if (!c.done()) throw ParseError("trailing characters", c.pos);
    return GaussianRational(std::move(re), neg ? -im : im);
}

std::optional<GaussianRational> checked_div(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
}

}  // namespace ach
