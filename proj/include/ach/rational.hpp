#ifndef ACH_RATIONAL_HPP
#define ACH_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ach {

using BigInt = boost::multiprecision::cpp_int;

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : MathError {
    DivisionByZero() : MathError("division by zero") {}
};

/// Parse failure; `offset` is the byte position of the offending character.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

/// Exact rational number. Always reduced, denominator > 0, zero is 0/1.
class BigRational {
public:
    BigRational() : num_(0), den_(1) {}
    BigRational(long v) : num_(v), den_(1) {}
    BigRational(BigInt v) : num_(std::move(v)), den_(1) {}
    BigRational(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    BigRational operator-() const;
    BigRational& operator+=(const BigRational& o);
    BigRational& operator-=(const BigRational& o);
    BigRational& operator*=(const BigRational& o);
    BigRational& operator/=(const BigRational& o);  // throws DivisionByZero

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

    /// "p" when the denominator is 1, else "p/q".
    std::string str() const;
    static BigRational parse(std::string_view text);  // throws ParseError

    static BigRational factorial(unsigned k);

private:
    BigInt num_;
    BigInt den_;
    void reduce();
};

/// Non-throwing division: empty when b == 0.
std::optional<BigRational> checked_div(const BigRational& a, const BigRational& b);

/// Exact complex number re + im*i over BigRational. The sole scalar of the library.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}
    GaussianRational(BigRational re) : re_(std::move(re)) {}
    GaussianRational(BigRational re, BigRational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(BigRational(0), BigRational(1)); }

    const BigRational& re() const { return re_; }
    const BigRational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    BigRational norm2() const { return re_ * re_ + im_ * im_; }
    GaussianRational scaled(const GaussianRational& c) const { return *this * c; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);  // throws DivisionByZero

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    // Lexicographic on (re, im); the canonical term order used downstream.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
        if (auto c = a.re_ <=> b.re_; c != 0) return c;
        return a.im_ <=> b.im_;
    }

    /// "p/q" for real values, "(p/q)+(r/s)i" / "(p/q)-(r/s)i" otherwise.
    std::string str() const;
    static GaussianRational parse(std::string_view text);  // throws ParseError

private:
    BigRational re_;
    BigRational im_;
};

std::optional<GaussianRational> checked_div(const GaussianRational& a, const GaussianRational& b);

}  // namespace ach

#endif
