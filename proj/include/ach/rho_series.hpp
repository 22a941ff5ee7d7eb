#ifndef ACH_RHO_SERIES_HPP
#define ACH_RHO_SERIES_HPP

#include "ach/rational.hpp"

#include <type_traits>
#include <utility>
#include <vector>

namespace ach {

/// Truncated formal power series over BigRational (no log slots); used for
/// metric profiles and the volume integrand.
class RatSeries {
public:
    RatSeries(int max_order, BigRational constant = BigRational(0))
        : coef_(static_cast<std::size_t>(max_order) + 1) {
        coef_[0] = std::move(constant);
    }

    int max_order() const { return static_cast<int>(coef_.size()) - 1; }
    const BigRational& at(int j) const { return coef_[static_cast<std::size_t>(j)]; }
    void set(int j, BigRational v) { coef_[static_cast<std::size_t>(j)] = std::move(v); }

    bool is_zero() const {
        for (const auto& c : coef_)
            if (!c.is_zero()) return false;
        return true;
    }

    RatSeries& operator+=(const RatSeries& o) {
        int m = std::min(max_order(), o.max_order());
        coef_.resize(static_cast<std::size_t>(m) + 1);
        for (int j = 0; j <= m; ++j) coef_[j] += o.coef_[j];
        return *this;
    }
    friend RatSeries operator+(RatSeries a, const RatSeries& b) { return a += b; }

    friend RatSeries operator*(const RatSeries& a, const RatSeries& b) {
        int m = std::min(a.max_order(), b.max_order());
        RatSeries r(m);
        for (int i = 0; i <= m; ++i) {
            if (a.coef_[i].is_zero()) continue;
            for (int j = 0; i + j <= m; ++j) r.coef_[i + j] += a.coef_[i] * b.coef_[j];
        }
        return r;
    }

    RatSeries scaled(const BigRational& c) const {
        RatSeries r(max_order());
        for (int j = 0; j <= max_order(); ++j) r.coef_[j] = coef_[j] * c;
        return r;
    }

    RatSeries rho_d_rho() const {
        RatSeries r(max_order());
        for (int j = 1; j <= max_order(); ++j) r.coef_[j] = coef_[j] * BigRational(j);
        return r;
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    RatSeries inverse() const {
        if (coef_[0].is_zero()) throw MathError("series inverse needs nonzero constant term");
        RatSeries r(max_order());
        r.coef_[0] = BigRational(1) / coef_[0];
        for (int j = 1; j <= max_order(); ++j) {
            BigRational acc(0);
            for (int i = 1; i <= j; ++i) acc += coef_[i] * r.coef_[j - i];
            r.coef_[j] = -(r.coef_[0] * acc);
        }
        return r;
    }

    /// Formal square root via the binomial recursion; requires constant term 1.
    RatSeries sqrt_unit() const {
        if (!(coef_[0] == BigRational(1)))
            throw MathError("series sqrt needs constant term 1");
        RatSeries r(max_order());
        r.coef_[0] = BigRational(1);
        const BigRational half(1, 2);
        for (int j = 1; j <= max_order(); ++j) {
            BigRational acc = coef_[j];
            for (int i = 1; i < j; ++i) acc -= r.coef_[i] * r.coef_[j - i];
            r.coef_[j] = acc * half;
        }
        return r;
    }

    /// rho d/drho of log of this series = (rho d/drho s) / s.
    RatSeries log_derivative() const { return rho_d_rho() * inverse(); }

private:
    std::vector<BigRational> coef_;
};

/// Truncated expansion sum_j rho^j (a_j + b_j log rho) with coefficients in C.
/// C must provide is_zero(), operator+=, and scaled(GaussianRational).
/// Arithmetic truncates to the smaller max_order; at most one log power.
template <class C>
class RhoSeries {
public:
    RhoSeries(int max_order, C zero)
        : zero_(std::move(zero)),
          a_(static_cast<std::size_t>(max_order) + 1, zero_),
          b_(static_cast<std::size_t>(max_order) + 1, zero_) {}

    int max_order() const { return static_cast<int>(a_.size()) - 1; }
    const C& zero_elem() const { return zero_; }

    const C& a(int j) const { return a_[static_cast<std::size_t>(j)]; }
    const C& b(int j) const { return b_[static_cast<std::size_t>(j)]; }
    void set_a(int j, C v) { a_[static_cast<std::size_t>(j)] = std::move(v); }
    void set_b(int j, C v) { b_[static_cast<std::size_t>(j)] = std::move(v); }
    void add_a(int j, const C& v) { a_[static_cast<std::size_t>(j)] += v; }
    void add_b(int j, const C& v) { b_[static_cast<std::size_t>(j)] += v; }

    bool is_zero() const {
        for (const auto& c : a_)
            if (!c.is_zero()) return false;
        for (const auto& c : b_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool log_free() const {
        for (const auto& c : b_)
            if (!c.is_zero()) return false;
        return true;
    }
    /// True when every coefficient with index <= through vanishes.
    bool vanishes_through(int through) const {
        for (int j = 0; j <= std::min(through, max_order()); ++j)
            if (!a_[j].is_zero() || !b_[j].is_zero()) return false;
        return true;
    }

    RhoSeries& operator+=(const RhoSeries& o) {
        truncate(std::min(max_order(), o.max_order()));
        for (int j = 0; j <= max_order(); ++j) {
            a_[j] += o.a_[j];
            b_[j] += o.b_[j];
        }
        return *this;
    }
    friend RhoSeries operator+(RhoSeries x, const RhoSeries& y) { return x += y; }

    RhoSeries& operator-=(const RhoSeries& o) { return *this += o.scaled(GaussianRational(-1)); }
    friend RhoSeries operator-(RhoSeries x, const RhoSeries& y) { return x -= y; }

    RhoSeries scaled(const GaussianRational& c) const {
        RhoSeries r(max_order(), zero_);
        for (int j = 0; j <= max_order(); ++j) {
            r.a_[j] = a_[j].scaled(c);
            r.b_[j] = b_[j].scaled(c);
        }
        return r;
    }

    /// Multiplication by rho^m (m >= 0); coefficients past max_order are dropped.
    RhoSeries shifted(int m) const {
        RhoSeries r(max_order(), zero_);
        for (int j = 0; j + m <= max_order(); ++j) {
            r.a_[j + m] = a_[j];
            r.b_[j + m] = b_[j];
        }
        return r;
    }

    /// rho d/drho, with d(log rho) contributing the b -> a coupling.
    RhoSeries rho_d_rho() const {
        RhoSeries r(max_order(), zero_);
        for (int j = 0; j <= max_order(); ++j) {
            r.a_[j] = a_[j].scaled(GaussianRational(j));
            r.a_[j] += b_[j];
            r.b_[j] = b_[j].scaled(GaussianRational(j));
        }
        return r;
    }

    /// Multiplication by a rational scalar series (log-free).
    RhoSeries mul_series(const RatSeries& s) const {
        int m = std::min(max_order(), s.max_order());
        RhoSeries r(m, zero_);
        for (int i = 0; i <= m; ++i) {
            if (s.at(i).is_zero()) continue;
            GaussianRational c{s.at(i)};
            for (int j = 0; i + j <= m; ++j) {
                r.a_[i + j] += a_[j].scaled(c);
                r.b_[i + j] += b_[j].scaled(c);
            }
        }
        return r;
    }

    /// Coefficientwise map (applied to both slots). The zero element is mapped
    /// too, so channel-changing linear maps stay consistent.
    template <class F, class D = std::decay_t<decltype(std::declval<F&>()(std::declval<const C&>()))>>
    RhoSeries<D> map(F&& f) const {
        RhoSeries<D> r(max_order(), f(zero_));
        for (int j = 0; j <= max_order(); ++j) {
            r.set_a(j, f(a_[j]));
            r.set_b(j, f(b_[j]));
        }
        return r;
    }

    void truncate(int m) {
        a_.resize(static_cast<std::size_t>(m) + 1, zero_);
        b_.resize(static_cast<std::size_t>(m) + 1, zero_);
    }

    bool operator==(const RhoSeries& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
    C zero_;
    std::vector<C> a_;
    std::vector<C> b_;
};

}  // namespace ach

#endif
