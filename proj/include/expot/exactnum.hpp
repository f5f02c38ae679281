#pragma once

// Exact arithmetic over Q and Q(i).
//
// Every symbolic object in the library (potentials, Hamiltonians, first
// integrals, linear systems) carries coefficients in the Gaussian rationals.
// Numerators and denominators are unbounded; elimination on the larger
// ansatz systems produces intermediates far beyond 64 bits.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace expot {

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Reduced fraction with positive denominator; zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    Rational(const mpz_class& num, const mpz_class& den);

    /// Parses "a" or "a/b" with optional leading sign.
    static Rational parse(const std::string& text);

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational inverse() const;

private:
    mpq_class q_{0};
};

/// Exact square root in Q, if one exists.
std::optional<Rational> exact_sqrt(const Rational& r);

/// Element re + im*i of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    bool is_imaginary() const { return re_.is_zero() && !im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    /// re² + im²
    Rational norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;
    GaussianRational pow(unsigned exponent) const;

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    /// `a/b + c/d*i` with zero parts and unit denominators suppressed.
    std::string str() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_;
    Rational im_;
};

using GR = GaussianRational;

inline GR gr_add(const GR& a, const GR& b) { return a + b; }
inline GR gr_mul(const GR& a, const GR& b) { return a * b; }
inline GR gr_inv(const GR& a) { return a.inverse(); }

/// Exact square root in Q(i), if one exists. Returns the root with
/// non-negative real part (positive imaginary part when purely imaginary).
std::optional<GR> exact_sqrt(const GR& z);

}  // namespace expot
