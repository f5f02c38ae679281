#include "expot/exactnum.hpp"

#include <cctype>

namespace expot {

Rational::Rational(long num, long den)
{
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den)
{
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text)
{
    auto slash = text.find('/');
    auto digits_ok = [](const std::string& s) {
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (start >= s.size()) return false;
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!digits_ok(num) || !digits_ok(den)) throw std::invalid_argument("not a rational: " + text);
    return Rational(mpz_class(num, 10), mpz_class(den, 10));
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::inverse() const
{
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return Rational(mpq_class(1) / q_);
}

std::optional<Rational> exact_sqrt(const Rational& r)
{
    if (r.sign() < 0) return std::nullopt;
    mpz_class n = r.numerator();
    mpz_class d = r.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rational(sn, sd);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    if (o.im_.is_zero()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    return *this *= o.inverse();
}

GaussianRational GaussianRational::inverse() const
{
    if (is_zero()) throw DivisionByZero("inverse of zero in Q(i)");
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational GaussianRational::pow(unsigned exponent) const
{
    GaussianRational result(1);
    GaussianRational base = *this;
    while (exponent != 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent != 0) base *= base;
    }
    return result;
}

std::string GaussianRational::str() const
{
    if (im_.is_zero()) return re_.str();
    std::string imag;
    if (im_.is_one())
        imag = "i";
    else if (im_ == Rational(-1))
        imag = "-i";
    else
        imag = im_.str() + "*i";
    if (re_.is_zero()) return imag;
    if (im_.sign() < 0) return re_.str() + " - " + imag.substr(1);
    return re_.str() + " + " + imag;
}

std::optional<GR> exact_sqrt(const GR& z)
{
    if (z.is_real()) {
        if (z.re().sign() >= 0) {
            auto r = exact_sqrt(z.re());
            if (!r) return std::nullopt;
            return GR(*r);
        }
        auto r = exact_sqrt(-z.re());
        if (!r) return std::nullopt;
        return GR(Rational(0), *r);
    }
    // (u + iv)^2 = a + bi  =>  u^2 = (a + |z|)/2, v = b / (2u)
    auto modulus = exact_sqrt(z.norm());
    if (!modulus) return std::nullopt;
    auto u = exact_sqrt((z.re() + *modulus) / Rational(2));
    if (!u || u->is_zero()) return std::nullopt;
    Rational v = z.im() / (Rational(2) * *u);
    return GR(*u, v);
}

}  // namespace expot
