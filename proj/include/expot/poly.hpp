#pragma once

// Sparse polynomials in four phase-space variables over Q(i).

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "expot/exactnum.hpp"

namespace expot {

class VarSetMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Coordinates { Natural, Bihomogeneous };

/// Names of the four phase-space variables. Slots 0,1 are positions and
/// slots 2,3 their conjugate momenta: (q1,q2,p1,p2) or (x1,x2,y1,y2).
class VarSet {
public:
    constexpr VarSet() = default;
    constexpr explicit VarSet(Coordinates c) : coords_(c) {}

    static constexpr VarSet natural() { return VarSet(Coordinates::Natural); }
    static constexpr VarSet bihomogeneous() { return VarSet(Coordinates::Bihomogeneous); }

    constexpr Coordinates coordinates() const { return coords_; }
    std::string_view name(int slot) const;
    std::optional<int> index(std::string_view name) const;

    static constexpr bool is_position(int slot) { return slot < 2; }
    static constexpr bool is_momentum(int slot) { return slot >= 2; }
    /// Conjugate momentum slot of position slot 0/1 (and vice versa).
    static constexpr int conjugate(int slot) { return slot < 2 ? slot + 2 : slot - 2; }

    friend constexpr bool operator==(VarSet a, VarSet b) { return a.coords_ == b.coords_; }

private:
    Coordinates coords_ = Coordinates::Natural;
};

using Exponents = std::array<std::uint32_t, 4>;

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically in variable-slot order.
struct Monomial {
    Exponents e{0, 0, 0, 0};

    std::uint32_t degree() const { return e[0] + e[1] + e[2] + e[3]; }
    std::uint32_t position_degree() const { return e[0] + e[1]; }
    std::uint32_t momentum_degree() const { return e[2] + e[3]; }
    long weighted_degree(const std::array<long, 4>& w) const
    {
        return w[0] * e[0] + w[1] * e[1] + w[2] * e[2] + w[3] * e[3];
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
    {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        return a.e <=> b.e;
    }
};

using Matrix4 = std::array<std::array<GR, 4>, 4>;
using Point4 = std::array<std::complex<double>, 4>;

Matrix4 identity4();
GR determinant(const Matrix4& m);
/// Exact inverse; throws SingularMatrix.
Matrix4 inverse(const Matrix4& m);
Matrix4 operator*(const Matrix4& a, const Matrix4& b);

/// Weight-homogeneity of a polynomial under an integer grading.
struct WeightInfo {
    enum class Kind { Uniform, Mixed, Zero };
    Kind kind = Kind::Zero;
    long weight = 0;  ///< meaningful for Uniform only

    std::optional<long> value() const
    {
        return kind == Kind::Uniform ? std::optional<long>(weight) : std::nullopt;
    }
};

class Poly {
public:
    /// Terms are iterated from the largest monomial down.
    using TermMap = std::map<Monomial, GR, std::greater<>>;

    Poly() = default;
    explicit Poly(VarSet vars) : vars_(vars) {}

    static Poly constant(const GR& c, VarSet vars);
    static Poly variable(int slot, VarSet vars);
    static Poly variable(std::string_view name, VarSet vars);
    static Poly term(const GR& c, const Monomial& m, VarSet vars);

    VarSet vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GR coefficient(const Monomial& m) const;

    int total_degree() const;
    /// Largest momentum degree over all terms (0 for the zero polynomial).
    int momentum_degree() const;
    bool depends_on_momenta() const;
    /// Homogeneous in the position variables, with no momentum dependence.
    std::optional<int> position_homogeneous_degree() const;

    void add_term(const Monomial& m, const GR& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const GR& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GR& c) { return a *= c; }
    friend Poly operator*(const GR& c, Poly a) { return a *= c; }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    Poly pow(unsigned n) const;
    Poly diff(int slot) const;
    Poly diff(std::string_view name) const;

    /// Replace old variable j by sum_k m[j][k] * target_k. Throws
    /// SingularMatrix when m is not invertible.
    Poly subst_linear(const Matrix4& m, VarSet target) const;
    /// Same exponents, different variable names.
    Poly renamed(VarSet target) const;

    std::complex<double> eval(const Point4& z) const;
    WeightInfo weight(const std::array<long, 4>& w) const;

private:
    void check_same(const Poly& o) const;

    VarSet vars_;
    TermMap terms_;
};

inline Poly p_add(const Poly& f, const Poly& g) { return f + g; }
inline Poly p_mul(const Poly& f, const Poly& g) { return f * g; }
inline Poly p_diff(const Poly& f, std::string_view var) { return f.diff(var); }
inline Poly p_subst_linear(const Poly& f, const Matrix4& m, VarSet target) { return f.subst_linear(m, target); }
inline std::complex<double> p_eval(const Poly& f, const Point4& z) { return f.eval(z); }
inline WeightInfo p_weight(const Poly& f, const std::array<long, 4>& w) { return f.weight(w); }

/// Grading with positions of weight 2 and momenta of weight k.
inline std::array<long, 4> phase_weights(long k) { return {2, 2, k, k}; }

}  // namespace expot
