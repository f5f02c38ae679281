#include <map>
#include "expot/poly.hpp"

#include <vector>

namespace expot {

namespace {
constexpr std::array<std::string_view, 4> kNaturalNames{"q1", "q2", "p1", "p2"};
constexpr std::array<std::string_view, 4> kBihomNames{"x1", "x2", "y1", "y2"};
}  // namespace

std::string_view VarSet::name(int slot) const
{
    return coords_ == Coordinates::Natural ? kNaturalNames.at(slot) : kBihomNames.at(slot);
}

std::optional<int> VarSet::index(std::string_view n) const
{
    const auto& names = coords_ == Coordinates::Natural ? kNaturalNames : kBihomNames;
    for (int s = 0; s < 4; ++s)
        if (names[s] == n) return s;
    return std::nullopt;
}

Matrix4 identity4()
{
    Matrix4 m;
    for (int i = 0; i < 4; ++i) m[i][i] = GR(1);
    return m;
}

namespace {

// Gauss-Jordan on [m | I]; returns nullopt when singular.
std::optional<Matrix4> try_inverse(const Matrix4& m, GR* det_out)
{
    Matrix4 a = m;
    Matrix4 inv = identity4();
    GR det(1);
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (!a[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) {
            if (det_out) *det_out = GR(0);
            return std::nullopt;
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
            det = -det;
        }
        GR p = a[col][col];
        det *= p;
        GR pinv = p.inverse();
        for (int k = 0; k < 4; ++k) {
            a[col][k] *= pinv;
            inv[col][k] *= pinv;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            GR f = a[r][col];
            for (int k = 0; k < 4; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    if (det_out) *det_out = det;
    return inv;
}

}  // namespace

GR determinant(const Matrix4& m)
{
    GR det;
    (void)try_inverse(m, &det);
    return det;
}

Matrix4 inverse(const Matrix4& m)
{
    auto inv = try_inverse(m, nullptr);
    if (!inv) throw SingularMatrix("linear substitution matrix is singular");
    return *inv;
}

Matrix4 operator*(const Matrix4& a, const Matrix4& b)
{
    Matrix4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    return c;
}

Poly Poly::constant(const GR& c, VarSet vars)
{
    Poly p(vars);
    p.add_term(Monomial{}, c);
    return p;
}

Poly Poly::variable(int slot, VarSet vars)
{
    Monomial m;
    m.e.at(slot) = 1;
    return term(GR(1), m, vars);
}

Poly Poly::variable(std::string_view name, VarSet vars)
{
    auto slot = vars.index(name);
    if (!slot) throw UnknownVariable("unknown variable '" + std::string(name) + "'");
    return variable(*slot, vars);
}

Poly Poly::term(const GR& c, const Monomial& m, VarSet vars)
{
    Poly p(vars);
    p.add_term(m, c);
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

GR Poly::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? GR(0) : it->second;
}

int Poly::total_degree() const
{
    return terms_.empty() ? 0 : static_cast<int>(terms_.begin()->first.degree());
}

int Poly::momentum_degree() const
{
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.momentum_degree());
    return static_cast<int>(d);
}

bool Poly::depends_on_momenta() const { return momentum_degree() > 0; }

std::optional<int> Poly::position_homogeneous_degree() const
{
    if (terms_.empty()) return std::nullopt;
    std::optional<std::uint32_t> deg;
    for (const auto& [m, c] : terms_) {
        if (m.momentum_degree() != 0) return std::nullopt;
        if (deg && *deg != m.degree()) return std::nullopt;
        deg = m.degree();
    }
    return static_cast<int>(*deg);
}

void Poly::add_term(const Monomial& m, const GR& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Poly::check_same(const Poly& o) const
{
    if (!(vars_ == o.vars_)) throw VarSetMismatch("polynomials use different variable sets");
}

Poly Poly::operator-() const
{
    Poly r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const GR& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    a.check_same(b);
    Poly r(a.vars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::pow(unsigned n) const
{
    Poly result = constant(GR(1), vars_);
    Poly base = *this;
    while (n != 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n != 0) base = base * base;
    }
    return result;
}

Poly Poly::diff(int slot) const
{
    if (slot < 0 || slot > 3) throw UnknownVariable("variable slot out of range");
    Poly r(vars_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.e[slot];
        if (e == 0) continue;
        Monomial dm = m;
        dm.e[slot] = e - 1;
        r.add_term(dm, c * GR(static_cast<long>(e)));
    }
    return r;
}

Poly Poly::diff(std::string_view name) const
{
    auto slot = vars_.index(name);
    if (!slot) throw UnknownVariable("unknown variable '" + std::string(name) + "'");
    return diff(*slot);
}

Poly Poly::subst_linear(const Matrix4& m, VarSet target) const
{
    if (determinant(m).is_zero()) throw SingularMatrix("linear substitution matrix is singular");
    std::array<Poly, 4> images;
    std::array<std::uint32_t, 4> max_exp{0, 0, 0, 0};
    for (int j = 0; j < 4; ++j) {
        images[j] = Poly(target);
        for (int k = 0; k < 4; ++k)
            if (!m[j][k].is_zero()) {
                Monomial unit;
                unit.e[k] = 1;
                images[j].add_term(unit, m[j][k]);
            }
    }
    for (const auto& [mono, c] : terms_)
        for (int j = 0; j < 4; ++j) max_exp[j] = std::max(max_exp[j], mono.e[j]);

    std::array<std::vector<Poly>, 4> powers;
    for (int j = 0; j < 4; ++j) {
        powers[j].reserve(max_exp[j] + 1);
        powers[j].push_back(constant(GR(1), target));
        for (std::uint32_t e = 1; e <= max_exp[j]; ++e) powers[j].push_back(powers[j].back() * images[j]);
    }

    // Nested grouping by exponent prefix: only scalar multiples for the
    // last variable, one product per distinct prefix above it.
    std::map<std::array<std::uint32_t, 3>, Poly> level3;
    for (const auto& [mono, c] : terms_) {
        auto [it, fresh] = level3.try_emplace({mono.e[0], mono.e[1], mono.e[2]}, target);
        it->second += powers[3][mono.e[3]] * c;
    }
    std::map<std::array<std::uint32_t, 2>, Poly> level2;
    for (const auto& [key, inner] : level3) {
        auto [it, fresh] = level2.try_emplace({key[0], key[1]}, target);
        it->second += key[2] == 0 ? inner : powers[2][key[2]] * inner;
    }
    std::map<std::uint32_t, Poly> level1;
    for (const auto& [key, inner] : level2) {
        auto [it, fresh] = level1.try_emplace(key[0], target);
        it->second += key[1] == 0 ? inner : powers[1][key[1]] * inner;
    }
    Poly r(target);
    for (const auto& [e0, inner] : level1) r += e0 == 0 ? inner : powers[0][e0] * inner;
    return r;
}

Poly Poly::renamed(VarSet target) const
{
    Poly r = *this;
    r.vars_ = target;
    return r;
}

std::complex<double> Poly::eval(const Point4& z) const
{
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int j = 0; j < 4; ++j)
            for (std::uint32_t e = 0; e < m.e[j]; ++e) t *= z[j];
        sum += t;
    }
    return sum;
}

WeightInfo Poly::weight(const std::array<long, 4>& w) const
{
    if (terms_.empty()) return {WeightInfo::Kind::Zero, 0};
    long first = terms_.begin()->first.weighted_degree(w);
    for (const auto& [m, c] : terms_)
        if (m.weighted_degree(w) != first) return {WeightInfo::Kind::Mixed, 0};
    return {WeightInfo::Kind::Uniform, first};
}

}  // namespace expot
