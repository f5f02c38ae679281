#include "expot/mech.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "expot/parser.hpp"

namespace expot {

namespace {

const GR I = GR::i();

GR i_pow(int n)
{
    int r = ((n % 4) + 4) % 4;
    switch (r) {
    case 0: return GR(1);
    case 1: return I;
    case 2: return GR(-1);
    default: return -I;
    }
}

GR sign_pow(int n) { return (n % 2 == 0) ? GR(1) : GR(-1); }

Poly kinetic_energy(KineticForm form)
{
    if (form == KineticForm::Natural) {
        VarSet v = VarSet::natural();
        Poly p1 = Poly::variable(2, v);
        Poly p2 = Poly::variable(3, v);
        return (p1 * p1 + p2 * p2) * GR(Rational(1, 2));
    }
    VarSet v = VarSet::bihomogeneous();
    return Poly::variable(2, v) * Poly::variable(3, v) * GR(2);
}

Poly bihom_monomial(const GR& c, int e1, int e2, int f1 = 0, int f2 = 0)
{
    Monomial m{{static_cast<std::uint32_t>(e1), static_cast<std::uint32_t>(e2), static_cast<std::uint32_t>(f1),
                static_cast<std::uint32_t>(f2)}};
    return Poly::term(c, m, VarSet::bihomogeneous());
}

}  // namespace

HamiltonianSystem::HamiltonianSystem(Poly potential, KineticForm kinetic, std::optional<ExceptionalParams> params)
    : V_(std::move(potential)), kinetic_(kinetic), k_(0), params_(std::move(params))
{
    VarSet expected = kinetic == KineticForm::Natural ? VarSet::natural() : VarSet::bihomogeneous();
    if (V_.is_zero()) V_ = Poly(expected);
    if (!(V_.vars() == expected)) throw VarSetMismatch("potential variables do not match the kinetic form");
    if (V_.depends_on_momenta()) throw std::invalid_argument("potential depends on momenta");
    auto deg = V_.position_homogeneous_degree();
    if (!deg) throw std::invalid_argument("potential is not homogeneous in the positions");
    if (*deg < 1) throw std::invalid_argument("potential must have positive degree");
    k_ = *deg;
    H_ = kinetic_energy(kinetic) + V_;
}

HamiltonianSystem HamiltonianSystem::exceptional(int k, int l, const GR& alpha, Coordinates coords)
{
    Poly V = exceptional_potential(k, l, alpha);
    ExceptionalParams params{k, l, alpha};
    if (coords == Coordinates::Natural) return HamiltonianSystem(V, KineticForm::Natural, params);
    return HamiltonianSystem(to_bihomogeneous(V), KineticForm::Bihomogeneous, params);
}

Poly exceptional_potential(int k, int l, const GR& alpha)
{
    if (k < 1) throw std::invalid_argument("degree k must be positive");
    if (l < 0 || l > k) throw std::invalid_argument("l must lie in [0, k]");
    if (alpha.is_zero()) throw std::invalid_argument("alpha must be nonzero");
    VarSet v = VarSet::natural();
    Poly q1 = Poly::variable(0, v);
    Poly q2 = Poly::variable(1, v);
    Poly minus = q2 - q1 * I;
    Poly plus = q2 + q1 * I;
    return minus.pow(static_cast<unsigned>(l)) * plus.pow(static_cast<unsigned>(k - l)) * alpha;
}

GR exceptional_beta(int k, int l, const GR& alpha) { return sign_pow(l) * i_pow(k) * alpha; }

GR exceptional_alpha_for_beta(int k, int l, const GR& beta) { return beta / (sign_pow(l) * i_pow(k)); }

Matrix4 symplectic_transform()
{
    GR half(Rational(1, 2));
    GR ihalf(Rational(0), Rational(1, 2));
    Matrix4 t;
    t[0] = {GR(1), I, GR(0), GR(0)};
    t[1] = {GR(1), -I, GR(0), GR(0)};
    t[2] = {GR(0), GR(0), half, -ihalf};
    t[3] = {GR(0), GR(0), half, ihalf};
    return t;
}

Poly to_bihomogeneous(const Poly& natural)
{
    if (natural.vars().coordinates() != Coordinates::Natural)
        throw VarSetMismatch("expected a polynomial in (q1,q2,p1,p2)");
    static const Matrix4 inv = inverse(symplectic_transform());
    return natural.subst_linear(inv, VarSet::bihomogeneous());
}

Poly to_natural(const Poly& bihom)
{
    if (bihom.vars().coordinates() != Coordinates::Bihomogeneous)
        throw VarSetMismatch("expected a polynomial in (x1,x2,y1,y2)");
    return bihom.subst_linear(symplectic_transform(), VarSet::natural());
}

HamiltonianSystem to_bihomogeneous(const HamiltonianSystem& sys)
{
    if (sys.kinetic() == KineticForm::Bihomogeneous) return sys;
    return HamiltonianSystem(to_bihomogeneous(sys.potential()), KineticForm::Bihomogeneous, sys.params());
}

HamiltonianSystem to_natural(const HamiltonianSystem& sys)
{
    if (sys.kinetic() == KineticForm::Natural) return sys;
    return HamiltonianSystem(to_natural(sys.potential()), KineticForm::Natural, sys.params());
}

Poly poisson_bracket(const Poly& F, const Poly& G)
{
    if (!(F.vars() == G.vars())) throw VarSetMismatch("bracket of polynomials in different variable sets");
    Poly out(F.vars());
    for (int q = 0; q < 2; ++q) {
        int p = VarSet::conjugate(q);
        out += F.diff(p) * G.diff(q);
        out -= F.diff(q) * G.diff(p);
    }
    return out;
}

bool is_first_integral(const HamiltonianSystem& sys, const Poly& F)
{
    return poisson_bracket(sys.H(), F).is_zero();
}

std::array<Poly, 4> hamiltonian_vector_field(const HamiltonianSystem& sys)
{
    const Poly& H = sys.H();
    return {H.diff(2), H.diff(3), -H.diff(0), -H.diff(1)};
}

bool functional_independence(const HamiltonianSystem& sys, const Poly& F, int trials, std::uint64_t seed,
                             double ratio_threshold)
{
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::array<Poly, 4> dH, dF;
    for (int s = 0; s < 4; ++s) {
        dH[s] = sys.H().diff(s);
        dF[s] = F.renamed(sys.vars()).diff(s);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Point4 z;
        for (auto& c : z) c = {uni(rng), uni(rng)};
        std::array<std::complex<double>, 4> a, b;
        for (int s = 0; s < 4; ++s) {
            a[s] = dH[s].eval(z);
            b[s] = dF[s].eval(z);
        }
        // Gram matrix of the two rows; its eigenvalues are the squared
        // singular values.
        double g11 = 0, g22 = 0;
        std::complex<double> g12{0, 0};
        for (int s = 0; s < 4; ++s) {
            g11 += std::norm(a[s]);
            g22 += std::norm(b[s]);
            g12 += a[s] * std::conj(b[s]);
        }
        double tr = g11 + g22;
        double disc = std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4 * std::norm(g12)));
        double smax2 = 0.5 * (tr + disc);
        double smin2 = std::max(0.0, 0.5 * (tr - disc));
        // Product form of the small eigenvalue avoids cancellation.
        if (smax2 > 0) smin2 = std::max(0.0, (g11 * g22 - std::norm(g12)) / smax2);
        if (smax2 > 0 && std::sqrt(smin2 / smax2) > ratio_threshold) return true;
    }
    return false;
}

Poly item6_candidate(const GR& a)
{
    VarSet v = VarSet::bihomogeneous();
    Poly x1 = Poly::variable(0, v), x2 = Poly::variable(1, v);
    Poly y1 = Poly::variable(2, v), y2 = Poly::variable(3, v);
    Poly J = y1.pow(3) * (y1 * x1 - y2 * x2) * a;
    J += x2.pow(6) * (y1 * y1 * x1 * x1 * GR(4) - y1 * y2 * x1 * x2 * GR(8) + y2 * y2 * x2 * x2);
    J -= x1.pow(3) * x2.pow(12);
    return J;
}

std::optional<CatalogEntry> catalog(int k, int l, const GR& alpha)
{
    if (k < 1 || l < 0 || l > k || alpha.is_zero()) return std::nullopt;
    VarSet v = VarSet::bihomogeneous();
    Poly x1 = Poly::variable(0, v), x2 = Poly::variable(1, v);
    Poly y1 = Poly::variable(2, v), y2 = Poly::variable(3, v);
    const GR ik = i_pow(k);
    const GR invk(Rational(1, k));

    CatalogEntry e;
    e.k = k;
    e.l = l;
    e.alpha = alpha;
    if (l == 0) {
        e.item = 1;
        e.J_bihom = y1;
        e.formula = "J = y1";
    } else if (l == k) {
        e.item = 2;
        e.J_bihom = y2;
        e.formula = "J = y2";
    } else if (k % 2 == 0 && 2 * l == k) {
        e.item = 3;
        e.J_bihom = y1 * x1 - y2 * x2;
        e.formula = "J = y1*x1 - y2*x2";
    } else if (l == 1) {
        e.item = 4;
        e.J_bihom = y1 * y1 - bihom_monomial(invk * ik * alpha, 0, k);
        e.formula = "J = y1^2 - (1/k) i^k alpha x2^k";
    } else if (l == k - 1) {
        e.item = 5;
        e.J_bihom = y2 * y2 + bihom_monomial(invk * sign_pow(k + 1) * ik * alpha, k, 0);
        e.formula = "J = y2^2 + (1/k) (-1)^(k+1) i^k alpha x1^k";
    } else if (k == 7 && l == 2) {
        e.item = 6;
        e.alpha_fixed = true;
        e.alpha = exceptional_alpha_for_beta(7, 2, GR(1));
        e.J_bihom = item6_candidate(GR(16));
        e.formula = "J = 16 y1^3 (y1 x1 - y2 x2) + x2^6 (4 y1^2 x1^2 - 8 y1 y2 x1 x2 + y2^2 x2^2) - x1^3 x2^12";
    } else if (k == 7 && l == 5) {
        e.item = 7;
        e.alpha_fixed = true;
        e.alpha = exceptional_alpha_for_beta(7, 5, GR(1));
        e.J_bihom = y2.pow(3) * (y2 * x2 - y1 * x1) * GR(16);
        e.J_bihom += x1.pow(6) * (y2 * y2 * x2 * x2 * GR(4) - y2 * y1 * x1 * x2 * GR(8) + y1 * y1 * x1 * x1);
        e.J_bihom -= x2.pow(3) * x1.pow(12);
        e.formula = "J = 16 y2^3 (y2 x2 - y1 x1) + x1^6 (4 y2^2 x2^2 - 8 y2 y1 x1 x2 + y1^2 x1^2) - x2^3 x1^12";
    } else {
        return std::nullopt;
    }
    e.beta = exceptional_beta(k, l, e.alpha);
    e.J_natural = to_natural(e.J_bihom);
    return e;
}

std::optional<TableRow> table_row(int k, int l, const GR& alpha)
{
    if (k < 1 || l < 0 || l > k) return std::nullopt;
    VarSet v = VarSet::natural();
    Poly q1 = Poly::variable(0, v), q2 = Poly::variable(1, v);
    Poly p1 = Poly::variable(2, v), p2 = Poly::variable(3, v);
    Poly pm = p1 - p2 * I;  // p1 - i p2
    Poly pp = p1 + p2 * I;
    Poly qm = q1 - q2 * I;  // q1 - i q2
    Poly qp = q1 + q2 * I;
    const GR ik = i_pow(k);
    const GR invk(Rational(1, k));
    const GR quarter(Rational(1, 4));

    TableRow row;
    row.k = k;
    row.l = l;
    if (l == 0) {
        row.V_printed = exceptional_potential(k, 0, alpha);
        row.J_printed = pm * GR(Rational(1, 2));
    } else if (l == k) {
        row.V_printed = exceptional_potential(k, k, alpha);
        row.J_printed = pp * GR(Rational(1, 2));
    } else if (k % 2 == 0 && 2 * l == k) {
        row.V_printed = exceptional_potential(k, l, alpha);
        row.J_printed = (p1 * q2 - q1 * p2) * GR(Rational(0), Rational(-1, 2));
    } else if (l == 1) {
        row.V_printed = exceptional_potential(k, 1, alpha);
        row.J_printed = pm * pm * quarter - qm.pow(k) * (invk * ik * alpha);
    } else if (l == k - 1) {
        row.V_printed = exceptional_potential(k, k - 1, alpha);
        row.J_printed = pp * pp * quarter + qp.pow(k) * (invk * sign_pow(k + 1) * ik * alpha);
    } else if (k == 7 && l == 2) {
        row.V_printed = qm.pow(5) * qp.pow(2);
        row.J_printed = -(pm.pow(3) * pp * qm) + pp.pow(2) * qm.pow(8) * quarter + pm.pow(4) * qp -
                        pm * pp * qm.pow(7) * qp * GR(2) + pm.pow(2) * qm.pow(6) * qp.pow(2) - qm.pow(12) * qp.pow(3);
    } else if (k == 7 && l == 5) {
        row.V_printed = qm.pow(2) * qp.pow(5);
        row.J_printed = pp.pow(4) * qm - pm * pp.pow(3) * qp + pp.pow(2) * qm.pow(2) * qp.pow(6) -
                        pm * pp * qm * qp.pow(7) * GR(2) + pm.pow(2) * qp.pow(8) * quarter - qm.pow(3) * qp.pow(12);
    } else {
        return std::nullopt;
    }

    // Identify the printed potential inside the exceptional family through
    // its bi-homogeneous image beta * x1^l' x2^(k-l').
    Poly image = to_bihomogeneous(row.V_printed);
    if (image.size() != 1) throw std::logic_error("printed table potential is not exceptional");
    const auto& [mono, beta] = *image.terms().begin();
    row.l_effective = static_cast<int>(mono.e[0]);
    row.alpha_effective = exceptional_alpha_for_beta(k, row.l_effective, beta);
    row.reading = render(row.V_printed) + " = " + render(image) + " in (x1,x2), i.e. V_{" + std::to_string(k) + "," +
                  std::to_string(row.l_effective) + "} with alpha = " + row.alpha_effective.str();
    return row;
}

Poly swap_pairs(const Poly& f)
{
    Matrix4 m;
    m[0][1] = GR(1);
    m[1][0] = GR(1);
    m[2][3] = GR(1);
    m[3][2] = GR(1);
    return f.subst_linear(m, f.vars());
}

Po2cMatrix::Po2cMatrix(std::array<std::array<GR, 2>, 2> a) : a_(std::move(a))
{
    GR d00 = a_[0][0] * a_[0][0] + a_[0][1] * a_[0][1];
    GR d11 = a_[1][0] * a_[1][0] + a_[1][1] * a_[1][1];
    GR d01 = a_[0][0] * a_[1][0] + a_[0][1] * a_[1][1];
    if (!d01.is_zero() || !(d00 == d11) || d00.is_zero())
        throw std::invalid_argument("matrix does not satisfy A A^T = alpha I with alpha != 0");
    scale_ = d00;
}

Poly apply_po2c(const Po2cMatrix& a, const Poly& V)
{
    Matrix4 m = identity4();
    const auto& A = a.matrix();
    m[0] = {A[0][0], A[0][1], GR(0), GR(0)};
    m[1] = {A[1][0], A[1][1], GR(0), GR(0)};
    return V.subst_linear(m, V.vars());
}

}  // namespace expot
