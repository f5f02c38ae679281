#include "expot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace expot {

namespace {

// Minimal complex type usable with both double and __float128.
template <class R>
struct Cx {
    R re{0};
    R im{0};

    Cx() = default;
    Cx(R r, R i = R(0)) : re(r), im(i) {}

    friend Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(Cx a, Cx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend Cx operator*(R s, Cx a) { return {s * a.re, s * a.im}; }
    Cx& operator+=(Cx b) { return *this = *this + b; }
    double modulus() const
    {
        double x = static_cast<double>(re), y = static_cast<double>(im);
        return std::hypot(x, y);
    }
};

template <class R>
R to_real(const Rational& q);

template <>
double to_real<double>(const Rational& q)
{
    return q.to_double();
}

__float128 mpz_to_quad(mpz_class z)
{
    __float128 r = 0;
    for (int i = 0; i < 6 && z != 0; ++i) {
        double d = z.get_d();
        r += d;
        z -= mpz_class(d);
    }
    return r;
}

template <>
__float128 to_real<__float128>(const Rational& q)
{
    return mpz_to_quad(q.numerator()) / mpz_to_quad(q.denominator());
}

template <class R>
Cx<R> to_cx(const GR& g)
{
    return {to_real<R>(g.re()), to_real<R>(g.im())};
}

template <class R>
using StateR = std::array<Cx<R>, 4>;

template <class R>
class Compiled {
public:
    explicit Compiled(const Poly& f)
    {
        for (const auto& [m, c] : f.terms()) {
            terms_.push_back({to_cx<R>(c), m.e});
            for (int s = 0; s < 4; ++s) maxe_[s] = std::max(maxe_[s], m.e[s]);
        }
        for (int s = 0; s < 4; ++s) pow_[s].resize(maxe_[s] + 1);
    }

    Cx<R> operator()(const StateR<R>& z) const
    {
        for (int s = 0; s < 4; ++s) {
            pow_[s][0] = Cx<R>(R(1));
            for (std::uint32_t e = 1; e <= maxe_[s]; ++e) pow_[s][e] = pow_[s][e - 1] * z[s];
        }
        Cx<R> sum;
        for (const Term& t : terms_) {
            Cx<R> v = t.c;
            for (int s = 0; s < 4; ++s)
                if (t.e[s]) v = v * pow_[s][t.e[s]];
            sum += v;
        }
        return sum;
    }

private:
    struct Term {
        Cx<R> c;
        Exponents e;
    };
    std::vector<Term> terms_;
    Exponents maxe_{0, 0, 0, 0};
    mutable std::array<std::vector<Cx<R>>, 4> pow_;
};

template <class R>
class Field {
public:
    explicit Field(const HamiltonianSystem& sys)
        : f_{Compiled<R>(sys.H().diff(2)), Compiled<R>(sys.H().diff(3)), Compiled<R>(-sys.H().diff(0)),
             Compiled<R>(-sys.H().diff(1))}
    {}

    StateR<R> operator()(const StateR<R>& z) const { return {f_[0](z), f_[1](z), f_[2](z), f_[3](z)}; }

private:
    std::array<Compiled<R>, 4> f_;
};

template <class R>
StateR<R> axpy(const StateR<R>& z, R h, const StateR<R>& k)
{
    return {z[0] + h * k[0], z[1] + h * k[1], z[2] + h * k[2], z[3] + h * k[3]};
}

template <class R>
StateR<R> rk4_step(const Field<R>& f, const StateR<R>& z, R h)
{
    const R half = h / R(2);
    StateR<R> k1 = f(z);
    StateR<R> k2 = f(axpy(z, half, k1));
    StateR<R> k3 = f(axpy(z, half, k2));
    StateR<R> k4 = f(axpy(z, h, k3));
    StateR<R> out;
    const R sixth = h / R(6);
    for (int s = 0; s < 4; ++s) out[s] = z[s] + sixth * (k1[s] + R(2) * k2[s] + R(2) * k3[s] + k4[s]);
    return out;
}

template <class R>
bool state_ok(const StateR<R>& z, double limit)
{
    for (const auto& c : z) {
        double x = static_cast<double>(c.re), y = static_cast<double>(c.im);
        if (!std::isfinite(x) || !std::isfinite(y) || std::hypot(x, y) > limit) return false;
    }
    return true;
}

template <class R>
StateR<R> lift(const State4& z)
{
    StateR<R> out;
    for (int s = 0; s < 4; ++s) out[s] = {R(z[s].real()), R(z[s].imag())};
    return out;
}

State4 lower(const StateR<double>& z)
{
    State4 out;
    for (int s = 0; s < 4; ++s) out[s] = {z[s].re, z[s].im};
    return out;
}

// Matrix taking states of `from` coordinates to `to` coordinates.
Matrix4 coordinate_map(VarSet from, VarSet to)
{
    if (from == to) return identity4();
    Matrix4 T = symplectic_transform();
    return from.coordinates() == Coordinates::Natural ? T : inverse(T);
}

// An integral with its coordinate change, evaluated on states of the flow.
template <class R>
class Monitor {
public:
    Monitor(const Poly& F, VarSet flow_vars) : f_(F)
    {
        Matrix4 M = coordinate_map(flow_vars, F.vars());
        identity_ = F.vars() == flow_vars;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m_[i][j] = to_cx<R>(M[i][j]);
    }

    Cx<R> operator()(const StateR<R>& z) const
    {
        if (identity_) return f_(z);
        StateR<R> w;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) w[i] += m_[i][j] * z[j];
        return f_(w);
    }

private:
    Compiled<R> f_;
    std::array<StateR<R>, 4> m_;
    bool identity_ = true;
};

template <class R>
DriftReport drift_impl(const HamiltonianSystem& sys, const PhaseState& z0, double t_end, double dt,
                       const std::vector<Poly>& integrals)
{
    Field<R> f(sys);
    std::vector<Monitor<R>> mons;
    for (const Poly& F : integrals) mons.emplace_back(F, sys.vars());
    StateR<R> z = lift<R>(z0.z);
    std::vector<Cx<R>> start;
    std::vector<double> scale;
    for (const auto& m : mons) {
        start.push_back(m(z));
        scale.push_back(std::max(1.0, start.back().modulus()));
    }
    DriftReport rep;
    rep.drift.assign(mons.size(), 0.0);
    const long n = std::lround(t_end / dt);
    const R h = R(dt);
    for (long i = 0; i < n; ++i) {
        z = rk4_step(f, z, h);
        if (!state_ok(z, 1e12)) {
            rep.blew_up = true;
            break;
        }
        ++rep.steps;
        for (std::size_t j = 0; j < mons.size(); ++j)
            rep.drift[j] = std::max(rep.drift[j], (mons[j](z) - start[j]).modulus() / scale[j]);
    }
    return rep;
}

GR pow_int(const GR& g, int n) { return n >= 0 ? g.pow(static_cast<unsigned>(n)) : g.inverse().pow(static_cast<unsigned>(-n)); }

Complex cpow(Complex g, double a) { return std::exp(a * std::log(g)); }

}  // namespace

bool PhaseState::finite() const
{
    return std::isfinite(t) && std::all_of(z.begin(), z.end(), [](Complex c) {
               return std::isfinite(c.real()) && std::isfinite(c.imag());
           });
}

PhaseState random_state(std::uint64_t seed, double radius)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PhaseState s;
    for (Complex& c : s.z) c = std::polar(radius * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng));
    return s;
}

Trajectory integrate_hamilton(const HamiltonianSystem& sys, const PhaseState& z0, double t_end, double dt,
                              const IntegrateOptions& opts)
{
    if (!(dt > 0) || !(t_end > 0)) throw std::invalid_argument("dt and t_end must be positive");
    if (!z0.finite()) throw std::invalid_argument("initial state is not finite");
    Field<double> f(sys);
    Trajectory tr;
    tr.vars = sys.vars();
    tr.states.push_back(z0);
    StateR<double> z = lift<double>(z0.z);
    const long n = std::lround(t_end / dt);
    const std::size_t every = std::max<std::size_t>(1, opts.keep_every);
    for (long i = 1; i <= n; ++i) {
        z = rk4_step(f, z, dt);
        double t = z0.t + static_cast<double>(i) * dt;
        if (!state_ok(z, opts.blowup_modulus)) {
            tr.blew_up = true;
            tr.diagnostic = "non-finite or oversized state at t = " + std::to_string(t);
            break;
        }
        if (i % static_cast<long>(every) == 0 || i == n) tr.states.push_back({lower(z), t});
    }
    return tr;
}

std::vector<double> conservation_drift(const Trajectory& traj, const std::vector<Poly>& integrals)
{
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
    std::vector<double> out;
    for (const Poly& F : integrals) {
        Monitor<double> m(F, traj.vars);
        Cx<double> f0 = m(lift<double>(traj.states.front().z));
        double scale = std::max(1.0, f0.modulus());
        double worst = 0.0;
        for (const PhaseState& s : traj.states) worst = std::max(worst, (m(lift<double>(s.z)) - f0).modulus() / scale);
        out.push_back(worst);
    }
    return out;
}

DriftReport flow_drift(const HamiltonianSystem& sys, const PhaseState& z0, double t_end, double dt,
                       const std::vector<Poly>& integrals, Precision precision)
{
    if (!(dt > 0) || !(t_end > 0)) throw std::invalid_argument("dt and t_end must be positive");
    if (precision == Precision::Quad) return drift_impl<__float128>(sys, z0, t_end, dt, integrals);
    return drift_impl<double>(sys, z0, t_end, dt, integrals);
}

Poly restrict_to_plane(const Poly& F, const GR& c)
{
    if (!(F.vars() == VarSet::natural())) throw VarSetMismatch("plane restriction needs natural variables");
    Poly out(F.vars());
    for (const auto& [m, coef] : F.terms())
        out.add_term(Monomial{{m.e[0] + m.e[1], 0, m.e[2] + m.e[3], 0}}, coef * c.pow(m.e[1] + m.e[3]));
    return out;
}

PlaneTest invariant_plane_test(int k, int l, const GR& c)
{
    auto sys = HamiltonianSystem::exceptional(k, l, GR(1));
    auto f = hamiltonian_vector_field(sys);
    PlaneTest t;
    t.k = k;
    t.l = l;
    t.c = c;
    t.residual_q = restrict_to_plane(f[1], c) - restrict_to_plane(f[0], c) * c;
    t.residual_p = restrict_to_plane(f[3], c) - restrict_to_plane(f[2], c) * c;
    t.invariant = t.residual_q.is_zero() && t.residual_p.is_zero();
    t.criterion = k == 2 * l || c == GR::i() || c == -GR::i();
    return t;
}

bool invariant_plane_numeric(int k, int l, Complex c, std::uint64_t seed, double tol)
{
    auto sys = HamiltonianSystem::exceptional(k, l, GR(1));
    auto f = hamiltonian_vector_field(sys);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Complex q{u(rng), u(rng)}, p{u(rng), u(rng)};
        Point4 z{q, c * q, p, c * p};
        std::array<Complex, 4> v;
        double scale = 1.0;
        for (int s = 0; s < 4; ++s) {
            v[s] = f[s].eval(z);
            scale = std::max(scale, std::abs(v[s]));
        }
        if (std::abs(v[1] - c * v[0]) > tol * scale || std::abs(v[3] - c * v[2]) > tol * scale) return false;
    }
    return true;
}

bool axis_plane_invariant(int k, int l)
{
    auto sys = HamiltonianSystem::exceptional(k, l, GR(1));
    auto f = hamiltonian_vector_field(sys);
    for (int s : {0, 2})
        for (const auto& [m, c] : f[s].terms())
            if (m.e[0] == 0 && m.e[2] == 0) return false;
    return true;
}

Complex ParticularSolution::x(Complex t) const { return cpow(g(t), -1.0 / (l - 1)); }

Complex ParticularSolution::xdot(Complex t) const
{
    double a = 1.0 / (l - 1);
    return -a * static_cast<double>(branch) * b2 * cpow(g(t), -a - 1);
}

Complex ParticularSolution::xddot(Complex t) const
{
    double a = 1.0 / (l - 1);
    return a * (a + 1) * b2 * b2 * cpow(g(t), -a - 2);
}

Complex ParticularSolution::singular_time() const { return -b1 / (static_cast<double>(branch) * b2); }

bool ParticularSolution::printed_relation_holds() const
{
    Complex m = mu.to_complex();
    return std::abs(-2.0 * nu * nu - m / static_cast<double>(l + 1)) <= 1e-12 * std::max(1.0, std::abs(m));
}

ParticularSolution particular_solution(int l, const GR& alpha, const GR& c, int branch, Complex c1)
{
    if (l < 2) throw std::invalid_argument("particular solutions need l >= 2");
    if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
    ParticularSolution s;
    s.l = l;
    s.alpha = alpha;
    s.c = c;
    s.branch = branch;
    s.mu = -GR(2L * l) * alpha * (c * c + GR(1)).pow(static_cast<unsigned>(l - 1));
    if (s.mu.is_zero()) throw DegeneratePlane("mu = 0: c^2 = -1 collapses the plane dynamics");
    s.b2_squared = s.mu * GR(static_cast<long>(l - 1) * (l - 1)) / GR(l);
    GR nu2 = s.mu / GR(4L * l);
    auto exact = exact_sqrt(nu2);
    s.nu = exact ? exact->to_complex() : std::sqrt(nu2.to_complex());
    s.b1 = c1 * static_cast<double>(l - 1);
    s.b2 = 2.0 * s.nu * static_cast<double>(l - 1);
    return s;
}

SolutionCheck check_solution(const ParticularSolution& sol, std::uint64_t seed)
{
    SolutionCheck out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double radius = 1.0 + 2.0 * std::abs(sol.singular_time());
    Complex mu = sol.mu.to_complex();
    const int l = sol.l;
    int guard = 0;
    while (out.samples < 50 && guard++ < 100000) {
        Complex t = std::polar(radius * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng));
        Complex g = sol.g(t);
        if (std::abs(g) < 0.1 || std::abs(std::arg(g)) > std::numbers::pi - 0.1) continue;
        Complex x = sol.x(t), xd = sol.xdot(t), xdd = sol.xddot(t);
        Complex x2l1 = std::pow(x, 2 * l - 1);
        Complex rhs = mu * x2l1;
        out.ode_residual = std::max(out.ode_residual, std::abs(xdd - rhs) / std::max(1.0, std::abs(rhs)));
        Complex kin = xd * xd / 2.0;
        Complex h = kin - mu * x2l1 * x / static_cast<double>(2 * l);
        out.energy_residual = std::max(out.energy_residual, std::abs(h) / std::max(1.0, std::abs(kin)));
        ++out.samples;
    }
    return out;
}

std::array<GR, 3> mu_hat_formula(int l, const GR& alpha, const GR& c)
{
    GR c2 = c * c;
    GR base = pow_int(c2 + GR(1), l - 2);
    GR two_l_alpha = GR(2L * l) * alpha;
    return {-two_l_alpha * (c2 + GR(2L * l - 1)) * base, -GR(4L * l) * alpha * c * GR(l - 1) * base,
            -two_l_alpha * (GR(2L * l) * c2 - c2 + GR(1)) * base};
}

std::array<GR, 3> mu_hat_from_hessian(int l, const GR& alpha, const GR& c)
{
    Poly V = exceptional_potential(2 * l, l, alpha);
    auto on_line = [&](const Poly& h) {
        GR s;
        for (const auto& [m, coef] : h.terms()) s += coef * c.pow(m.e[1]);
        return -s;
    };
    return {on_line(V.diff(0).diff(0)), on_line(V.diff(0).diff(1)), on_line(V.diff(1).diff(1))};
}

VariationalSystem variational_system(int l, const GR& alpha, const GR& c, const std::optional<ParticularSolution>& sol)
{
    if (l < 1) throw std::invalid_argument("l must be >= 1");
    if (l >= 2 && !sol) throw std::invalid_argument("l >= 2 needs a particular solution");
    if ((c * c + GR(1)).is_zero()) throw DegeneratePlane("c^2 = -1");
    VariationalSystem vs;
    vs.l = l;
    vs.alpha = alpha;
    vs.c = c;
    if (l >= 2) vs.sol = sol;
    vs.mu_hat = mu_hat_formula(l, alpha, c);
    vs.hessian_check = vs.mu_hat == mu_hat_from_hessian(l, alpha, c);
    if (!vs.hessian_check) throw std::logic_error("mu_hat disagrees with the Hessian restriction");
    return vs;
}

Complex VariationalSystem::x_power(double t) const
{
    if (!sol) return 1.0;
    Complex g = sol->g(t);
    return 1.0 / (g * g);
}

std::array<std::array<Complex, 4>, 4> VariationalSystem::A(double t) const
{
    Complex xp = x_power(t);
    std::array<std::array<Complex, 4>, 4> a{};
    a[0][2] = a[1][3] = 1.0;
    a[2][0] = mu_hat[0].to_complex() * xp;
    a[2][1] = a[3][0] = mu_hat[1].to_complex() * xp;
    a[3][1] = mu_hat[2].to_complex() * xp;
    return a;
}

ExponentReport exponent_analysis(const VariationalSystem& vs)
{
    ExponentReport rep;
    rep.b2_squared = vs.sol ? vs.sol->b2_squared : GR(1);
    const auto& [m11, m12, m22] = vs.mu_hat;
    GR tr = m11 + m22;
    GR det = m11 * m22 - m12 * m12;
    GR disc = tr * tr - GR(4) * det;
    if (disc.is_zero()) rep.diagonalizable = m12.is_zero() && m11 == m22;

    std::array<std::optional<GR>, 2> lam_exact;
    std::array<Complex, 2> lam;
    if (auto sq = exact_sqrt(disc)) {
        lam_exact = {(tr + *sq) / GR(2), (tr - *sq) / GR(2)};
        lam = {lam_exact[0]->to_complex(), lam_exact[1]->to_complex()};
    } else {
        Complex s = std::sqrt(disc.to_complex());
        lam = {(tr.to_complex() + s) / 2.0, (tr.to_complex() - s) / 2.0};
    }

    for (int i = 0; i < 2; ++i) {
        ExponentPair& p = rep.pairs[i];
        p.eigenvalue = lam[i];
        p.eigen_exact = lam_exact[i].has_value();
        if (p.eigen_exact) p.eigenvalue_exact = *lam_exact[i];
        // r^2 - r - lambda / b2^2 = 0
        std::optional<GR> root;
        if (p.eigen_exact) {
            GR s = GR(1) + GR(4) * p.eigenvalue_exact / rep.b2_squared;
            root = exact_sqrt(s);
            if (root) {
                GR a = (GR(1) + *root) / GR(2), b = (GR(1) - *root) / GR(2);
                if (a.re() < b.re()) std::swap(a, b);
                p.r_exact = std::array<GR, 2>{a, b};
                p.r = {a.to_complex(), b.to_complex()};
                p.repeated = root->is_zero();
                GR d = a - b;
                p.integer_separated = d.is_real() && d.re().is_integer() && d.re().sign() > 0;
            }
        }
        if (!p.r_exact) {
            Complex s = 1.0 + 4.0 * lam[i] / rep.b2_squared.to_complex();
            Complex sq = std::sqrt(s);
            Complex a = (1.0 + sq) / 2.0, b = (1.0 - sq) / 2.0;
            if (a.real() < b.real()) std::swap(a, b);
            p.r = {a, b};
            p.repeated = std::abs(sq) < 1e-12;
            Complex d = a - b;
            p.integer_separated = !p.repeated && std::abs(d.imag()) < 1e-12 && std::abs(d.real() - std::round(d.real())) < 1e-12;
        }
        p.sum = p.r[0] + p.r[1];
    }
    bool repeated = rep.pairs[0].repeated || rep.pairs[1].repeated;
    rep.indicator = (!rep.diagonalizable || repeated) ? GaloisIndicator::LogRisk : GaloisIndicator::DiagonalCompatible;
    return rep;
}

Matrix4c symplectic_J2()
{
    Matrix4c j{};
    j[0][2] = j[1][3] = 1.0;
    j[2][0] = j[3][1] = -1.0;
    return j;
}

namespace {

Matrix4c matmul(const Matrix4c& a, const Matrix4c& b)
{
    Matrix4c c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            if (a[i][k] == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Matrix4c madd(const Matrix4c& a, Complex s, const Matrix4c& b)
{
    Matrix4c c = a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] += s * b[i][j];
    return c;
}

double symplectic_defect(const Matrix4c& phi)
{
    static const Matrix4c J = symplectic_J2();
    Matrix4c pt{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) pt[i][j] = phi[j][i];
    Matrix4c m = matmul(matmul(pt, J), phi);
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += std::norm(m[i][j] - J[i][j]);
    return std::sqrt(s);
}

}  // namespace

FundamentalPath integrate_variational(const VariationalSystem& vs, double t_start, double t_end, double dt,
                                      std::size_t keep_every)
{
    if (!(dt > 0) || !(t_end > t_start)) throw std::invalid_argument("need dt > 0 and t_end > t_start");
    if (vs.sol) {
        Complex t0 = vs.sol->singular_time();
        double dist = t0.real() < t_start ? std::abs(t0 - t_start)
                      : t0.real() > t_end ? std::abs(t0 - t_end)
                                          : std::abs(t0.imag());
        if (dist < 0.1) throw std::domain_error("time span passes within 0.1 of the singular time");
    }
    FundamentalPath path;
    Matrix4c phi{};
    for (int i = 0; i < 4; ++i) phi[i][i] = 1.0;
    path.times.push_back(t_start);
    path.phi.push_back(phi);
    const long n = std::lround((t_end - t_start) / dt);
    const std::size_t every = std::max<std::size_t>(1, keep_every);
    for (long i = 1; i <= n; ++i) {
        double t = t_start + static_cast<double>(i - 1) * dt;
        Matrix4c k1 = matmul(vs.A(t), phi);
        Matrix4c k2 = matmul(vs.A(t + dt / 2), madd(phi, dt / 2, k1));
        Matrix4c k3 = matmul(vs.A(t + dt / 2), madd(phi, dt / 2, k2));
        Matrix4c k4 = matmul(vs.A(t + dt), madd(phi, dt, k3));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) phi[r][c] += dt / 6 * (k1[r][c] + 2.0 * k2[r][c] + 2.0 * k3[r][c] + k4[r][c]);
        path.symplectic_drift = std::max(path.symplectic_drift, symplectic_defect(phi));
        if (i % static_cast<long>(every) == 0 || i == n) {
            path.times.push_back(t_start + static_cast<double>(i) * dt);
            path.phi.push_back(phi);
        }
    }
    return path;
}

}  // namespace expot
