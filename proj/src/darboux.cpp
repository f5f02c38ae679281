#include "expot/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace expot {

namespace {

void trim(UPoly& p)
{
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly derivative(const UPoly& p)
{
    UPoly d;
    for (std::size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * GR(static_cast<long>(j)));
    trim(d);
    return d;
}

UPoly monic(UPoly p)
{
    trim(p);
    if (p.empty()) return p;
    GR inv = p.back().inverse();
    for (GR& c : p) c *= inv;
    return p;
}

std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b)
{
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    trim(a);
    if (deg(a) < deg(b)) return {UPoly{}, a};
    UPoly q(a.size() - b.size() + 1);
    GR lead_inv = b.back().inverse();
    for (int i = deg(a) - deg(b); i >= 0; --i) {
        GR c = a[i + deg(b)] * lead_inv;
        q[i] = c;
        if (c.is_zero()) continue;
        for (int j = 0; j <= deg(b); ++j) a[i + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

UPoly gcd(UPoly a, UPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UPoly sub(UPoly a, const UPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) a[j] -= b[j];
    trim(a);
    return a;
}

Complex horner(const std::vector<Complex>& c, Complex z, Complex* dp)
{
    Complex p{0.0, 0.0}, d{0.0, 0.0};
    for (std::size_t j = c.size(); j-- > 0;) {
        d = d * z + p;
        p = p * z + c[j];
    }
    if (dp) *dp = d;
    return p;
}

Complex position_eval(const Poly& f, Complex a, Complex b) { return f.eval({a, b, 0.0, 0.0}); }

}  // namespace

std::vector<std::pair<UPoly, int>> squarefree_factors(const UPoly& p)
{
    UPoly f = p;
    trim(f);
    std::vector<std::pair<UPoly, int>> out;
    if (deg(f) < 1) return out;
    UPoly fp = derivative(f);
    UPoly a = gcd(f, fp);
    UPoly b = divmod(f, a).first;
    UPoly c = divmod(fp, a).first;
    UPoly d = sub(c, derivative(b));
    for (int i = 1; deg(b) > 0; ++i) {
        UPoly ai = gcd(b, d);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = sub(c, derivative(b));
        if (deg(ai) > 0) out.emplace_back(monic(ai), i);
    }
    return out;
}

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, const AberthOptions& opts)
{
    std::vector<Complex> c = coeffs;
    while (!c.empty() && c.back() == Complex(0.0, 0.0)) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return {};
    for (Complex& x : c) x /= coeffs[n];
    if (n == 1) return {-c[0]};

    double r = std::abs(c[0]) > 0 ? std::pow(std::abs(c[0]), 1.0 / n) : 1.0;
    std::mt19937_64 rng(opts.seed);
    double phase = std::uniform_real_distribution<double>(0.0, 2 * std::numbers::pi)(rng);
    std::vector<Complex> z(n);
    for (int j = 0; j < n; ++j) z[j] = std::polar(r, phase + 2 * std::numbers::pi * j / n);

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            Complex dp;
            Complex p = horner(c, z[j], &dp);
            if (p == Complex(0.0, 0.0)) continue;
            Complex w = p / dp;
            Complex s{0.0, 0.0};
            for (int i = 0; i < n; ++i)
                if (i != j) s += 1.0 / (z[j] - z[i]);
            Complex step = w / (1.0 - w * s);
            z[j] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[j])));
        }
        if (worst < opts.tolerance) break;
    }
    for (Complex& x : z)
        for (int it = 0; it < 3; ++it) {
            Complex dp;
            Complex p = horner(c, x, &dp);
            if (dp == Complex(0.0, 0.0)) break;
            Complex y = x - p / dp;
            if (std::abs(horner(c, y, nullptr)) >= std::abs(p)) break;
            x = y;
        }
    return z;
}

ProjectivePoint ProjectivePoint::normalized(Complex a, Complex b)
{
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n == 0.0) throw std::invalid_argument("[0:0] is not a projective point");
    Complex ref = std::abs(a) > 1e-14 * n ? a : b;
    Complex unit = std::conj(ref) / std::abs(ref);
    return {a * unit / n, b * unit / n};
}

Poly darboux_polynomial(const Poly& V)
{
    if (!(V.vars() == VarSet::natural())) throw VarSetMismatch("Darboux polynomial needs (q1, q2)");
    if (!V.position_homogeneous_degree()) throw std::invalid_argument("potential is not homogeneous in the positions");
    Poly q1 = Poly::variable(0, V.vars()), q2 = Poly::variable(1, V.vars());
    return q1 * V.diff(1) - q2 * V.diff(0);
}

std::vector<ProjectiveRoot> projective_roots(const Poly& D, const AberthOptions& opts)
{
    if (D.is_zero()) throw std::invalid_argument("zero form: every direction is a root");
    auto n = D.position_homogeneous_degree();
    if (!n) throw std::invalid_argument("form is not homogeneous in the positions");

    // d(x) = D(1, x), x = q2 / q1
    UPoly d(*n + 1);
    for (int j = 0; j <= *n; ++j)
        d[j] = D.coefficient(Monomial{{static_cast<std::uint32_t>(*n - j), static_cast<std::uint32_t>(j), 0, 0}});
    trim(d);
    int at_infinity = *n - deg(d);

    std::vector<std::pair<Complex, int>> finite;
    for (const auto& [f, mult] : squarefree_factors(d)) {
        std::vector<Complex> fc;
        for (const GR& g : f) fc.push_back(g.to_complex());
        for (Complex x : aberth_roots(fc, opts)) finite.emplace_back(x, mult);
    }
    auto key = [](Complex x) { return std::pair{std::round(x.real() * 1e9), std::round(x.imag() * 1e9)}; };
    std::sort(finite.begin(), finite.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });

    std::vector<ProjectiveRoot> out;
    for (const auto& [x, mult] : finite) out.push_back({ProjectivePoint::normalized(1.0, x), mult});
    if (at_infinity > 0) out.push_back({ProjectivePoint::normalized(0.0, 1.0), at_infinity});
    return out;
}

double root_residual(const Poly& D, const ProjectivePoint& d)
{
    double norm = 0.0;
    for (const auto& [m, c] : D.terms()) norm += std::abs(c.to_complex());
    if (norm == 0.0) return 0.0;
    return std::abs(position_eval(D, d.d1, d.d2)) / norm;
}

Classification classify(const Poly& V, const ProjectivePoint& d, const DarbouxTolerances& tol)
{
    Classification c;
    Complex g1 = position_eval(V.diff(0), d.d1, d.d2);
    Complex g2 = position_eval(V.diff(1), d.d1, d.d2);
    c.gradient_norm = std::sqrt(std::norm(g1) + std::norm(g2));
    c.isotropic = std::abs(d.d1 * d.d1 + d.d2 * d.d2) < tol.isotropy;
    double dd = std::norm(d.d1) + std::norm(d.d2);
    c.lambda = (g1 * std::conj(d.d1) + g2 * std::conj(d.d2)) / dd;
    c.residual = std::sqrt(std::norm(g1 - c.lambda * d.d1) + std::norm(g2 - c.lambda * d.d2));
    if (c.isotropic)
        c.kind = DarbouxKind::Isotropic;
    else
        c.kind = c.gradient_norm > tol.gradient ? DarbouxKind::Proper : DarbouxKind::Improper;
    return c;
}

int DarbouxReport::proper_count() const
{
    return static_cast<int>(
        std::count_if(roots.begin(), roots.end(), [](const DarbouxRoot& r) { return r.cls.kind == DarbouxKind::Proper; }));
}

DarbouxReport darboux_report(const Poly& V, const DarbouxTolerances& tol, const AberthOptions& opts)
{
    DarbouxReport rep;
    rep.potential = V;
    rep.darboux = darboux_polynomial(V);
    rep.degree = *V.position_homogeneous_degree();
    rep.tolerances = tol;
    if (rep.darboux.is_zero()) {
        rep.degenerate = true;
        return rep;
    }
    for (const ProjectiveRoot& r : projective_roots(rep.darboux, opts))
        rep.roots.push_back({r.point, r.multiplicity, root_residual(rep.darboux, r.point), classify(V, r.point, tol)});
    return rep;
}

}  // namespace expot
