#pragma once

// Numeric Hamiltonian flow over complex phase space, invariant planes
// q2 = c q1, p2 = c p1, particular solutions on them and the variational
// equation along those solutions.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "expot/mech.hpp"

namespace expot {

using Complex = std::complex<double>;
using State4 = std::array<Complex, 4>;

struct PhaseState {
    State4 z{};  ///< slot order of the system's VarSet
    double t = 0.0;

    bool finite() const;
};

/// Components uniform in the complex disc of the given radius.
PhaseState random_state(std::uint64_t seed, double radius);

struct Trajectory {
    VarSet vars;
    std::vector<PhaseState> states;
    bool blew_up = false;
    std::string diagnostic;
};

struct IntegrateOptions {
    /// Store every n-th state (the final state is always stored).
    std::size_t keep_every = 1;
    /// States with a component above this modulus count as blow-up.
    double blowup_modulus = 1e12;
};

/// Classical RK4 in double precision. Stops at the first non-finite or
/// oversized state and flags the trajectory.
Trajectory integrate_hamilton(const HamiltonianSystem& sys, const PhaseState& z0, double t_end, double dt,
                              const IntegrateOptions& opts = {});

/// max_t |F(z(t)) - F(z(0))| / max(1, |F(z(0))|) per integral. Integrals
/// may be given in either coordinate system; states are mapped by the
/// symplectic transform as needed.
std::vector<double> conservation_drift(const Trajectory& traj, const std::vector<Poly>& integrals);

enum class Precision { Double, Quad };

struct DriftReport {
    std::vector<double> drift;
    std::size_t steps = 0;
    bool blew_up = false;
};

/// Integrates and monitors the drift of each integral after every step in
/// the requested precision (Quad uses the compiler's __float128).
DriftReport flow_drift(const HamiltonianSystem& sys, const PhaseState& z0, double t_end, double dt,
                       const std::vector<Poly>& integrals, Precision precision);

/// Restriction of F to q2 = c q1, p2 = c p1, as a polynomial in (q1, p1).
Poly restrict_to_plane(const Poly& F, const GR& c);

struct PlaneTest {
    int k = 0;
    int l = 0;
    GR c;
    /// Hamiltonian field restricted to the plane minus c times itself:
    /// (q2' - c q1', p2' - c p1'). Both zero iff the plane is invariant.
    Poly residual_q;
    Poly residual_p;
    bool invariant = false;
    /// k = 2l or c = +-i.
    bool criterion = false;
    bool agrees() const { return invariant == criterion; }
};

/// Exact test for V_{k,l} (alpha = 1; alpha scales the field) on the plane
/// with ratio c.
PlaneTest invariant_plane_test(int k, int l, const GR& c);
/// Numeric version for inexact c: residuals sampled at seeded points.
bool invariant_plane_numeric(int k, int l, Complex c, std::uint64_t seed = 1, double tol = 1e-9);
/// The axis plane q1 = p1 = 0 (the limit c -> infinity).
bool axis_plane_invariant(int k, int l);

class DegeneratePlane : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ParticularSolution {
    int l = 2;
    GR alpha;
    GR c;
    int branch = 1;  ///< x(t) = (b1 + branch * b2 * t)^(-1/(l-1))
    GR mu;           ///< -2 l alpha (c^2 + 1)^(l-1)
    GR b2_squared;   ///< mu (l-1)^2 / l
    Complex nu;      ///< principal root of mu / (4 l)
    Complex b1;
    Complex b2;
    double energy = 0.0;  ///< h, fixed to 0

    Complex g(Complex t) const { return b1 + static_cast<double>(branch) * b2 * t; }
    Complex x(Complex t) const;
    Complex xdot(Complex t) const;
    Complex xddot(Complex t) const;
    /// t0 = -b1 / (branch * b2)
    Complex singular_time() const;

    /// The printed relation -2 nu^2 = mu / (l + 1), evaluated.
    bool printed_relation_holds() const;
};

/// Throws std::invalid_argument for l < 2 and DegeneratePlane when mu = 0.
ParticularSolution particular_solution(int l, const GR& alpha, const GR& c, int branch, Complex c1);

struct SolutionCheck {
    double ode_residual = 0.0;     ///< max |x'' - mu x^(2l-1)| / max(1, |mu x^(2l-1)|)
    double energy_residual = 0.0;  ///< max |x'^2/2 - mu x^(2l) / (2l)|
    int samples = 0;
};

/// 50 seeded complex times in a disc around 0, excluding |g| < 0.1 and
/// arguments within 0.1 of the negative real axis.
SolutionCheck check_solution(const ParticularSolution& sol, std::uint64_t seed = 7);

struct VariationalSystem {
    int l = 1;
    GR alpha;
    GR c;
    std::optional<ParticularSolution> sol;  ///< absent for l = 1
    std::array<GR, 3> mu_hat;               ///< (mu11, mu12, mu22)
    bool hessian_check = false;

    /// Lower-left block (mu_hat) * x(t)^(2l-2).
    std::array<std::array<Complex, 4>, 4> A(double t) const;
    /// (b1 + b2 t)^(-2) factor; 1 for l = 1.
    Complex x_power(double t) const;
};

/// mu_hat from the closed forms, cross-checked against the exact Hessian of
/// V_{2l,l} on the line q2 = c q1. l = 1 gives constant coefficients and
/// needs no solution. Throws std::logic_error if the cross-check fails.
VariationalSystem variational_system(int l, const GR& alpha, const GR& c,
                                     const std::optional<ParticularSolution>& sol);

/// Closed-form mu_hat, and -Hess V_{2l,l}(x, c x) / x^(2l-2) computed from
/// the polynomial.
std::array<GR, 3> mu_hat_formula(int l, const GR& alpha, const GR& c);
std::array<GR, 3> mu_hat_from_hessian(int l, const GR& alpha, const GR& c);

struct ExponentPair {
    GR eigenvalue_exact;            ///< valid when eigen_exact
    bool eigen_exact = false;
    Complex eigenvalue;
    std::array<Complex, 2> r;       ///< r[0] has the larger real part
    std::optional<std::array<GR, 2>> r_exact;
    bool repeated = false;          ///< r[0] == r[1]
    bool integer_separated = false; ///< r[0] - r[1] a positive integer
    Complex sum;                    ///< r[0] + r[1]
};

enum class GaloisIndicator { DiagonalCompatible, LogRisk };

struct ExponentReport {
    GR b2_squared;
    bool diagonalizable = true;
    std::array<ExponentPair, 2> pairs;
    GaloisIndicator indicator = GaloisIndicator::DiagonalCompatible;
};

/// Eigenvalues of ((mu11, mu12), (mu12, mu22)) and the roots of
/// r (r - 1) b2^2 = eigenvalue. For l = 1 (no singular point) b2^2 is
/// taken as 1 and the exponents are not meaningful.
ExponentReport exponent_analysis(const VariationalSystem& vs);

using Matrix4c = std::array<std::array<Complex, 4>, 4>;

struct FundamentalPath {
    std::vector<double> times;
    std::vector<Matrix4c> phi;  ///< downsampled, includes both ends
    double symplectic_drift = 0.0;  ///< max ||Phi^T J2 Phi - J2||_F
};

/// RK4 for Phi' = A(t) Phi, Phi(t_start) = I. Throws std::domain_error if
/// the segment passes within 0.1 of the singular time.
FundamentalPath integrate_variational(const VariationalSystem& vs, double t_start, double t_end, double dt,
                                      std::size_t keep_every = 100);

/// Standard symplectic matrix ((0, I), (-I, 0)).
Matrix4c symplectic_J2();

}  // namespace expot
