#pragma once

// Two-degree-of-freedom Hamiltonian systems with exceptional potentials,
// their Poisson structure, and the catalog of known additional integrals.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expot/poly.hpp"

namespace expot {

enum class KineticForm {
    Natural,        ///< (p1^2 + p2^2) / 2
    Bihomogeneous,  ///< 2*y1*y2
};

struct ExceptionalParams {
    int k = 0;
    int l = 0;
    GR alpha{1};
};

/// H = kinetic + V(positions), V homogeneous of degree k.
class HamiltonianSystem {
public:
    /// Throws std::invalid_argument when `potential` depends on momenta or is
    /// not homogeneous.
    HamiltonianSystem(Poly potential, KineticForm kinetic, std::optional<ExceptionalParams> params = std::nullopt);

    /// V_{k,l} with the given alpha, in natural or bi-homogeneous variables.
    static HamiltonianSystem exceptional(int k, int l, const GR& alpha, Coordinates coords = Coordinates::Natural);

    const Poly& H() const { return H_; }
    const Poly& potential() const { return V_; }
    VarSet vars() const { return V_.vars(); }
    KineticForm kinetic() const { return kinetic_; }
    int degree() const { return k_; }
    const std::optional<ExceptionalParams>& params() const { return params_; }

    /// Weight of H under the (2, 2, k, k) grading, i.e. 2k.
    long weight() const { return 2L * k_; }

private:
    Poly V_;
    Poly H_;
    KineticForm kinetic_;
    int k_;
    std::optional<ExceptionalParams> params_;
};

/// alpha * (q2 - i q1)^l * (q2 + i q1)^(k-l) in natural variables.
Poly exceptional_potential(int k, int l, const GR& alpha);
/// (-1)^l * i^k * alpha.
GR exceptional_beta(int k, int l, const GR& alpha);
/// alpha such that exceptional_beta(k, l, alpha) == beta.
GR exceptional_alpha_for_beta(int k, int l, const GR& beta);

/// Rows express (x1, x2, y1, y2) through (q1, q2, p1, p2):
/// x1 = q1 + i q2, x2 = q1 - i q2, y1 = (p1 - i p2)/2, y2 = (p1 + i p2)/2.
Matrix4 symplectic_transform();

Poly to_bihomogeneous(const Poly& natural);
Poly to_natural(const Poly& bihom);
HamiltonianSystem to_bihomogeneous(const HamiltonianSystem& sys);
HamiltonianSystem to_natural(const HamiltonianSystem& sys);

/// sum_i dF/dp_i * dG/dq_i - dF/dq_i * dG/dp_i, so that {p1, q1} = 1.
Poly poisson_bracket(const Poly& F, const Poly& G);
bool is_first_integral(const HamiltonianSystem& sys, const Poly& F);

/// (dH/dp1, dH/dp2, -dH/dq1, -dH/dq2) in slot order.
std::array<Poly, 4> hamiltonian_vector_field(const HamiltonianSystem& sys);

/// Numerical rank test of the Jacobian [grad H; grad F] at seeded random
/// complex points.
bool functional_independence(const HamiltonianSystem& sys, const Poly& F, int trials, std::uint64_t seed,
                             double ratio_threshold = 1e-8);

/// Known additional integral for (k, l).
struct CatalogEntry {
    int item = 0;  ///< 1..7 in the bi-homogeneous list
    int k = 0;
    int l = 0;
    GR alpha;
    GR beta;
    bool alpha_fixed = false;  ///< (7,2), (7,5): stored at beta = 1
    Poly J_bihom;
    Poly J_natural;
    std::string formula;
};

std::optional<CatalogEntry> catalog(int k, int l, const GR& alpha = GR(1));

/// Item-6 shaped candidate for H = 2 y1 y2 + x1^2 x2^5 with leading
/// coefficient `a` (16 gives the true integral).
Poly item6_candidate(const GR& a);

/// Integrals as printed in the natural-variable summary table, with the
/// potential they are printed against.
struct TableRow {
    int k = 0;
    int l = 0;
    Poly V_printed;
    Poly J_printed;
    /// The (l, alpha) of the exceptional family that V_printed equals.
    int l_effective = 0;
    GR alpha_effective;
    std::string reading;
};

std::optional<TableRow> table_row(int k, int l, const GR& alpha = GR(1));

/// Swap x1<->x2, y1<->y2 (or q1<->q2, p1<->p2).
Poly swap_pairs(const Poly& f);

/// A with A*A^T = scale * I, scale != 0.
class Po2cMatrix {
public:
    /// Throws std::invalid_argument when the orthogonality condition fails.
    explicit Po2cMatrix(std::array<std::array<GR, 2>, 2> a);

    const std::array<std::array<GR, 2>, 2>& matrix() const { return a_; }
    const GR& scale() const { return scale_; }

private:
    std::array<std::array<GR, 2>, 2> a_;
    GR scale_;
};

/// V(A q): positions replaced by A applied to them, momenta unchanged.
Poly apply_po2c(const Po2cMatrix& a, const Poly& V);

}  // namespace expot
