#pragma once

// Darboux points of planar homogeneous potentials: directions d with
// V'(d) = lambda * d.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "expot/poly.hpp"

namespace expot {

using Complex = std::complex<double>;

/// Univariate polynomial over Q(i), coefficients from degree 0 upwards.
using UPoly = std::vector<GR>;

/// Yun's algorithm: pairs (f_i, i) with p = c * prod f_i^i, each f_i monic
/// and square-free. Constant factors are omitted.
std::vector<std::pair<UPoly, int>> squarefree_factors(const UPoly& p);

struct AberthOptions {
    double tolerance = 1e-12;
    int max_sweeps = 200;
    std::uint64_t seed = 0x5eed;
};

/// All complex roots of a polynomial with simple roots (coefficients from
/// degree 0 upwards), by Aberth-Ehrlich iteration followed by Newton polish.
std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, const AberthOptions& opts = {});

/// [d1 : d2], stored with |d1|^2 + |d2|^2 = 1.
struct ProjectivePoint {
    Complex d1{1.0, 0.0};
    Complex d2{0.0, 0.0};

    static ProjectivePoint normalized(Complex a, Complex b);
};

struct ProjectiveRoot {
    ProjectivePoint point;
    int multiplicity = 1;
};

/// q1 * dV/dq2 - q2 * dV/dq1. Throws std::invalid_argument when V is not a
/// homogeneous polynomial in the positions.
Poly darboux_polynomial(const Poly& V);

/// Roots of a nonzero homogeneous form in (q1, q2) on the projective line,
/// with multiplicities summing to its degree. Throws std::invalid_argument
/// on the zero polynomial (every direction is a root).
std::vector<ProjectiveRoot> projective_roots(const Poly& D, const AberthOptions& opts = {});

/// |D(d)| / (sum of |coefficients|) at the normalized point.
double root_residual(const Poly& D, const ProjectivePoint& d);

enum class DarbouxKind { Proper, Improper, Isotropic };

struct Classification {
    DarbouxKind kind = DarbouxKind::Improper;
    bool isotropic = false;
    double gradient_norm = 0.0;
    Complex lambda{0.0, 0.0};
    double residual = 0.0;  ///< |V'(d) - lambda d|
};

struct DarbouxTolerances {
    double gradient = 1e-9;   ///< proper iff |V'(d)| above this
    double isotropy = 1e-9;   ///< isotropic iff |d1^2 + d2^2| below this
};

/// Isotropic directions [1 : +-i] are reported separately and never
/// counted as proper.
Classification classify(const Poly& V, const ProjectivePoint& d, const DarbouxTolerances& tol = {});

struct DarbouxRoot {
    ProjectivePoint point;
    int multiplicity = 1;
    double root_residual = 0.0;
    Classification cls;
};

struct DarbouxReport {
    Poly potential;
    Poly darboux;
    int degree = 0;
    /// Darboux polynomial is identically zero: every direction is parallel.
    bool degenerate = false;
    std::vector<DarbouxRoot> roots;
    DarbouxTolerances tolerances;

    int proper_count() const;
};

DarbouxReport darboux_report(const Poly& V, const DarbouxTolerances& tol = {}, const AberthOptions& opts = {});

}  // namespace expot
