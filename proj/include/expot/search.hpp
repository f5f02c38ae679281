#pragma once

// Direct-method search for polynomial first integrals: a weight-homogeneous
// ansatz, the linear system {H, F} = 0 in its coefficients, and an exact
// kernel over Q(i).

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "expot/mech.hpp"

namespace expot {

struct AnsatzSpec {
    int k = 1;   ///< degree of the potential
    int m = 0;   ///< bound on the momentum degree
    long W = 0;  ///< total weight under (2, 2, k, k)
};

/// All monomials of weight W with momentum degree <= m, largest first
/// (graded-lex descending).
std::vector<Monomial> enumerate_ansatz(int k, int m, long W);
inline std::vector<Monomial> enumerate_ansatz(const AnsatzSpec& s) { return enumerate_ansatz(s.k, s.m, s.W); }

/// Column-major sparse matrix over Q(i).
class SparseMatrix {
public:
    using Column = std::vector<std::pair<std::size_t, GR>>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    /// Entries sorted by row index.
    const Column& column(std::size_t c) const { return columns_.at(c); }
    void set_column(std::size_t c, Column entries);
    GR at(std::size_t r, std::size_t c) const;
    std::size_t nonzeros() const;

    static SparseMatrix from_dense(const std::vector<std::vector<GR>>& rows);

private:
    std::size_t rows_ = 0;
    std::vector<Column> columns_;
};

struct BracketSystem {
    SparseMatrix matrix;
    std::vector<Monomial> columns;  ///< ansatz monomials
    std::vector<Monomial> rows;     ///< monomials of weight W + k - 2, largest first
};

/// Column j holds the coefficients of {H, columns[j]}. Throws
/// std::invalid_argument when H is not weight-homogeneous of weight 2k.
BracketSystem build_bracket_system(const HamiltonianSystem& sys, const std::vector<Monomial>& ansatz);

using ExactVector = std::vector<GR>;

/// Basis of ker(M) from the reduced row echelon form. Pivots are taken in
/// column order; one basis vector per free column, in increasing order of
/// that column, scaled so its first nonzero entry is 1.
std::vector<ExactVector> exact_nullspace(const SparseMatrix& m);

struct SearchReport {
    AnsatzSpec ansatz;
    std::size_t ansatz_size = 0;
    std::size_t equations = 0;
    std::size_t kernel_dimension = 0;
    std::vector<Poly> kernel_basis;
    std::vector<Poly> trivial_subspace;
    std::vector<Poly> novel_candidates;
    /// Every kernel element re-verified with poisson_bracket.
    bool verified = false;
    double elapsed_ms = 0.0;
};

/// Kernel of the bracket system at (m, W), reduced modulo the span of
/// products H^a * prod J^b of the same weight. `known` lists extra
/// integrals besides H; constants and non-homogeneous entries are ignored.
SearchReport direct_search(const HamiltonianSystem& sys, int m, long W, const std::vector<Poly>& known = {});

struct ScanOptions {
    int m_max = 1;
    /// Largest weight searched for each m; 0 means 2*k*m.
    long weight_cap = 0;
    std::vector<Poly> known;
};

/// direct_search for m = 1..m_max and W = 0..cap. Within one m, novel
/// candidates found at lower weight join the known list.
std::vector<SearchReport> scan(const HamiltonianSystem& sys, const ScanOptions& opts);

/// Product monomials of weight W built from `generators` (H first), with
/// momentum degree <= m.
std::vector<Poly> trivial_products(const std::vector<Poly>& generators, int k, int m, long W);

/// Coefficient vector of F on the ansatz; nullopt when F has a term
/// outside it.
std::optional<ExactVector> coordinates(const Poly& F, const std::vector<Monomial>& ansatz);

/// True when F lies in the span of `basis` (all polynomials in one VarSet).
bool in_span(const Poly& F, const std::vector<Poly>& basis);

/// J is recovered when, at its own (momentum degree, weight), it lies in
/// span(novel + trivial) but not in span(trivial).
bool recovers(const std::vector<SearchReport>& reports, const Poly& J);

/// max |{H, F}(z)| over `points` seeded random complex points with
/// components in the unit square.
double numeric_bracket_residual(const HamiltonianSystem& sys, const Poly& F, int points, std::uint64_t seed);

}  // namespace expot
