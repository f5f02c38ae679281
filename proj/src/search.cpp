#include "expot/search.hpp"

#include <algorithm>
#include <chrono>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace expot {

std::vector<Monomial> enumerate_ansatz(int k, int m, long W)
{
    if (k < 1) throw std::invalid_argument("degree k must be positive");
    std::vector<Monomial> out;
    if (W < 0 || m < 0) return out;
    for (long j = 0; j <= m; ++j) {
        long rest = W - static_cast<long>(k) * j;
        if (rest < 0) break;
        if (rest % 2 != 0) continue;
        long pos = rest / 2;
        for (long c = 0; c <= j; ++c)
            for (long a = 0; a <= pos; ++a)
                out.push_back({{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(pos - a),
                                static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(j - c)}});
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

void SparseMatrix::set_column(std::size_t c, Column entries)
{
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [r, v] : entries)
        if (r >= rows_) throw std::out_of_range("row index out of range");
    std::erase_if(entries, [](const auto& e) { return e.second.is_zero(); });
    columns_.at(c) = std::move(entries);
}

GR SparseMatrix::at(std::size_t r, std::size_t c) const
{
    for (const auto& [row, v] : columns_.at(c))
        if (row == r) return v;
    return GR(0);
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& col : columns_) n += col.size();
    return n;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<GR>>& rows)
{
    std::size_t ncols = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(rows.size(), ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
        Column col;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!rows[r].at(c).is_zero()) col.emplace_back(r, rows[r][c]);
        m.set_column(c, std::move(col));
    }
    return m;
}

BracketSystem build_bracket_system(const HamiltonianSystem& sys, const std::vector<Monomial>& ansatz)
{
    const long k = sys.degree();
    auto w = phase_weights(k);
    if (sys.H().weight(w).value() != 2 * k) throw std::invalid_argument("H is not weight-homogeneous of weight 2k");

    VarSet vars = sys.vars();
    std::vector<Poly> images;
    images.reserve(ansatz.size());
    std::map<Monomial, std::size_t, std::greater<>> row_index;
    for (const Monomial& mono : ansatz) {
        images.push_back(poisson_bracket(sys.H(), Poly::term(GR(1), mono, vars)));
        for (const auto& [m, c] : images.back().terms()) row_index.emplace(m, 0);
    }

    BracketSystem out;
    out.columns = ansatz;
    out.rows.reserve(row_index.size());
    for (auto& [m, idx] : row_index) {
        idx = out.rows.size();
        out.rows.push_back(m);
    }
    out.matrix = SparseMatrix(out.rows.size(), ansatz.size());
    for (std::size_t j = 0; j < images.size(); ++j) {
        SparseMatrix::Column col;
        for (const auto& [m, c] : images[j].terms()) col.emplace_back(row_index.at(m), c);
        out.matrix.set_column(j, std::move(col));
    }
    return out;
}

namespace {

using SparseRow = std::map<std::size_t, GR>;

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// row -= f * pivot
void axpy(SparseRow& row, const GR& f, const SparseRow& pivot)
{
    for (const auto& [c, v] : pivot) {
        auto [it, inserted] = row.try_emplace(c, -(f * v));
        if (inserted) continue;
        it->second -= f * v;
        if (it->second.is_zero()) row.erase(it);
    }
}

void scale_first_to_one(ExactVector& v)
{
    auto it = std::find_if(v.begin(), v.end(), [](const GR& x) { return !x.is_zero(); });
    if (it == v.end() || it->is_one()) return;
    GR s = it->inverse();
    for (GR& x : v)
        if (!x.is_zero()) x *= s;
}

// Gauss-Jordan on the rows of one connected block; fills `basis` with
// (free column, kernel vector) pairs.
void block_kernel(std::vector<SparseRow> rows, const std::vector<std::size_t>& cols, std::size_t ncols,
                  std::vector<std::pair<std::size_t, ExactVector>>& basis)
{
    std::vector<bool> used(rows.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
    std::vector<std::size_t> free_cols;
    for (std::size_t col : cols) {
        std::size_t best = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || !rows[r].count(col)) continue;
            if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
        }
        if (best == rows.size()) {
            free_cols.push_back(col);
            continue;
        }
        used[best] = true;
        SparseRow& p = rows[best];
        GR inv = p.at(col).inverse();
        for (auto& [c, v] : p) v *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == best) continue;
            auto it = rows[r].find(col);
            if (it == rows[r].end()) continue;
            GR f = it->second;
            axpy(rows[r], f, p);
        }
        pivots.emplace_back(col, best);
    }
    for (std::size_t f : free_cols) {
        ExactVector v(ncols);
        v[f] = GR(1);
        for (const auto& [pc, pr] : pivots) {
            auto it = rows[pr].find(f);
            if (it != rows[pr].end()) v[pc] = -it->second;
        }
        scale_first_to_one(v);
        basis.emplace_back(f, std::move(v));
    }
}

// Incremental echelon set: each stored vector has a pivot (its first
// nonzero, equal to 1) at which all later vectors vanish.
class Echelon {
public:
    explicit Echelon(std::size_t n) : n_(n) {}

    // Reduces v in place; returns true when it was independent and stored.
    bool insert(ExactVector& v)
    {
        reduce(v);
        auto it = std::find_if(v.begin(), v.end(), [](const GR& x) { return !x.is_zero(); });
        if (it == v.end()) return false;
        scale_first_to_one(v);
        pivots_.push_back(static_cast<std::size_t>(it - v.begin()));
        rows_.push_back(v);
        return true;
    }

    void reduce(ExactVector& v) const
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            GR f = v[pivots_[i]];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!rows_[i][j].is_zero()) v[j] -= f * rows_[i][j];
        }
    }

private:
    std::size_t n_;
    std::vector<ExactVector> rows_;
    std::vector<std::size_t> pivots_;
};

Poly from_coordinates(const ExactVector& v, const std::vector<Monomial>& ansatz, VarSet vars)
{
    Poly p(vars);
    for (std::size_t j = 0; j < v.size(); ++j) p.add_term(ansatz[j], v[j]);
    return p;
}

}  // namespace

std::vector<ExactVector> exact_nullspace(const SparseMatrix& m)
{
    const std::size_t ncols = m.cols();
    std::vector<SparseRow> rows(m.rows());
    for (std::size_t c = 0; c < ncols; ++c)
        for (const auto& [r, v] : m.column(c)) rows[r].emplace(c, v);

    DisjointSets sets(ncols);
    for (const auto& row : rows)
        for (const auto& [c, v] : row) sets.unite(row.begin()->first, c);

    std::map<std::size_t, std::vector<std::size_t>> block_cols;
    for (std::size_t c = 0; c < ncols; ++c) block_cols[sets.find(c)].push_back(c);
    std::map<std::size_t, std::vector<SparseRow>> block_rows;
    for (auto& row : rows)
        if (!row.empty()) block_rows[sets.find(row.begin()->first)].push_back(std::move(row));

    std::vector<std::pair<std::size_t, ExactVector>> basis;
    for (const auto& [root, cols] : block_cols) {
        auto it = block_rows.find(root);
        block_kernel(it == block_rows.end() ? std::vector<SparseRow>{} : std::move(it->second), cols, ncols, basis);
    }
    std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<ExactVector> out;
    out.reserve(basis.size());
    for (auto& [f, v] : basis) out.push_back(std::move(v));
    return out;
}

std::optional<ExactVector> coordinates(const Poly& F, const std::vector<Monomial>& ansatz)
{
    ExactVector v(ansatz.size());
    std::map<Monomial, std::size_t> index;
    for (std::size_t j = 0; j < ansatz.size(); ++j) index.emplace(ansatz[j], j);
    for (const auto& [m, c] : F.terms()) {
        auto it = index.find(m);
        if (it == index.end()) return std::nullopt;
        v[it->second] = c;
    }
    return v;
}

bool in_span(const Poly& F, const std::vector<Poly>& basis)
{
    std::map<Monomial, int, std::greater<>> support;
    for (const auto& [m, c] : F.terms()) support.emplace(m, 0);
    for (const Poly& b : basis) {
        if (!(b.vars() == F.vars())) throw VarSetMismatch("span test across variable sets");
        for (const auto& [m, c] : b.terms()) support.emplace(m, 0);
    }
    std::vector<Monomial> monos;
    for (const auto& [m, unused] : support) monos.push_back(m);
    Echelon e(monos.size());
    for (const Poly& b : basis) {
        ExactVector v = *coordinates(b, monos);
        e.insert(v);
    }
    ExactVector f = *coordinates(F, monos);
    e.reduce(f);
    return std::all_of(f.begin(), f.end(), [](const GR& x) { return x.is_zero(); });
}

std::vector<Poly> trivial_products(const std::vector<Poly>& generators, int k, int m, long W)
{
    auto w = phase_weights(k);
    struct Gen {
        const Poly* p;
        long weight;
        int mdeg;
    };
    std::vector<Gen> gens;
    VarSet vars = generators.empty() ? VarSet() : generators.front().vars();
    for (const Poly& g : generators) {
        auto gw = g.weight(w).value();
        if (!gw || *gw <= 0 || !(g.vars() == vars)) continue;
        gens.push_back({&g, *gw, g.momentum_degree()});
    }

    std::vector<Poly> out;
    Poly one = Poly::constant(GR(1), vars);
    // Depth-first over exponent vectors in lexicographic order of the
    // generator list, so output order is deterministic.
    auto rec = [&](auto&& self, std::size_t i, long wleft, int mleft, const Poly& acc) -> void {
        if (wleft == 0) {
            out.push_back(acc);
            return;
        }
        if (i == gens.size()) return;
        const Gen& g = gens[i];
        long maxe = wleft / g.weight;
        if (g.mdeg > 0) maxe = std::min<long>(maxe, mleft / g.mdeg);
        std::vector<Poly> pw{acc};
        for (long e = 1; e <= maxe; ++e) pw.push_back(pw.back() * *g.p);
        for (long e = maxe; e >= 0; --e) self(self, i + 1, wleft - e * g.weight, mleft - static_cast<int>(e) * g.mdeg, pw[e]);
    };
    if (W >= 0) rec(rec, 0, W, m, one);
    return out;
}

SearchReport direct_search(const HamiltonianSystem& sys, int m, long W, const std::vector<Poly>& known)
{
    auto start = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.ansatz = {sys.degree(), m, W};
    std::vector<Monomial> ansatz = enumerate_ansatz(rep.ansatz);
    rep.ansatz_size = ansatz.size();
    VarSet vars = sys.vars();

    BracketSystem bs = build_bracket_system(sys, ansatz);
    rep.equations = bs.rows.size();
    std::vector<ExactVector> kernel = exact_nullspace(bs.matrix);
    rep.kernel_dimension = kernel.size();
    rep.verified = true;
    for (const auto& v : kernel) {
        rep.kernel_basis.push_back(from_coordinates(v, ansatz, vars));
        if (!is_first_integral(sys, rep.kernel_basis.back())) rep.verified = false;
    }

    std::vector<Poly> gens{sys.H()};
    for (const Poly& J : known)
        if (J.vars() == vars && !J.is_constant()) gens.push_back(J);
    Echelon span(ansatz.size());
    for (Poly& t : trivial_products(gens, sys.degree(), m, W)) {
        auto v = coordinates(t, ansatz);
        if (!v) continue;
        if (span.insert(*v)) rep.trivial_subspace.push_back(std::move(t));
    }
    for (ExactVector v : kernel)
        if (span.insert(v)) rep.novel_candidates.push_back(from_coordinates(v, ansatz, vars));

    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<SearchReport> scan(const HamiltonianSystem& sys, const ScanOptions& opts)
{
    if (opts.m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    std::vector<SearchReport> out;
    for (int m = 1; m <= opts.m_max; ++m) {
        long cap = opts.weight_cap > 0 ? opts.weight_cap : 2L * sys.degree() * m;
        std::vector<Poly> known = opts.known;
        for (long W = 0; W <= cap; ++W) {
            SearchReport r = direct_search(sys, m, W, known);
            for (const Poly& J : r.novel_candidates) known.push_back(J);
            out.push_back(std::move(r));
        }
    }
    return out;
}

bool recovers(const std::vector<SearchReport>& reports, const Poly& J)
{
    if (reports.empty() || J.is_zero()) return false;
    auto w = phase_weights(reports.front().ansatz.k);
    auto W = J.weight(w).value();
    if (!W) return false;
    for (const SearchReport& r : reports) {
        if (r.ansatz.m != J.momentum_degree() || r.ansatz.W != *W) continue;
        std::vector<Poly> all = r.trivial_subspace;
        all.insert(all.end(), r.novel_candidates.begin(), r.novel_candidates.end());
        return in_span(J, all) && !in_span(J, r.trivial_subspace);
    }
    return false;
}

double numeric_bracket_residual(const HamiltonianSystem& sys, const Poly& F, int points, std::uint64_t seed)
{
    std::array<Poly, 4> dH, dF;
    for (int s = 0; s < 4; ++s) {
        dH[s] = sys.H().diff(s);
        dF[s] = F.diff(s);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < points; ++t) {
        Point4 z;
        for (auto& c : z) c = {uni(rng), uni(rng)};
        std::complex<double> b{0, 0};
        for (int q = 0; q < 2; ++q) {
            int p = VarSet::conjugate(q);
            b += dH[p].eval(z) * dF[q].eval(z) - dH[q].eval(z) * dF[p].eval(z);
        }
        worst = std::max(worst, std::abs(b));
    }
    return worst;
}

}  // namespace expot
