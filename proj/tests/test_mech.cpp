#include <doctest.h>

#include "expot/mech.hpp"
#include "expot/parser.hpp"
#include "generators.hpp"

using namespace expot;

namespace {
const GR I = GR::i();
const VarSet N = VarSet::natural();
const VarSet B = VarSet::bihomogeneous();
Poly v(int slot, VarSet vs) { return Poly::variable(slot, vs); }
Poly bmono(const GR& c, unsigned a, unsigned b) { return Poly::term(c, Monomial{{a, b, 0, 0}}, B); }

// True when f = s*g for some nonzero constant s.
bool proportional(const Poly& f, const Poly& g)
{
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    GR s = f.terms().begin()->second / g.terms().begin()->second;
    return f == g * s;
}
}  // namespace

TEST_CASE("exceptional_potential")
{
    CHECK(exceptional_potential(2, 1, GR(1)) == parse("q1^2+q2^2", N));
    CHECK(exceptional_potential(1, 0, GR(1)) == parse("q2+i*q1", N));
    Poly v72 = exceptional_potential(7, 2, GR(1));
    CHECK(v72.position_homogeneous_degree() == 7);
    CHECK(to_bihomogeneous(v72) == bmono(-I, 2, 5));
    CHECK_THROWS_AS(exceptional_potential(3, 4, GR(1)), std::invalid_argument);
    CHECK_THROWS_AS(exceptional_potential(3, -1, GR(1)), std::invalid_argument);
    CHECK_THROWS_AS(exceptional_potential(3, 1, GR(0)), std::invalid_argument);
}

TEST_CASE("to_bihomogeneous")
{
    GR alpha(Rational(3), Rational(-2));
    for (int k = 1; k <= 12; ++k) {
        for (int l = 0; l <= k; ++l) {
            auto sys = HamiltonianSystem::exceptional(k, l, alpha);
            auto bh = to_bihomogeneous(sys);
            GR beta = (l % 2 ? GR(-1) : GR(1)) * I.pow(k) * alpha;
            CHECK(bh.potential() == bmono(beta, l, k - l));
            CHECK(bh.H() == v(2, B) * v(3, B) * GR(2) + bmono(beta, l, k - l));
            CHECK(to_natural(bh).H() == sys.H());
        }
        CHECK(exceptional_beta(k, 0, alpha) == I.pow(k) * alpha);
        CHECK(exceptional_beta(k, k, alpha) == (-I).pow(k) * alpha);
        if (k % 2 == 0) CHECK(exceptional_beta(k, k / 2, alpha) == alpha);
        CHECK(exceptional_beta(k, 1, alpha) == -(I.pow(k)) * alpha);
    }
    CHECK(to_bihomogeneous(parse("(p1^2+p2^2)/2", N)) == parse("2*y1*y2", B));
}

TEST_CASE("poisson_bracket")
{
    CHECK(poisson_bracket(v(2, N), v(0, N)) == Poly::constant(GR(1), N));
    CHECK(poisson_bracket(v(0, N), v(2, N)) == Poly::constant(GR(-1), N));
    std::mt19937_64 rng(21);
    Poly F = testing::random_poly(rng, B);
    CHECK(poisson_bracket(F, F).is_zero());
    for (int k = 1; k <= 9; ++k) {
        Poly H = v(2, B) * v(3, B) * GR(2) + bmono(I.pow(k) * GR(5), 0, k);
        CHECK(poisson_bracket(H, v(2, B)).is_zero());
    }
    CHECK_THROWS_AS(poisson_bracket(v(0, N), v(0, B)), VarSetMismatch);
}

TEST_CASE("is_first_integral")
{
    for (int k = 2; k <= 12; k += 2) {
        auto sys = HamiltonianSystem::exceptional(k, k / 2, GR(1), Coordinates::Bihomogeneous);
        CHECK(is_first_integral(sys, parse("y1*x1 - y2*x2", B)));
        CHECK(is_first_integral(sys, sys.H()));
    }
    HamiltonianSystem h72(bmono(GR(1), 2, 5), KineticForm::Bihomogeneous);
    CHECK(is_first_integral(h72, item6_candidate(GR(16))));
    CHECK_FALSE(is_first_integral(h72, item6_candidate(GR(6))));
}

TEST_CASE("item-6 coefficient adjudication")
{
    HamiltonianSystem h72(bmono(GR(1), 2, 5), KineticForm::Bihomogeneous);
    Monomial probe{{1, 6, 2, 1}};
    for (long a : {-3L, 0L, 6L, 16L, 21L}) {
        Poly br = poisson_bracket(h72.H(), item6_candidate(GR(a)));
        CHECK(br.coefficient(probe) == GR(6 * a - 96));
    }
}

TEST_CASE("catalog")
{
    GR alpha(Rational(2, 3), Rational(1));
    for (int k = 3; k <= 12; ++k) {
        auto e = catalog(k, 1, alpha);
        REQUIRE(e.has_value());
        CHECK(e->item == 4);
        Poly expected = v(2, B) * v(2, B) - bmono(GR(Rational(1, k)) * I.pow(k) * alpha, 0, k);
        CHECK(e->J_bihom == expected);
    }
    auto half = catalog(6, 3, GR(1));
    REQUIRE(half.has_value());
    Poly table = parse("-i/2*(p1*q2 - q1*p2)", N);
    CHECK(proportional(half->J_natural, table));
    CHECK(half->J_natural == table * GR(-2));
    CHECK_FALSE(catalog(6, 2).has_value());
    CHECK_FALSE(catalog(8, 3).has_value());
    CHECK_FALSE(catalog(5, 2).has_value());

    auto c72 = catalog(7, 2);
    REQUIRE(c72.has_value());
    CHECK(c72->alpha == I);
    CHECK(c72->beta == GR(1));
    auto c75 = catalog(7, 5);
    REQUIRE(c75.has_value());
    CHECK(c75->alpha == -I);
    CHECK(c75->beta == GR(1));
}

TEST_CASE("all catalog items are first integrals in both coordinate systems")
{
    for (GR alpha : {GR(1), GR(Rational(-5, 2), Rational(3))}) {
        for (int k = 1; k <= 12; ++k) {
            for (int l = 0; l <= k; ++l) {
                auto e = catalog(k, l, alpha);
                if (!e) continue;
                HamiltonianSystem bh(bmono(e->beta, l, k - l), KineticForm::Bihomogeneous);
                CHECK(is_first_integral(bh, e->J_bihom));
                auto nat = HamiltonianSystem::exceptional(k, l, e->alpha);
                CHECK(is_first_integral(nat, e->J_natural));
            }
        }
    }
}

TEST_CASE("table rows verify in natural variables")
{
    for (GR alpha : {GR(1), GR(3), GR(Rational(1, 2), Rational(-1))}) {
        for (int k = 1; k <= 12; ++k) {
            for (int l = 0; l <= k; ++l) {
                auto row = table_row(k, l, alpha);
                if (!row) continue;
                HamiltonianSystem sys(row->V_printed, KineticForm::Natural);
                CHECK(is_first_integral(sys, row->J_printed));
                auto e = catalog(k, l, alpha);
                REQUIRE(e.has_value());
                CHECK(proportional(row->J_printed, e->J_natural));
            }
        }
    }
    auto r72 = table_row(7, 2);
    REQUIRE(r72.has_value());
    CHECK(r72->l_effective == 2);
    CHECK(r72->alpha_effective == I);
    CHECK(r72->V_printed == exceptional_potential(7, 2, I));
    // Read with alpha = 1 the printed integral is not conserved.
    CHECK_FALSE(is_first_integral(HamiltonianSystem::exceptional(7, 2, GR(1)), r72->J_printed));
    auto r75 = table_row(7, 5);
    REQUIRE(r75.has_value());
    CHECK(r75->l_effective == 5);
    CHECK(r75->alpha_effective == -I);
}

TEST_CASE("permutation remark")
{
    auto c72 = catalog(7, 2);
    auto c75 = catalog(7, 5);
    REQUIRE(c72.has_value());
    REQUIRE(c75.has_value());
    CHECK(swap_pairs(c72->J_bihom) == c75->J_bihom);
    CHECK(swap_pairs(bmono(GR(1), 2, 5)) == bmono(GR(1), 5, 2));
}

TEST_CASE("hamiltonian_vector_field")
{
    auto h21 = HamiltonianSystem::exceptional(2, 1, GR(1));
    auto f = hamiltonian_vector_field(h21);
    CHECK(f[0] == v(2, N));
    CHECK(f[1] == v(3, N));
    CHECK(f[2] == v(0, N) * GR(-2));
    CHECK(f[3] == v(1, N) * GR(-2));

    GR alpha(Rational(1), Rational(2));
    Poly q1 = v(0, N), q2 = v(1, N);
    Poly r2 = q1 * q1 + q2 * q2;
    for (int l = 1; l <= 5; ++l) {
        auto fl = hamiltonian_vector_field(HamiltonianSystem::exceptional(2 * l, l, alpha));
        CHECK(fl[2] == q1 * r2.pow(l - 1) * (GR(-2 * l) * alpha));
        CHECK(fl[3] == q2 * r2.pow(l - 1) * (GR(-2 * l) * alpha));
    }

    Poly g = q2 + q1 * I;
    Poly h = q2 - q1 * I;
    for (int k = 2; k <= 9; ++k) {
        for (int l = 1; l < k; ++l) {
            auto sys = HamiltonianSystem::exceptional(k, l, alpha);
            auto x = hamiltonian_vector_field(sys);
            Poly common = g.pow(k - l - 1) * h.pow(l - 1) * alpha;
            CHECK(x[2] == common * (q2 * (I * GR(2 * l - k)) - q1 * GR(k)));
            CHECK(x[3] == common * (q1 * (I * GR(k - 2 * l)) - q2 * GR(k)));
            Poly dH(N);
            for (int s = 0; s < 4; ++s) dH += x[s] * sys.H().diff(s);
            CHECK(dH.is_zero());
        }
    }
}

TEST_CASE("functional_independence")
{
    auto sys = HamiltonianSystem::exceptional(5, 3, GR(1));
    CHECK_FALSE(functional_independence(sys, sys.H() * sys.H(), 10, 1));
    for (int k = 1; k <= 8; ++k) {
        auto s0 = HamiltonianSystem::exceptional(k, 0, GR(1), Coordinates::Bihomogeneous);
        CHECK(functional_independence(s0, v(2, B), 10, 2));
    }
    auto c72 = catalog(7, 2);
    HamiltonianSystem h72(bmono(GR(1), 2, 5), KineticForm::Bihomogeneous);
    CHECK(functional_independence(h72, c72->J_bihom, 10, 3));
}

TEST_CASE("apply_po2c")
{
    Poly V = to_bihomogeneous(exceptional_potential(7, 2, GR(1)));
    Po2cMatrix id({{{GR(1), GR(0)}, {GR(0), GR(1)}}});
    CHECK(apply_po2c(id, V) == V);
    Po2cMatrix swap({{{GR(0), GR(1)}, {GR(1), GR(0)}}});
    CHECK(swap.scale() == GR(1));
    CHECK(apply_po2c(swap, bmono(GR(1), 2, 5)) == bmono(GR(1), 5, 2));
    GR c(Rational(2), Rational(1));
    Po2cMatrix scaled({{{c, GR(0)}, {GR(0), c}}});
    CHECK(apply_po2c(scaled, V) == V * c.pow(7));
    // A rotation in PO(2, C) with A A^T = 25 I
    Po2cMatrix rot({{{GR(3), GR(4)}, {GR(-4), GR(3)}}});
    CHECK(rot.scale() == GR(25));
    using Rows = std::array<std::array<GR, 2>, 2>;
    CHECK_THROWS_AS(Po2cMatrix(Rows{{{GR(1), GR(1)}, {GR(0), GR(1)}}}), std::invalid_argument);
    CHECK_THROWS_AS(Po2cMatrix(Rows{{{GR(1), I}, {I, GR(-1)}}}), std::invalid_argument);
}

TEST_CASE("bracket antisymmetry and Jacobi identity")
{
    std::mt19937_64 rng(31);
    for (int n = 0; n < 25; ++n) {
        Poly F = testing::random_poly(rng, N, 4, 3, 9);
        Poly G = testing::random_poly(rng, N, 4, 3, 9);
        Poly K = testing::random_poly(rng, N, 4, 3, 9);
        CHECK(poisson_bracket(F, G) == -poisson_bracket(G, F));
        Poly jac = poisson_bracket(F, poisson_bracket(G, K)) + poisson_bracket(G, poisson_bracket(K, F)) +
                   poisson_bracket(K, poisson_bracket(F, G));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("the transform is canonical")
{
    std::mt19937_64 rng(41);
    for (int n = 0; n < 25; ++n) {
        Poly F = testing::random_poly(rng, N, 4, 3, 9);
        Poly G = testing::random_poly(rng, N, 4, 3, 9);
        CHECK(poisson_bracket(to_bihomogeneous(F), to_bihomogeneous(G)) == to_bihomogeneous(poisson_bracket(F, G)));
    }
}

TEST_CASE("system construction rejects bad potentials")
{
    CHECK_THROWS_AS(HamiltonianSystem(parse("q1 + q2^2", N), KineticForm::Natural), std::invalid_argument);
    CHECK_THROWS_AS(HamiltonianSystem(parse("q1*p1", N), KineticForm::Natural), std::invalid_argument);
    CHECK_THROWS_AS(HamiltonianSystem(parse("x1^2", B), KineticForm::Natural), VarSetMismatch);
}
