#include <doctest.h>

#include <cmath>

#include "expot/poly.hpp"
#include "generators.hpp"

using namespace expot;

namespace {
const GR I = GR::i();
const VarSet N = VarSet::natural();
const VarSet B = VarSet::bihomogeneous();
Poly v(int slot, VarSet vs = N) { return Poly::variable(slot, vs); }
Poly cst(const GR& c, VarSet vs = N) { return Poly::constant(c, vs); }

long binom(long n, long k)
{
    long r = 1;
    for (long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// Coefficient of q1^j q2^(k-j) in (q2 - i q1)^l (q2 + i q1)^(k-l), summed
// over the two binomial expansions.
GR binomial_oracle(int k, int l, int j)
{
    GR sum;
    for (int a = 0; a <= std::min(j, l); ++a) {
        int b = j - a;
        if (b > k - l) continue;
        sum += GR(binom(l, a)) * (-I).pow(a) * GR(binom(k - l, b)) * I.pow(b);
    }
    return sum;
}
}  // namespace

TEST_CASE("p_add")
{
    std::mt19937_64 rng(1);
    Poly f = testing::random_poly(rng, N);
    CHECK(p_add(f, Poly(N)) == f);
    CHECK(p_add(f, -f).is_zero());
    Poly a = v(0) * v(0) + v(1) * I;
    Poly b = v(0) * v(0) - v(1) * I;
    CHECK(p_add(a, b) == v(0) * v(0) * GR(2));
    CHECK_THROWS_AS(p_add(v(0, N), v(0, B)), VarSetMismatch);
}

TEST_CASE("p_mul")
{
    Poly minus = v(1) - v(0) * I;
    Poly plus = v(1) + v(0) * I;
    CHECK(p_mul(minus, plus) == v(0) * v(0) + v(1) * v(1));

    std::mt19937_64 rng(2);
    Poly f = testing::random_poly(rng, N);
    CHECK(p_mul(cst(GR(1)), f) == f);

    Poly v72 = minus.pow(2) * plus.pow(5);
    CHECK(v72.total_degree() == 7);
    CHECK(v72.size() == 8);
    CHECK(v72.position_homogeneous_degree() == 7);
    for (int j = 0; j <= 7; ++j) {
        Monomial m{{static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(7 - j), 0, 0}};
        CHECK(v72.coefficient(m) == binomial_oracle(7, 2, j));
    }
}

TEST_CASE("p_diff")
{
    CHECK(p_diff(v(0) * v(0) * v(1), "q1") == v(0) * v(1) * GR(2));
    CHECK(p_diff(v(0).pow(5), "p1").is_zero());
    CHECK_THROWS_AS(p_diff(v(0), "z"), UnknownVariable);

    // Product-rule factored form of the gradient of the exceptional family.
    Poly minus = v(1) - v(0) * I;
    Poly plus = v(1) + v(0) * I;
    for (int k = 2; k <= 8; ++k) {
        for (int l = 1; l < k; ++l) {
            Poly V = minus.pow(l) * plus.pow(k - l);
            Poly factored = minus.pow(l - 1) * plus.pow(k - l - 1) *
                            (minus * GR(k - l) - plus * GR(l)) * I;
            CHECK(p_diff(V, "q1") == factored);
        }
    }
}

TEST_CASE("p_subst_linear")
{
    std::mt19937_64 rng(3);
    Poly f = testing::random_poly(rng, N);
    CHECK(p_subst_linear(f, identity4(), N) == f);
    CHECK(p_subst_linear(f, identity4(), B) == f.renamed(B));

    // q = T^{-1} x written out by hand: q1 = (x1+x2)/2, q2 = -i(x1-x2)/2,
    // p1 = y1 + y2, p2 = i(y1 - y2).
    Matrix4 tinv;
    GR half(Rational(1, 2));
    GR ihalf(Rational(0), Rational(1, 2));
    tinv[0] = {half, half, GR(0), GR(0)};
    tinv[1] = {-ihalf, ihalf, GR(0), GR(0)};
    tinv[2] = {GR(0), GR(0), GR(1), GR(1)};
    tinv[3] = {GR(0), GR(0), I, -I};
    Poly kinetic = (v(2) * v(2) + v(3) * v(3)) * half;
    CHECK(p_subst_linear(kinetic, tinv, B) == v(2, B) * v(3, B) * GR(2));

    Matrix4 singular = identity4();
    singular[3] = singular[2];
    CHECK_THROWS_AS(p_subst_linear(f, singular, B), SingularMatrix);
}

TEST_CASE("p_eval")
{
    Point4 z{2.0, 0.0, 0.0, 0.0};
    CHECK(std::abs(p_eval(v(0) * v(0), z) - 4.0) < 1e-15);
    CHECK(p_eval(Poly(N), Point4{1.0, 2.0, 3.0, 4.0}) == std::complex<double>(0.0, 0.0));
    Point4 iso{1.0, std::complex<double>(0, 1), 0.0, 0.0};
    CHECK(std::abs(p_eval(v(0) * v(0) + v(1) * v(1), iso)) < 1e-15);
}

TEST_CASE("p_weight")
{
    Poly v72 = v(0, B).pow(2) * v(1, B).pow(5) * (-I);
    CHECK(p_weight(v72, phase_weights(7)).value() == 14);
    for (int k = 2; k <= 9; ++k) {
        for (int l = 0; l <= k; ++l) {
            Poly H = v(2, B) * v(3, B) * GR(2) + v(0, B).pow(l) * v(1, B).pow(k - l);
            CHECK(p_weight(H, phase_weights(k)).value() == 2 * k);
        }
    }
    CHECK(p_weight(v(0) + v(1) * v(1), phase_weights(7)).kind == WeightInfo::Kind::Mixed);
    CHECK_FALSE(p_weight(v(0) + v(1) * v(1), phase_weights(7)).value().has_value());
    CHECK(p_weight(Poly(N), phase_weights(7)).kind == WeightInfo::Kind::Zero);
}

TEST_CASE("ring axioms on random triples")
{
    std::mt19937_64 rng(4);
    for (int n = 0; n < 60; ++n) {
        Poly a = testing::random_poly(rng, N, 4), b = testing::random_poly(rng, N, 4), c = testing::random_poly(rng, N, 4);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Poly(N));
    }
}

TEST_CASE("Leibniz rule")
{
    std::mt19937_64 rng(5);
    for (int n = 0; n < 60; ++n) {
        Poly f = testing::random_poly(rng, N, 5), g = testing::random_poly(rng, N, 5);
        for (int s = 0; s < 4; ++s) CHECK((f * g).diff(s) == f * g.diff(s) + f.diff(s) * g);
    }
}

TEST_CASE("Euler identity for homogeneous potentials")
{
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> deg(1, 9);
    for (int n = 0; n < 40; ++n) {
        int k = deg(rng);
        Poly V(N);
        for (int j = 0; j <= k; ++j)
            V.add_term(Monomial{{static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k - j), 0, 0}},
                       testing::random_gr(rng));
        CHECK(v(0) * V.diff(0) + v(1) * V.diff(1) == V * GR(k));
    }
}

TEST_CASE("evaluation is a ring homomorphism")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int n = 0; n < 100; ++n) {
        Poly f = testing::random_poly(rng, N, 5, 3, 1000);
        Poly g = testing::random_poly(rng, N, 5, 3, 1000);
        Point4 z;
        for (auto& c : z) c = std::complex<double>(uni(rng), uni(rng));
        auto lhs = p_eval(f * g, z);
        auto rhs = p_eval(f, z) * p_eval(g, z);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("substitution round trip")
{
    std::mt19937_64 rng(9);
    for (int n = 0; n < 30; ++n) {
        Matrix4 m;
        do {
            for (auto& row : m)
                for (auto& e : row) e = testing::random_gr(rng, 4);
        } while (determinant(m).is_zero());
        Poly f = testing::random_poly(rng, N, 4, 2);
        Poly there = p_subst_linear(f, m, B);
        CHECK(p_subst_linear(there, inverse(m), N) == f);
    }
}

TEST_CASE("graded-lex term order")
{
    Poly f = v(1) + v(0) * v(0) + v(0) * v(1) + cst(GR(3));
    std::vector<Monomial> order;
    for (const auto& [m, c] : f.terms()) order.push_back(m);
    REQUIRE(order.size() == 4);
    CHECK(order[0] == Monomial{{2, 0, 0, 0}});
    CHECK(order[1] == Monomial{{1, 1, 0, 0}});
    CHECK(order[2] == Monomial{{0, 1, 0, 0}});
    CHECK(order[3] == Monomial{{0, 0, 0, 0}});
}
