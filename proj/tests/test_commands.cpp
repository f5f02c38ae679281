#include <doctest.h>

#include "expot/commands.hpp"

using namespace expot;
using namespace expot::cli;

TEST_CASE("parse_constant")
{
    CHECK(parse_constant("1/2 - 3*i") == GR(Rational(1, 2), Rational(-3)));
    CHECK(parse_constant("(1+i)^2") == GR(Rational(0), Rational(2)));
    CHECK_THROWS_AS(parse_constant("q1"), UsageError);
    CHECK_THROWS_AS(parse_constant("1+"), UsageError);
}

TEST_CASE("verify reports and exit codes")
{
    auto r = cmd_verify(7, 2, "1", 1);
    CHECK(r.exit_code == kOk);
    CHECK(r.payload["catalog"]["item"] == 6);
    CHECK(r.payload["catalog"]["beta"] == "1");
    CHECK(r.payload["catalog"]["requested_alpha"] == "1");
    CHECK(r.payload["adjudication"]["a_16"] == "0");
    CHECK(r.payload["adjudication"]["coefficient_of_a"] == "6");
    CHECK(r.payload["adjudication"]["constant"] == "-96");
    CHECK(r.discrepancies.size() == 2);

    auto none = cmd_verify(5, 2, "1", 1);
    CHECK(none.exit_code == kOk);
    CHECK(none.payload["catalog"].is_null());

    auto row = cmd_verify(4, 2, "3", 1);
    CHECK(row.payload["table"]["catalog_over_printed"] == "-2");
    CHECK(row.discrepancies.at(0).id == "table-scale");

    CHECK_THROWS_AS(cmd_verify(3, 4, "1", 1), UsageError);
    CHECK_THROWS_AS(cmd_verify(3, 1, "0", 1), UsageError);
}

TEST_CASE("search command")
{
    SearchArgs a;
    a.system.exceptional = std::array<int, 2>{3, 1};
    a.momentum_max = 2;
    auto r = cmd_search(a);
    CHECK(r.exit_code == kOk);
    CHECK(r.payload["catalog_recovered"] == true);
    CHECK(r.payload["novel_count"] == 1);

    SearchArgs n;
    n.system.potential = "q1^3 + q2^3";
    n.momentum_max = 2;
    auto rn = cmd_search(n);
    CHECK(rn.payload["system"]["coordinates"] == "natural");
    // separable cubic: p1^2/2 + q1^3 is a second quadratic integral
    CHECK(rn.payload["novel_count"] == 1);

    SearchArgs w = a;
    w.weight = 6;
    auto rw = cmd_search(w);
    CHECK(rw.payload["reports"].size() == 1);

    SearchArgs bad;
    CHECK_THROWS_AS(cmd_search(bad), UsageError);
    bad.system.potential = "q1^2 + q2^3";
    CHECK_THROWS_AS(cmd_search(bad), UsageError);
}

TEST_CASE("darboux command")
{
    SystemArgs s;
    s.exceptional = std::array<int, 2>{6, 2};
    auto r = cmd_darboux(s);
    CHECK(r.payload["exceptional_identity"]["holds"] == true);
    CHECK(r.payload["report"]["proper_count"] == 0);

    SystemArgs c;
    c.potential = "q1^3 + q2^3";
    auto rc = cmd_darboux(c);
    CHECK(rc.payload["report"]["proper_count"] == 3);
}

TEST_CASE("simulate command")
{
    SimulateArgs a;
    a.system.exceptional = std::array<int, 2>{7, 2};
    a.keep_every = 250;
    auto r = cmd_simulate(a);
    CHECK(r.exit_code == kOk);
    CHECK(r.payload["system"]["alpha_from_catalog"] == true);
    CHECK(r.payload["drift"]["H"].get<double>() < 1e-10);
    CHECK(r.payload["drift"]["J_catalog"].get<double>() < 1e-10);
    CHECK(r.payload["trajectory"].size() == 5);

    a.precision = "quad";
    a.integrals = {"p1*q2 - p2*q1"};
    auto q = cmd_simulate(a);
    CHECK(q.payload["drift"]["H"].get<double>() < 1e-10);
    CHECK(q.payload["drift"]["user_0"].get<double>() > 1e-6);

    SimulateArgs bad = a;
    bad.dt = -1;
    CHECK_THROWS_AS(cmd_simulate(bad), UsageError);
}

TEST_CASE("galois command")
{
    GaloisArgs a;
    auto r = cmd_galois(a);
    CHECK(r.exit_code == kOk);
    CHECK(r.payload["mu_hat"] == Json::array({"-16", "-8", "-16"}));
    CHECK(r.payload["exponents"]["indicator"] == "diagonal-compatible");
    CHECK(r.discrepancies.at(0).id == "nu-relation");

    a.c = "-i";
    CHECK_THROWS_AS(cmd_galois(a), UsageError);
    a.c = "1";
    a.t_start = 0.0;
    a.t_end = 1.0;
    a.c1 = "-i";  // singular time 1/2 on the segment
    CHECK_THROWS_AS(cmd_galois(a), UsageError);
}

TEST_CASE("transform command")
{
    auto r = cmd_transform("to-bihomogeneous", "p1^2/2 + p2^2/2 + (q2 - i*q1)^2*(q2 + i*q1)^5");
    CHECK(r.payload["output"] == "(-i)*x1^2*x2^5 + 2*y1*y2");
    CHECK(r.payload["round_trip"] == true);
    CHECK(r.payload["exceptional"]["k"] == 7);
    CHECK(r.payload["exceptional"]["l"] == 2);
    CHECK(r.payload["exceptional"]["alpha"] == "1");

    auto back = cmd_transform("to-natural", "2*y1*y2");
    CHECK(back.payload["output"] == "1/2*p1^2 + 1/2*p2^2");
    CHECK_THROWS_AS(cmd_transform("sideways", "q1"), UsageError);
    CHECK_THROWS_AS(cmd_transform("to-natural", "q1"), UsageError);
}

TEST_CASE("report envelope")
{
    auto r = cmd_transform("to-bihomogeneous", "q1");
    Json rep = make_report("transform", {"transform", "--expr", "q1"}, std::nullopt, r, false);
    CHECK(rep["schema"] == kSchema);
    CHECK(rep["status"] == "ok");
    CHECK(rep["seed"].is_null());
    CHECK_FALSE(rep.contains("timings"));
    CHECK(make_report("transform", {}, 3, r, true).contains("timings"));
}
