#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "expot/commands.hpp"
#include "expot/parser.hpp"

using namespace expot;
using namespace expot::cli;

namespace {

struct Common {
    std::string out;
    bool timings = false;
};

void add_system_flags(CLI::App* sub, SystemArgs& s, std::vector<int>& exc)
{
    sub->add_option("--exceptional", exc, "exceptional potential V_{k,l}")->expected(2);
    sub->add_option("--potential", s.potential, "homogeneous potential in q1, q2");
    sub->add_option("--alpha", s.alpha, "coefficient alpha of V_{k,l}");
}

void fill_exceptional(SystemArgs& s, const std::vector<int>& exc)
{
    if (exc.size() == 2) s.exceptional = std::array<int, 2>{exc[0], exc[1]};
}

int emit(const std::string& command, const std::vector<std::string>& args, std::optional<std::uint64_t> seed,
         const CommandResult& r, const Common& c)
{
    Json rep = make_report(command, args, seed, r, c.timings);
    std::string text = rep.dump(2) + "\n";
    std::string path = c.out;
    if (path.empty())
        if (const char* dir = std::getenv("EXPOT_OUT_DIR")) path = (std::filesystem::path(dir) / (command + ".json")).string();
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(path);
        if (!f) {
            std::cerr << "expot: cannot write " << path << "\n";
            return kUsage;
        }
        f << text;
    }
    std::cerr << r.summary << "\n";
    for (const Discrepancy& d : r.discrepancies) std::cerr << "  discrepancy " << d.id << "\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exceptional potentials: integrals, Darboux points, flows and variational equations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Common common;
    app.add_option("--out", common.out, "write the JSON report here");
    app.add_flag("--timings", common.timings, "include wall-clock timings in the report");

    // verify
    int vk = 0, vl = 0;
    std::string valpha = "1";
    std::uint64_t vseed = 1;
    auto* verify = app.add_subcommand("verify", "check the catalog integral for V_{k,l}");
    verify->add_option("--k", vk)->required();
    verify->add_option("--l", vl)->required();
    verify->add_option("--alpha", valpha);
    verify->add_option("--seed", vseed);

    // search
    SearchArgs sa;
    std::vector<int> s_exc;
    long s_weight = -1;
    auto* search = app.add_subcommand("search", "exact polynomial integral search");
    add_system_flags(search, sa.system, s_exc);
    search->add_option("--momentum-max", sa.momentum_max);
    search->add_option("--weight", s_weight, "single weight W instead of a scan");
    search->add_option("--weight-cap", sa.weight_cap, "largest W per m (default 2*k*m)");
    search->add_option("--coords", sa.coords)->check(CLI::IsMember({"natural", "bihomogeneous"}));
    search->add_option("--integral", sa.integrals, "known integral added to the trivial span");
    search->add_option("--seed", sa.seed);

    // darboux
    SystemArgs da;
    std::vector<int> d_exc;
    DarbouxTolerances dtol;
    auto* darboux = app.add_subcommand("darboux", "Darboux points of a potential");
    add_system_flags(darboux, da, d_exc);
    darboux->add_option("--gradient-tol", dtol.gradient);
    darboux->add_option("--isotropy-tol", dtol.isotropy);

    // simulate
    SimulateArgs ma;
    std::vector<int> m_exc;
    auto* simulate = app.add_subcommand("simulate", "integrate the flow and monitor integrals");
    add_system_flags(simulate, ma.system, m_exc);
    simulate->add_option("--dt", ma.dt);
    simulate->add_option("--t-end", ma.t_end);
    simulate->add_option("--radius", ma.radius);
    simulate->add_option("--seed", ma.seed);
    simulate->add_option("--keep-every", ma.keep_every);
    simulate->add_option("--precision", ma.precision)->check(CLI::IsMember({"double", "quad"}));
    simulate->add_option("--integral", ma.integrals);

    // galois
    GaloisArgs ga;
    auto* galois = app.add_subcommand("galois", "variational equation along a plane solution of V_{2l,l}");
    galois->add_option("--l", ga.l);
    galois->add_option("--alpha", ga.alpha);
    galois->add_option("--c", ga.c);
    galois->add_option("--branch", ga.branch);
    galois->add_option("--c1", ga.c1);
    galois->add_option("--dt", ga.dt);
    galois->add_option("--t-start", ga.t_start);
    galois->add_option("--t-end", ga.t_end);
    galois->add_option("--seed", ga.seed);

    // transform
    std::string direction = "to-bihomogeneous", expr;
    auto* transform = app.add_subcommand("transform", "map a polynomial between coordinate systems");
    transform->add_option("--direction", direction)->check(CLI::IsMember({"to-bihomogeneous", "to-natural"}));
    transform->add_option("--expr", expr)->required();

    for (auto* sub : {verify, search, darboux, simulate, galois, transform}) {
        sub->add_option("--out", common.out);
        sub->add_flag("--timings", common.timings);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (*verify) return emit("verify", args, vseed, cmd_verify(vk, vl, valpha, vseed), common);
        if (*search) {
            fill_exceptional(sa.system, s_exc);
            if (s_weight >= 0) sa.weight = s_weight;
            return emit("search", args, sa.seed, cmd_search(sa), common);
        }
        if (*darboux) {
            fill_exceptional(da, d_exc);
            return emit("darboux", args, std::nullopt, cmd_darboux(da, dtol), common);
        }
        if (*simulate) {
            fill_exceptional(ma.system, m_exc);
            return emit("simulate", args, ma.seed, cmd_simulate(ma), common);
        }
        if (*galois) return emit("galois", args, ga.seed, cmd_galois(ga), common);
        if (*transform) return emit("transform", args, std::nullopt, cmd_transform(direction, expr), common);
    } catch (const UsageError& e) {
        std::cerr << "expot: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "expot: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "expot: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
