#pragma once

// Command runners behind the CLI. Each returns a JSON payload, the list of
// recorded discrepancies and an exit code; make_report wraps them into the
// versioned report.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "expot/darboux.hpp"
#include "expot/dynamics.hpp"
#include "expot/search.hpp"

namespace expot::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;
inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kUsage = 1, kVerificationFailed = 2, kBlowUp = 3 };

/// Bad flags or unparseable input; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Discrepancy {
    std::string id;
    std::string description;
};

struct CommandResult {
    Json payload = Json::object();
    Json tolerances = Json::object();
    std::vector<Discrepancy> discrepancies;
    int exit_code = kOk;
    std::string summary;
    double elapsed_ms = 0.0;
};

/// Either an exceptional (k, l) or a potential expression in q1, q2.
struct SystemArgs {
    std::optional<std::array<int, 2>> exceptional;
    std::optional<std::string> potential;
    std::string alpha = "1";
};

/// Exact constant from an expression such as "1/2 - 3*i".
GR parse_constant(const std::string& expr);

CommandResult cmd_verify(int k, int l, const std::string& alpha, std::uint64_t seed);

struct SearchArgs {
    SystemArgs system;
    int momentum_max = 2;
    std::optional<long> weight;
    long weight_cap = 0;
    /// "bihomogeneous" or "natural"; empty picks bihomogeneous for
    /// exceptional systems and natural for potentials.
    std::string coords;
    std::vector<std::string> integrals;
    std::uint64_t seed = 1;
};
CommandResult cmd_search(const SearchArgs& a);

CommandResult cmd_darboux(const SystemArgs& a, const DarbouxTolerances& tol = {});

struct SimulateArgs {
    SystemArgs system;
    double dt = 1e-3;
    double t_end = 1.0;
    double radius = 0.5;
    std::uint64_t seed = 1;
    std::size_t keep_every = 100;
    std::string precision = "double";
    std::vector<std::string> integrals;
};
CommandResult cmd_simulate(const SimulateArgs& a);

struct GaloisArgs {
    int l = 2;
    std::string alpha = "1";
    std::string c = "1";
    int branch = 1;
    std::string c1 = "1";
    double dt = 1e-4;
    double t_start = 1.0;
    double t_end = 2.0;
    std::uint64_t seed = 7;
};
CommandResult cmd_galois(const GaloisArgs& a);

/// direction: "to-bihomogeneous" or "to-natural".
CommandResult cmd_transform(const std::string& direction, const std::string& expr);

Json make_report(const std::string& command, const std::vector<std::string>& args, std::optional<std::uint64_t> seed,
                 const CommandResult& r, bool include_timings);

Json to_json(const Complex& z);
Json to_json(const SearchReport& r);
Json to_json(const DarbouxReport& r);
Json to_json(const ExponentReport& r);

}  // namespace expot::cli
