#pragma once
#include "harness.hpp"

namespace bilap {

enum class Command { solve, continuation, faber_krahn, oracle, convergence, plot };

const char* command_name(Command c);
Command command_from_name(const std::string& s);

struct DomainConfig {
    ShapeSpec spec;
    std::string label;  // empty = generated from kind and position

    bool operator==(const DomainConfig&) const = default;
};

// Flat key = value text, '#' comments, one [domain] section per shape. Keys
// are whitelisted per command; see README for the catalog.
struct RunConfig {
    Command command = Command::solve;
    BcKind bc = BcKind::hinged;
    double p = 0.0;                  // solve, convergence
    std::vector<double> p_schedule;  // continuation, faber-krahn
    double tol = 1e-7;
    double eps_f = 1e-8;             // structure-report active-set threshold, relative
    unsigned long long seed = 0;
    std::string out = "out";
    std::vector<DomainConfig> domains;
    std::vector<double> resolutions;  // convergence
    std::string oracle;               // torsion | hinged_lambda | clamped_lambda | clamped_profile
    int n = 2;                        // oracle dimension
    double R = 1.0;                   // oracle ball radius
    int samples = 512;                // oracle radial sample count
    std::string plot_kind;            // heatmap | radial | trace
    std::string input;                // plot data file

    bool operator==(const RunConfig&) const = default;
};

// Errors carry the offending line number where one exists.
RunConfig parse_config(const std::string& text);

// Canonical form; parse_config(serialize_config(cfg)) == cfg for any valid cfg.
std::string serialize_config(const RunConfig& cfg);

std::vector<double> default_p_schedule();  // doubling, 2 .. 128

}  // namespace bilap
