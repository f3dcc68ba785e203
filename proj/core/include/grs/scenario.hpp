#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grs/reach.hpp"

namespace grs {

/// One term of a multivariate polynomial: coef * prod_i x_i^powers[i].
struct PolyTerm {
    double coef = 0.0;
    std::vector<int> powers;

    bool operator==(const PolyTerm&) const = default;
};

/// A polynomial in the state variables: the sum of its terms.
using PolyEntry = std::vector<PolyTerm>;

/// Control-affine ground truth with polynomial entries: drift f (n entries)
/// and input matrix g (n x m entries).
struct PolyDynamics {
    std::vector<PolyEntry> f;
    std::vector<std::vector<PolyEntry>> g;

    Index n() const { return static_cast<Index>(f.size()); }
    Index m() const { return g.empty() ? 0 : static_cast<Index>(g.front().size()); }

    bool operator==(const PolyDynamics&) const = default;
};

double eval(const PolyEntry& entry, const Vec& x);
Vec eval_drift(const PolyDynamics& dyn, const Vec& x);
Mat eval_input_matrix(const PolyDynamics& dyn, const Vec& x);
TrueDynamics make_true_dynamics(const PolyDynamics& dyn, std::string name = "truth");

struct TargetSpec {
    Eigen::Vector2d point;
    std::pair<Index, Index> dims = {0, 1};
    double horizon = 0.25;
};

bool operator==(const TargetSpec& a, const TargetSpec& b);

/// A declarative experiment: what is known about the system, optional ground
/// truth for comparison runs, the start state, Monte Carlo settings, and
/// containment targets.
struct ScenarioConfig {
    std::string name;
    DynamicsSnapshot snapshot;
    std::optional<PolyDynamics> true_dynamics;
    Vec x0;
    ReachConfig reach;
    std::vector<TargetSpec> targets;
};

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

/// Ids accepted by load_scenario in place of a config file path.
std::vector<std::string> builtin_scenarios();
bool is_builtin_scenario(const std::string& id);
std::string describe_builtin(const std::string& id);

/// Loads a builtin scenario by id, or parses and validates a JSON config
/// file. Validation failures name the offending field; a ground truth whose
/// dynamics at 0 disagree with the snapshot beyond 1e-9 is rejected.
ScenarioConfig load_scenario(const std::string& source);

/// Parses a scenario from JSON text (same schema as the config file).
ScenarioConfig parse_scenario(const std::string& json_text);

std::string scenario_to_json(const ScenarioConfig& cfg);
void save_scenario(const ScenarioConfig& cfg, const std::string& path);

}  // namespace grs
