#include "grs/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace grs {

using nlohmann::json;

double eval(const PolyEntry& entry, const Vec& x) {
    double sum = 0.0;
    for (const PolyTerm& term : entry) {
        double value = term.coef;
        for (std::size_t i = 0; i < term.powers.size(); ++i) {
            for (int p = 0; p < term.powers[i]; ++p) value *= x(static_cast<Index>(i));
        }
        sum += value;
    }
    return sum;
}

Vec eval_drift(const PolyDynamics& dyn, const Vec& x) {
    Vec out(dyn.n());
    for (Index i = 0; i < dyn.n(); ++i) out(i) = eval(dyn.f[i], x);
    return out;
}

Mat eval_input_matrix(const PolyDynamics& dyn, const Vec& x) {
    Mat out(dyn.n(), dyn.m());
    for (Index i = 0; i < dyn.n(); ++i) {
        for (Index j = 0; j < dyn.m(); ++j) out(i, j) = eval(dyn.g[i][j], x);
    }
    return out;
}

TrueDynamics make_true_dynamics(const PolyDynamics& dyn, std::string name) {
    TrueDynamics out;
    out.n = dyn.n();
    out.m = dyn.m();
    out.name = std::move(name);
    out.velocity = [dyn](const Vec& x, const Vec& u) {
        return Vec(eval_drift(dyn, x) + eval_input_matrix(dyn, x) * u);
    };
    return out;
}

bool operator==(const TargetSpec& a, const TargetSpec& b) {
    return a.point == b.point && a.dims == b.dims && a.horizon == b.horizon;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
    const auto snapshot_equal = [](const DynamicsSnapshot& l, const DynamicsSnapshot& r) {
        return l.f0 == r.f0 && l.g0 == r.g0 && l.lf == r.lf && l.lg == r.lg;
    };
    const auto reach_equal = [](const ReachConfig& l, const ReachConfig& r) {
        return l.horizon == r.horizon && l.n_trajectories == r.n_trajectories && l.dt == r.dt &&
               l.input_hold == r.input_hold && l.seed == r.seed &&
               l.collect_intermediate == r.collect_intermediate &&
               l.integrator == r.integrator && l.abs_tol == r.abs_tol && l.rel_tol == r.rel_tol;
    };
    return a.name == b.name && snapshot_equal(a.snapshot, b.snapshot) &&
           a.true_dynamics == b.true_dynamics && a.x0 == b.x0 && reach_equal(a.reach, b.reach) &&
           a.targets == b.targets;
}

namespace {

PolyEntry constant_entry(double value) {
    if (value == 0.0) return {};
    return {PolyTerm{value, {}}};
}

ScenarioConfig builtin_academic3d() {
    // Three-state system; the input matrix tilts with the state while the
    // drift stays zero.
    ScenarioConfig cfg;
    cfg.name = "academic3d";

    PolyDynamics truth;
    truth.f = {{}, {}, {}};
    truth.g = {
        {constant_entry(10.0), {PolyTerm{3.0, {}}, PolyTerm{-1.0, {0, 1, 0}}}, {}},
        {{PolyTerm{2.0, {}}, PolyTerm{-1.0, {1, 0, 0}}}, constant_entry(7.0), {}},
        {{}, {}, {PolyTerm{2.5, {}}, PolyTerm{1.0, {0, 0, 1}}}},
    };
    cfg.true_dynamics = truth;

    cfg.snapshot.f0 = eval_drift(truth, Vec::Zero(3));
    cfg.snapshot.g0 = eval_input_matrix(truth, Vec::Zero(3));
    cfg.snapshot.lf = 1.0;
    cfg.snapshot.lg = 1.0;

    cfg.x0 = Vec::Zero(3);
    cfg.reach.horizon = 0.2;
    cfg.reach.n_trajectories = 2000;
    cfg.reach.dt = 1e-3;
    cfg.reach.input_hold = 0.01;
    cfg.reach.seed = 1;
    return cfg;
}

ScenarioConfig builtin_quadrocopter() {
    // Roll/pitch rate model of a quadrocopter after the yaw rate has been
    // pinned at pi/2 by direct control, in coordinates shifted so that the
    // post-collision rates (15, 10) rad/s sit at the origin. Inertia about
    // the roll and pitch axes is 0.009 kg m^2 and about the yaw axis
    // 0.014 kg m^2.
    ScenarioConfig cfg;
    cfg.name = "quadrocopter";

    const double jx = 0.009;
    const double jy = 0.009;
    const double jz = 0.014;
    const double yaw_rate = std::numbers::pi / 2.0;
    const double roll_gain = yaw_rate * (jy - jz) / jx;   // multiplies (pitch rate + 10)
    const double pitch_gain = yaw_rate * (jz - jx) / jy;  // multiplies (roll rate + 15)

    PolyDynamics truth;
    truth.f = {
        {PolyTerm{roll_gain, {0, 1}}, PolyTerm{10.0 * roll_gain, {}}},
        {PolyTerm{pitch_gain, {1, 0}}, PolyTerm{15.0 * pitch_gain, {}}},
    };
    truth.g = {
        {constant_entry(1.0 / jx), {}},
        {{}, constant_entry(1.0 / jy)},
    };
    cfg.true_dynamics = truth;

    cfg.snapshot.f0 = eval_drift(truth, Vec::Zero(2));
    cfg.snapshot.g0 = eval_input_matrix(truth, Vec::Zero(2));
    cfg.snapshot.lf = 1.0;
    cfg.snapshot.lg = 1.0;

    cfg.x0 = Vec::Zero(2);
    cfg.reach.horizon = 0.25;
    cfg.reach.n_trajectories = 2000;
    cfg.reach.dt = 1e-3;
    cfg.reach.input_hold = 0.0125;
    cfg.reach.seed = 1;

    // Reaching (-15, -10) restores zero roll and pitch rates.
    cfg.targets.push_back(TargetSpec{Eigen::Vector2d(-15.0, -10.0), {0, 1}, 0.25});
    cfg.targets.push_back(TargetSpec{Eigen::Vector2d(-15.0, -10.0), {0, 1}, 0.05});
    return cfg;
}

void check_scenario(const ScenarioConfig& cfg) {
    validate(cfg.snapshot);
    validate(cfg.reach);
    if (cfg.x0.size() != cfg.snapshot.n()) {
        throw std::invalid_argument("scenario '" + cfg.name + "': x0 has wrong dimension");
    }
    if (cfg.true_dynamics) {
        const PolyDynamics& truth = *cfg.true_dynamics;
        if (truth.n() != cfg.snapshot.n() || truth.m() != cfg.snapshot.m()) {
            throw std::invalid_argument("scenario '" + cfg.name +
                                        "': true_dynamics shape does not match snapshot");
        }
        for (const auto& row : truth.g) {
            if (static_cast<Index>(row.size()) != truth.m()) {
                throw std::invalid_argument("scenario '" + cfg.name +
                                            "': ragged true_dynamics.g");
            }
        }
        const Vec f0 = eval_drift(truth, Vec::Zero(truth.n()));
        const Mat g0 = eval_input_matrix(truth, Vec::Zero(truth.n()));
        const double drift_err = (f0 - cfg.snapshot.f0).cwiseAbs().maxCoeff();
        const double input_err = (g0 - cfg.snapshot.g0).cwiseAbs().maxCoeff();
        if (drift_err > 1e-9 || input_err > 1e-9) {
            throw std::invalid_argument(
                "scenario '" + cfg.name +
                "': true_dynamics at 0 disagrees with snapshot (f0 error " +
                std::to_string(drift_err) + ", g0 error " + std::to_string(input_err) + ")");
        }
    }
    for (const TargetSpec& target : cfg.targets) {
        if (target.dims.first < 0 || target.dims.second < 0 ||
            target.dims.first >= cfg.snapshot.n() || target.dims.second >= cfg.snapshot.n()) {
            throw std::invalid_argument("scenario '" + cfg.name +
                                        "': target dims out of range");
        }
        if (!(target.horizon > 0.0)) {
            throw std::invalid_argument("scenario '" + cfg.name +
                                        "': target horizon must be positive");
        }
    }
}

json vec_to_json(const Vec& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Vec vec_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw std::invalid_argument("scenario config: " + field + " must be an array");
    Vec v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
    return v;
}

json mat_to_json(const Mat& m) {
    json out = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

Mat mat_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw std::invalid_argument("scenario config: " + field + " must be an array of rows");
    }
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j[0].size());
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        if (static_cast<Index>(j[i].size()) != cols) {
            throw std::invalid_argument("scenario config: " + field + " has ragged rows");
        }
        for (Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

json poly_entry_to_json(const PolyEntry& entry) {
    json out = json::array();
    for (const PolyTerm& term : entry) {
        out.push_back(json{{"coef", term.coef}, {"powers", term.powers}});
    }
    return out;
}

PolyEntry poly_entry_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw std::invalid_argument("scenario config: " + field + " must be an array of terms");
    PolyEntry entry;
    for (const json& t : j) {
        PolyTerm term;
        term.coef = t.at("coef").get<double>();
        term.powers = t.value("powers", std::vector<int>{});
        entry.push_back(std::move(term));
    }
    return entry;
}

json poly_dynamics_to_json(const PolyDynamics& dyn) {
    json f = json::array();
    for (const PolyEntry& entry : dyn.f) f.push_back(poly_entry_to_json(entry));
    json g = json::array();
    for (const auto& row : dyn.g) {
        json jrow = json::array();
        for (const PolyEntry& entry : row) jrow.push_back(poly_entry_to_json(entry));
        g.push_back(jrow);
    }
    return json{{"f", f}, {"g", g}};
}

PolyDynamics poly_dynamics_from_json(const json& j) {
    PolyDynamics dyn;
    for (const json& entry : j.at("f")) {
        dyn.f.push_back(poly_entry_from_json(entry, "true_dynamics.f"));
    }
    for (const json& row : j.at("g")) {
        std::vector<PolyEntry> entries;
        for (const json& entry : row) {
            entries.push_back(poly_entry_from_json(entry, "true_dynamics.g"));
        }
        dyn.g.push_back(std::move(entries));
    }
    return dyn;
}

const char* integrator_name(IntegratorKind kind) {
    return kind == IntegratorKind::Rk4Fixed ? "rk4" : "rkf45";
}

IntegratorKind integrator_from_name(const std::string& name) {
    if (name == "rk4") return IntegratorKind::Rk4Fixed;
    if (name == "rkf45") return IntegratorKind::Rkf45Adaptive;
    throw std::invalid_argument("scenario config: unknown integrator '" + name +
                                "' (expected rk4 or rkf45)");
}

}  // namespace

std::vector<std::string> builtin_scenarios() { return {"academic3d", "quadrocopter"}; }

bool is_builtin_scenario(const std::string& id) {
    return id == "academic3d" || id == "quadrocopter";
}

std::string describe_builtin(const std::string& id) {
    if (id == "academic3d") {
        return "three-state system with a state-dependent input matrix and zero drift";
    }
    if (id == "quadrocopter") {
        return "decoupled quadrocopter roll/pitch rates after a collision, shifted to the origin";
    }
    throw std::invalid_argument("unknown builtin scenario '" + id + "'");
}

ScenarioConfig load_scenario(const std::string& source) {
    if (source == "academic3d") {
        ScenarioConfig cfg = builtin_academic3d();
        check_scenario(cfg);
        return cfg;
    }
    if (source == "quadrocopter") {
        ScenarioConfig cfg = builtin_quadrocopter();
        check_scenario(cfg);
        return cfg;
    }
    std::ifstream in(source);
    if (!in) {
        throw std::invalid_argument("cannot open scenario config '" + source +
                                    "' (not a builtin id or readable file)");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

ScenarioConfig parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("scenario config: ") + err.what());
    }

    ScenarioConfig cfg;
    try {
        cfg.name = j.value("name", "scenario");

        const json& snap = j.at("snapshot");
        cfg.snapshot.f0 = vec_from_json(snap.at("f0"), "snapshot.f0");
        cfg.snapshot.g0 = mat_from_json(snap.at("g0"), "snapshot.g0");
        cfg.snapshot.lf = snap.at("lf").get<double>();
        cfg.snapshot.lg = snap.at("lg").get<double>();

        if (j.contains("true_dynamics") && !j["true_dynamics"].is_null()) {
            const json& truth = j["true_dynamics"];
            if (truth.contains("builtin")) {
                const ScenarioConfig base = load_scenario(truth["builtin"].get<std::string>());
                cfg.true_dynamics = base.true_dynamics;
            } else {
                cfg.true_dynamics = poly_dynamics_from_json(truth);
            }
        }

        cfg.x0 = j.contains("x0") ? vec_from_json(j["x0"], "x0")
                                  : Vec(Vec::Zero(cfg.snapshot.n()));

        if (j.contains("reach")) {
            const json& r = j["reach"];
            cfg.reach.horizon = r.value("horizon", cfg.reach.horizon);
            cfg.reach.n_trajectories = r.value("n_trajectories", cfg.reach.n_trajectories);
            cfg.reach.dt = r.value("dt", cfg.reach.dt);
            cfg.reach.input_hold = r.contains("input_hold")
                                       ? r["input_hold"].get<double>()
                                       : cfg.reach.horizon / 20.0;
            cfg.reach.seed = r.value("seed", cfg.reach.seed);
            cfg.reach.collect_intermediate =
                r.value("collect_intermediate", cfg.reach.collect_intermediate);
            cfg.reach.integrator =
                integrator_from_name(r.value("integrator", std::string("rk4")));
            cfg.reach.abs_tol = r.value("abs_tol", cfg.reach.abs_tol);
            cfg.reach.rel_tol = r.value("rel_tol", cfg.reach.rel_tol);
        } else {
            cfg.reach.input_hold = cfg.reach.horizon / 20.0;
        }

        if (j.contains("targets")) {
            for (const json& t : j["targets"]) {
                TargetSpec target;
                const Vec point = vec_from_json(t.at("point"), "targets[].point");
                if (point.size() != 2) {
                    throw std::invalid_argument(
                        "scenario config: targets[].point must have two entries");
                }
                target.point = Eigen::Vector2d(point(0), point(1));
                if (t.contains("dims")) {
                    const auto dims = t["dims"].get<std::vector<Index>>();
                    if (dims.size() != 2) {
                        throw std::invalid_argument(
                            "scenario config: targets[].dims must have two entries");
                    }
                    target.dims = {dims[0], dims[1]};
                }
                target.horizon = t.value("horizon", cfg.reach.horizon);
                cfg.targets.push_back(target);
            }
        }
    } catch (const json::exception& err) {
        throw std::invalid_argument(std::string("scenario config: ") + err.what());
    }

    check_scenario(cfg);
    return cfg;
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["snapshot"] = json{{"f0", vec_to_json(cfg.snapshot.f0)},
                         {"g0", mat_to_json(cfg.snapshot.g0)},
                         {"lf", cfg.snapshot.lf},
                         {"lg", cfg.snapshot.lg}};
    if (cfg.true_dynamics) {
        j["true_dynamics"] = poly_dynamics_to_json(*cfg.true_dynamics);
    }
    j["x0"] = vec_to_json(cfg.x0);
    j["reach"] = json{{"horizon", cfg.reach.horizon},
                      {"n_trajectories", cfg.reach.n_trajectories},
                      {"dt", cfg.reach.dt},
                      {"input_hold", cfg.reach.input_hold},
                      {"seed", cfg.reach.seed},
                      {"collect_intermediate", cfg.reach.collect_intermediate},
                      {"integrator", integrator_name(cfg.reach.integrator)},
                      {"abs_tol", cfg.reach.abs_tol},
                      {"rel_tol", cfg.reach.rel_tol}};
    json targets = json::array();
    for (const TargetSpec& target : cfg.targets) {
        targets.push_back(json{{"point", {target.point.x(), target.point.y()}},
                               {"dims", {target.dims.first, target.dims.second}},
                               {"horizon", target.horizon}});
    }
    j["targets"] = targets;
    return j.dump(2);
}

void save_scenario(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario config '" + path + "'");
    out << scenario_to_json(cfg) << "\n";
}

}  // namespace grs
