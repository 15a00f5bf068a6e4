#include "osc/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "osc/errors.hpp"

namespace osc {

namespace {

const std::set<std::string> kTopKeys = {"model", "n",       "m_sweep", "grid",   "epsilon",
                                        "quad_tol", "seed", "reps",    "oracle_points",
                                        "threads", "output", "test_hooks"};

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
T get(const nlohmann::json& j, const char* key, const T& fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count < 2) throw ConfigError("grid sizes must be >= 2");
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    g.back() = hi;
    return g;
}

}  // namespace

ScenarioConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, kTopKeys, "config");
    ScenarioConfig c;
    if (j.contains("model")) c.model = j.at("model");
    c.n = get(j, "n", c.n);
    c.m_sweep = get(j, "m_sweep", c.m_sweep);
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (!g.is_object()) throw ConfigError("'grid' must be an object");
        reject_unknown(g, {"nx", "ny", "spacing", "x", "y"}, "grid");
        c.grid.nx = get(g, "nx", c.grid.nx);
        c.grid.ny = get(g, "ny", c.grid.ny);
        c.grid.spacing = get(g, "spacing", c.grid.spacing);
        c.grid.x = get(g, "x", c.grid.x);
        c.grid.y = get(g, "y", c.grid.y);
    }
    c.epsilon = get(j, "epsilon", c.epsilon);
    c.quad_tol = get(j, "quad_tol", c.quad_tol);
    c.seed = get(j, "seed", c.seed);
    c.reps = get(j, "reps", c.reps);
    c.oracle_points = get(j, "oracle_points", c.oracle_points);
    c.threads = get(j, "threads", c.threads);
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (!o.is_object()) throw ConfigError("'output' must be an object");
        reject_unknown(o, {"dir", "format"}, "output");
        c.out_dir = get(o, "dir", c.out_dir);
        c.format = get(o, "format", c.format);
    }
    if (j.contains("test_hooks")) {
        const auto& h = j.at("test_hooks");
        if (!h.is_object()) throw ConfigError("'test_hooks' must be an object");
        reject_unknown(h, {"inject_weights"}, "test_hooks");
        if (h.contains("inject_weights"))
            c.inject_weights = get(h, "inject_weights", std::vector<double>{});
    }
    validate(c);
    return c;
}

nlohmann::json to_json(const ScenarioConfig& c) {
    nlohmann::json grid{{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"spacing", c.grid.spacing}};
    if (!c.grid.x.empty()) grid["x"] = c.grid.x;
    if (!c.grid.y.empty()) grid["y"] = c.grid.y;
    nlohmann::json j{{"model", c.model},
                     {"n", c.n},
                     {"m_sweep", c.m_sweep},
                     {"grid", grid},
                     {"epsilon", c.epsilon},
                     {"quad_tol", c.quad_tol},
                     {"seed", c.seed},
                     {"reps", c.reps},
                     {"oracle_points", c.oracle_points},
                     {"threads", c.threads},
                     {"output", {{"dir", c.out_dir}, {"format", c.format}}}};
    if (c.inject_weights) j["test_hooks"] = {{"inject_weights", *c.inject_weights}};
    return j;
}

void validate(const ScenarioConfig& c) {
    if (c.n < 1 || c.n > kMaxSampleSize)
        throw ConfigError("n must lie in [1, " + std::to_string(kMaxSampleSize) + "]");
    for (auto m : c.m_sweep)
        if (m < 0) throw ConfigError("m_sweep entries must be >= 0");
    if (c.grid.nx < 2 || c.grid.ny < 2) throw ConfigError("grid sizes must be >= 2");
    if (c.grid.spacing != "probability" && c.grid.spacing != "linear")
        throw ConfigError("grid.spacing must be 'probability' or 'linear'");
    for (const auto* g : {&c.grid.x, &c.grid.y})
        if (!g->empty() && (g->size() < 2 || std::adjacent_find(g->begin(), g->end(), std::greater_equal<>()) != g->end()))
            throw ConfigError("explicit grids need >= 2 strictly increasing abscissae");
    if (!(c.epsilon > 0.0 && c.epsilon <= 0.01)) throw ConfigError("epsilon must lie in (0, 0.01]");
    if (!(c.quad_tol > 0.0)) throw ConfigError("quad_tol must be positive");
    if (c.reps < 1) throw ConfigError("reps must be >= 1");
    if (c.oracle_points < 1) throw ConfigError("oracle_points must be >= 1");
    if (c.format != "csv" && c.format != "json" && c.format != "both")
        throw ConfigError("output.format must be csv, json or both");
    try {
        (void)make_model(c.model, c.epsilon);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid model parameters: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid model parameters: ") + e.what());
    }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse config file '" + path.string() + "': " + e.what());
    }
    return parse_config(j);
}

void save_config(const ScenarioConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file '" + path.string() + "'");
    out << to_json(config).dump(2) << '\n';
}

ScenarioGrids make_grids(const BivariateModel& model, const GridSpec& spec) {
    const auto& w = model.window();
    ScenarioGrids g;
    if (!spec.x.empty()) g.x = spec.x;
    else if (spec.spacing == "linear") g.x = linear_grid(w.x_lo, w.x_hi, spec.nx);
    else g.x = default_grid_x(model, spec.nx);
    if (!spec.y.empty()) g.y = spec.y;
    else if (spec.spacing == "linear") g.y = linear_grid(w.y_lo, w.y_hi, spec.ny);
    else g.y = default_grid_y(model, spec.ny);
    if (g.x.front() < w.x_lo || g.x.back() > w.x_hi) throw ConfigError("x grid leaves the support window");
    return g;
}

ScenarioGrids make_oracle_grids(const BivariateModel& model, std::size_t k) {
    ScenarioGrids g;
    for (std::size_t j = 1; j <= k; ++j) {
        const double p = static_cast<double>(j) / static_cast<double>(k + 1);
        g.x.push_back(model.marginal_x().quantile(p));
        g.y.push_back(model.marginal_y().quantile(p));
    }
    return g;
}

}  // namespace osc
