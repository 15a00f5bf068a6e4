// Acceptance criteria: one [PASS]/[FAIL] line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "osc/commands.hpp"
#include "osc/envelope.hpp"
#include "osc/errors.hpp"
#include "osc/montecarlo.hpp"
#include "osc/scenario.hpp"

using namespace osc;
namespace fs = std::filesystem;

namespace {

// Pinned from a single measurement on the 101 x 101 FGM grid.
constexpr double kPinnedGapRatio = 1295.0 / 15.0;  // a_5(256) / a_5(0)
constexpr double kPinnedUniformFailGap = 1.0 / 3.0;
constexpr double kPinTol = 1e-6;

constexpr std::size_t kGridPoints = 101;
constexpr std::uint64_t kSeed = 20240607;

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %s  %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Case {
    std::string name;
    nlohmann::json json;
    std::unique_ptr<BivariateModel> model;
    std::vector<double> gx, gy, truth;
    std::map<int, ConcomitantCdfTable> tables;
    double build_seconds = 0.0;
};

std::vector<Case> make_cases() {
    std::vector<Case> cases;
    auto add = [&](std::string name, nlohmann::json j) {
        Case c;
        c.name = std::move(name);
        c.json = j;
        c.model = make_model(j, kDefaultWindowEpsilon);
        c.gx = default_grid_x(*c.model, kGridPoints);
        c.gy = default_grid_y(*c.model, kGridPoints);
        c.truth = joint_cdf_grid(*c.model, c.gx, c.gy);
        const auto t0 = std::chrono::steady_clock::now();
        for (int n : {2, 3, 5, 8}) c.tables.emplace(n, build_table(*c.model, n, c.gx, c.gy));
        c.build_seconds = seconds_since(t0);
        cases.push_back(std::move(c));
    };
    add("fgm", {{"id", "fgm"}, {"theta", 0.75}});
    add("gaussian", {{"id", "gaussian"}, {"rho", 0.5}});
    add("independent", {{"id", "independent"}, {"marginal_x", "exponential"}, {"rate_x", 2.0},
                        {"marginal_y", "normal"}});
    return cases;
}

double max_excess(std::span<const double> a, std::span<const double> b) {
    double w = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, a[i] - b[i]);
    return w;
}

void ac1(const std::vector<Case>& cases) {
    double worst = 0.0, slowest = 0.0;
    for (const auto& c : cases) {
        for (const auto& [n, t] : c.tables) worst = std::max(worst, check_table(t, c.truth).max_mixture_error);
        slowest = std::max(slowest, c.build_seconds);
    }
    report("AC1 mixture identity", worst <= 1e-8 && slowest <= 60.0,
           fmt("max|avg-F|=%.3g (tol 1e-8), slowest model %.2fs (limit 60s)", worst, slowest));
}

void ac2(const std::vector<Case>& cases) {
    double worst = 0.0;
    std::size_t soft = 0, hard = 0;
    for (const auto& c : cases)
        for (const auto& [n, t] : c.tables)
            for (int r = 1; r < n; ++r)
                for (std::size_t ix = 0; ix < t.nx(); ++ix)
                    for (std::size_t iy = 0; iy < t.ny(); ++iy) {
                        const double v = t.at(r + 1, ix, iy) - t.at(r, ix, iy);
                        worst = std::max(worst, v);
                        soft += v > 1e-9;
                        hard += v > 1e-6;
                    }
    report("AC2 rank ordering", soft == 0 && hard == 0,
           fmt("max(F_{r+1}-F_r)=%.3g, >1e-9: %.0f, >1e-6: %.0f", worst, double(soft), double(hard)));
}

void ac3(const std::vector<Case>& cases) {
    double worst = 0.0;
    for (const auto& c : cases)
        for (const auto& [n, t] : c.tables)
            for (std::int64_t m : {0, 1, 4, 16, 64}) {
                const auto p = weight_sequence(n, m);
                worst = std::max({worst, max_excess(lower_envelope(t, p), c.truth),
                                  max_excess(c.truth, upper_envelope(t, p))});
            }
    bool rejected = false;
    try {
        WeightVector bad({0.2, 0.5, 0.3});
    } catch (const ContractError&) {
        rejected = true;
    }
    report("AC3 sandwich", worst <= 1e-8 && rejected,
           fmt("max violation=%.3g (slack 1e-8), non-ordered vector rejected=%.0f", worst, rejected));
}

void ac4(const std::vector<Case>& cases) {
    double worst = 0.0;
    bool all = true;
    for (const auto& c : cases)
        for (const auto& [n, t] : c.tables)
            for (std::int64_t m : {0, 1, 4, 16}) {
                const auto rep = nesting_check(t, c.truth, weight_sequence(n, m + 1), weight_sequence(n, m));
                worst = std::max(worst, rep.max_violation());
                all = all && rep.passed;
            }
    report("AC4 nesting", all && worst <= 1e-8, fmt("max violation=%.3g (slack 1e-8)", worst));
}

void ac5_ac6(const Case& fgm) {
    const auto& t = fgm.tables.at(5);
    const double c_n = c_n_constant(t).value;
    const std::vector<std::int64_t> sweep{1, 2, 4, 8, 16, 32, 64, 128, 256};
    double worst_excess = -1.0, worst_rise = -1.0;
    double prev = std::numeric_limits<double>::infinity();
    std::int64_t rise_at = -1;
    std::ostringstream seq;
    for (auto m : sweep) {
        const auto pair = make_envelope_pair(t, fgm.truth, m);
        worst_excess = std::max(worst_excess, pair.l1_gap - gap_bound(5, m, c_n));
        const double w = std::sqrt(double(m)) * pair.l1_gap;
        seq << (m == 1 ? "" : " ") << fmt("%.5f", w);
        if (w - prev > worst_rise) {
            worst_rise = w - prev;
            rise_at = m;
        }
        prev = w;
    }
    report("AC5 rate bound", worst_excess <= 1e-6,
           fmt("max(Delta_m - bound)=%.3g (slack 1e-6), c_n=%.9f", worst_excess, c_n));
    report("AC5 sqrt(m)*Delta_m decreasing", worst_rise < 0.0,
           "sequence " + seq.str() + fmt("; largest rise %.3g at m=%.0f", worst_rise, double(rise_at)));

    const double g0 = make_envelope_pair(t, fgm.truth, 0).max_gap;
    const double g256 = make_envelope_pair(t, fgm.truth, 256).max_gap;
    const double ratio = g0 / g256;
    report("AC6 convergence", ratio >= 50.0 && std::abs(ratio - kPinnedGapRatio) <= kPinTol * kPinnedGapRatio,
           fmt("gap(0)/gap(256)=%.6f (need >=50, pinned %.6f)", ratio, kPinnedGapRatio));
}

void ac7() {
    double worst = 0.0;
    std::size_t compared = 0;
    const FgmCopulaModel fgm(0.75);
    const std::vector<double> g{0.1, 0.3, 0.5, 0.7, 0.95};
    for (int n : {2, 3})
        for (int r = 1; r <= n; ++r)
            for (double x : g)
                for (double y : g) {
                    const double q = concomitant_joint_cdf(fgm, r, n, x, y);
                    worst = std::max(worst, std::abs(q - oracle::fgm_concomitant_cdf(0.75, r, n, x, y)));
                    ++compared;
                }
    report("AC7 FGM closed form", worst <= 1e-9,
           fmt("max|quad-closed|=%.3g over %.0f evaluations (tol 1e-9)", worst, double(compared)));
}

void ac8(const std::vector<Case>& cases) {
    const auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto grids = make_oracle_grids(*c.model, 5);
        double worst_cov = 1.0;
        for (int n : {2, 3, 5}) {
            const auto table = build_table(*c.model, n, grids.x, grids.y);
            const auto run = run_simulation(*c.model, n, 100000, kSeed, grids.x, grids.y);
            const auto rep = compare_with_table(run, table);
            worst_cov = std::min(worst_cov, rep.coverage);
            all = all && rep.sufficient_resolution && rep.coverage >= 0.95;
        }
        detail += c.name + fmt(" %.3f ", worst_cov);
    }
    const double secs = seconds_since(t0);
    report("AC8 Monte Carlo oracle", all && secs <= 120.0,
           "min coverage: " + detail + fmt("(need >=0.95), %.2fs (limit 120s)", secs));
}

void ac9(const std::vector<Case>& cases) {
    double worst = 0.0;
    for (const auto& c : cases)
        for (const auto& [n, t] : c.tables) {
            const auto u = WeightVector::uniform(n);
            const auto k = upper_envelope(t, u), h = lower_envelope(t, u);
            for (std::size_t i = 0; i < k.size(); ++i)
                worst = std::max({worst, std::abs(k[i] - c.truth[i]), std::abs(h[i] - c.truth[i])});
        }
    const auto& fgm = cases.front();
    const auto& t5 = fgm.tables.at(5);
    const auto p = weight_sequence(5, 0);
    const auto k = upper_envelope(t5, p), h = lower_envelope(t5, p);
    double gap = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) gap = std::max(gap, k[i] - h[i]);
    report("AC9 equality case",
           worst <= 1e-8 && gap >= 1e-4 && std::abs(gap - kPinnedUniformFailGap) <= kPinTol,
           fmt("uniform max|K-F|=%.3g (tol 1e-8); w(5,0) max gap=%.9f (need >=1e-4, pinned %.9f)", worst, gap,
               kPinnedUniformFailGap));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> snapshot(const CommandResult& r) {
    std::map<std::string, std::string> out;
    for (const auto& f : r.files) out[f.filename().string()] = slurp(f);
    return out;
}

void ac10() {
    const auto root = fs::temp_directory_path() / "osc_acceptance";
    fs::remove_all(root);
    bool same = true;
    std::size_t files = 0;
    for (const auto& model : {nlohmann::json{{"id", "fgm"}, {"theta", 0.75}},
                              nlohmann::json{{"id", "gaussian"}, {"rho", 0.5}}}) {
        ScenarioConfig c;
        c.model = model;
        c.n = 5;
        c.reps = 100000;
        c.seed = kSeed;
        std::vector<std::map<std::string, std::string>> runs;
        for (unsigned threads : {1u, 1u, 4u}) {
            c.threads = threads;
            c.out_dir = (root / ("run" + std::to_string(runs.size()))).string();
            auto snap = snapshot(cmd_envelope(c, 4));
            snap.merge(snapshot(cmd_oracle(c)));
            runs.push_back(std::move(snap));
        }
        files += runs[0].size();
        same = same && runs[0] == runs[1] && runs[0] == runs[2];
    }
    fs::remove_all(root);
    report("AC10 determinism", same && files > 0,
           fmt("%.0f artifacts compared across 2 runs and threads 1 vs 4", double(files)));
}

void guarded(const std::string& id, const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    const auto cases = make_cases();
    guarded("AC1 mixture identity", [&] { ac1(cases); });
    guarded("AC2 rank ordering", [&] { ac2(cases); });
    guarded("AC3 sandwich", [&] { ac3(cases); });
    guarded("AC4 nesting", [&] { ac4(cases); });
    guarded("AC5/AC6", [&] { ac5_ac6(cases.front()); });
    guarded("AC7 FGM closed form", [&] { ac7(); });
    guarded("AC8 Monte Carlo oracle", [&] { ac8(cases); });
    guarded("AC9 equality case", [&] { ac9(cases); });
    guarded("AC10 determinism", [&] { ac10(); });
    std::printf("%d criterion line(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
