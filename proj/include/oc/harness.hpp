#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oc/embed.hpp"
#include "oc/randgen.hpp"

namespace oc {

// One experiment grid: hosts(n) x C x pattern battery, `trials` seeded runs
// per cell.  Per-trial seeds derive from the master seed by splitting, so
// results are independent of scheduling.
struct TrialSpec {
    enum class Host { bipartite, oneway, empty, file };

    Host host = Host::bipartite;
    std::string host_file;
    double alpha = 0.25;
    RandomModel::Kind model = RandomModel::Kind::bidirected_coupled;
    std::vector<int> n_grid;
    std::vector<double> c_grid;
    std::vector<std::string> battery;  // consistent | antidirected | random:<i> | blocky:<len> | signs:<...>
    int length = 0;                    // target cycle length; 0 = Hamilton (= n)
    int trials = 20;
    Regime regime = Regime::semi;
    double epsilon = 0.0;
    int retries = 8;
    uint64_t master_seed = 1;
    int threads = 0;  // 0: ORIENTCYCLE_THREADS env or hardware/2

    void validate() const;  // throws std::invalid_argument on a bad spec
};

struct CellResult {
    int n = 0;
    double c = 0.0;
    std::string pattern;
    int trials = 0;
    int successes = 0;
    int verified_successes = 0;  // always equals successes
    int witnesses = 0;           // failures carrying a pseudorandomness witness
    std::vector<std::pair<std::string, int>> stage_failures;  // sorted by stage
    double wall_ms = 0.0;
    double rate() const { return trials ? double(successes) / trials : 0.0; }
};

struct TrialReport {
    TrialSpec spec;
    std::string rng_name;
    std::vector<CellResult> cells;  // deterministic order: n, then C, then pattern
};

TrialReport run_trials(const TrialSpec& spec);

// Smallest grid C reaching target_rate per (n, pattern); nullopt = above grid.
struct ScanRow {
    int n = 0;
    std::string pattern;
    std::optional<double> c_star;
};
struct ScanResult {
    TrialReport report;
    double target_rate = 0.9;
    std::vector<ScanRow> rows;
};
ScanResult threshold_scan(const TrialSpec& spec, double target_rate);

// Bit-stable emission for a fixed report.
std::string emit_csv(const TrialReport& report);
std::string emit_json(const TrialReport& report);
std::string emit_plotdata(const TrialReport& report);
std::string emit_scan_csv(const ScanResult& scan);

// Battery entry -> concrete cycle pattern of length k.
OrientationPattern materialize_pattern(const std::string& name, int k, uint64_t master_seed);

// Host generator for a spec at size n.
Digraph make_host(const TrialSpec& spec, int n);

}  // namespace oc
