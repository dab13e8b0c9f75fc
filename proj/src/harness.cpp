#include "oc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace oc {

void TrialSpec::validate() const {
    if (n_grid.empty() || c_grid.empty() || battery.empty())
        throw std::invalid_argument("spec: grids and battery must be non-empty");
    if (trials < 1) throw std::invalid_argument("spec: trials >= 1");
    for (int n : n_grid) {
        if (n < 2) throw std::invalid_argument("spec: n >= 2");
        int len = length == 0 ? n : length;
        if (len < 2 || len > n) throw std::invalid_argument("spec: cycle length out of range");
        for (const auto& b : battery)
            (void)materialize_pattern(b, len, master_seed);  // throws on bad entries
    }
    for (double c : c_grid)
        if (c < 0) throw std::invalid_argument("spec: C >= 0");
    if (host == Host::file && host_file.empty())
        throw std::invalid_argument("spec: host=file needs a path");
    if (host != Host::empty && !(alpha > 0 && alpha < 0.5))
        throw std::invalid_argument("spec: alpha in (0, 1/2)");
}

OrientationPattern materialize_pattern(const std::string& name, int k, uint64_t master_seed) {
    using Kind = OrientationPattern::Kind;
    if (name == "consistent") return OrientationPattern::consistent(Kind::cycle, k);
    if (name == "antidirected") {
        if (k % 2) throw std::invalid_argument("antidirected cycle needs even length (k=" +
                                               std::to_string(k) + ")");
        return OrientationPattern::antidirected(Kind::cycle, k);
    }
    if (name.rfind("random:", 0) == 0) {
        uint64_t idx = std::stoull(name.substr(7));
        SplitRng rng(SplitRng::mix(master_seed ^ (0xba77e2 + idx)));
        return random_cycle_pattern(k, rng);
    }
    if (name.rfind("blocky:", 0) == 0) {
        int len = std::stoi(name.substr(7));
        if (len < 1) throw std::invalid_argument("blocky block length >= 1");
        return blocky_cycle_pattern(k, len);
    }
    if (name.rfind("signs:", 0) == 0) {
        auto p = OrientationPattern::from_signs(Kind::cycle, name.substr(6));
        if (p.k() != k) throw std::invalid_argument("signs pattern length mismatch");
        return p;
    }
    throw std::invalid_argument("unknown battery entry: " + name);
}

Digraph make_host(const TrialSpec& spec, int n) {
    switch (spec.host) {
        case TrialSpec::Host::bipartite: return gen_bipartite_extremal(n, spec.alpha);
        case TrialSpec::Host::oneway: return gen_oneway_extremal(n, spec.alpha);
        case TrialSpec::Host::empty: return Digraph(n);
        case TrialSpec::Host::file: {
            Digraph d = Digraph::load_file(spec.host_file);
            if (d.n() != n) throw std::invalid_argument("host file has n=" + std::to_string(d.n()));
            return d;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

int thread_count(const TrialSpec& spec) {
    if (spec.threads > 0) return spec.threads;
    if (const char* env = std::getenv("ORIENTCYCLE_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return std::max(1u, hw / 2);
}

struct Cell {
    int n;
    double c;
    std::string pattern_name;
};

}  // namespace

TrialReport run_trials(const TrialSpec& spec) {
    spec.validate();
    std::vector<Cell> cells;
    for (int n : spec.n_grid)
        for (double c : spec.c_grid)
            for (const auto& b : spec.battery) cells.push_back({n, c, b});

    TrialReport report;
    report.spec = spec;
    report.rng_name = SplitRng::name();
    report.cells.resize(cells.size());

    SplitRng master(spec.master_seed);
    int workers = thread_count(spec);

    // hosts are deterministic per n; build each once
    std::map<int, Digraph> hosts;
    for (int n : spec.n_grid)
        if (!hosts.count(n)) hosts.emplace(n, make_host(spec, n));

    auto run_cell = [&](size_t ci) {
        const Cell& cell = cells[ci];
        auto t0 = std::chrono::steady_clock::now();
        int len = spec.length == 0 ? cell.n : spec.length;
        OrientationPattern pat = materialize_pattern(cell.pattern_name, len, spec.master_seed);

        CellResult res;
        res.n = cell.n;
        res.c = cell.c;
        res.pattern = cell.pattern_name;
        res.trials = spec.trials;
        std::map<std::string, int> stages;
        const Digraph& host = hosts.at(cell.n);
        for (int trial = 0; trial < spec.trials; ++trial) {
            SplitRng srng = master.split((uint64_t(ci) << 24) | uint64_t(trial));
            RandomModel model{spec.model, cell.n, cell.c / cell.n, srng.next_u64()};
            Digraph d = perturb(host, model);

            EmbedConfig cfg;
            cfg.regime = spec.regime;
            cfg.alpha = spec.alpha;
            cfg.epsilon = spec.epsilon;
            cfg.C = cell.c;
            cfg.seed = srng.next_u64();
            cfg.retries = spec.retries;
            EmbedOutcome out = embed_cycle(d, pat, cfg);
            if (out.ok()) {
                ++res.successes;
                if (verify_embedding(d, *out.embedding)) ++res.verified_successes;
            } else {
                std::string stage = out.failure ? out.failure->stage : "unknown";
                ++stages[stage];
                if (out.failure && out.failure->witness) ++res.witnesses;
            }
        }
        for (auto& [k, v] : stages) res.stage_failures.emplace_back(k, v);
        auto t1 = std::chrono::steady_clock::now();
        res.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        report.cells[ci] = std::move(res);
    };

    if (workers <= 1 || cells.size() <= 1) {
        for (size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                while (true) {
                    size_t ci = next.fetch_add(1);
                    if (ci >= cells.size()) return;
                    run_cell(ci);
                }
            });
        for (auto& th : pool) th.join();
    }
    return report;
}

ScanResult threshold_scan(const TrialSpec& spec, double target_rate) {
    TrialSpec sorted = spec;
    std::sort(sorted.c_grid.begin(), sorted.c_grid.end());
    ScanResult scan;
    scan.report = run_trials(sorted);
    scan.target_rate = target_rate;
    for (int n : sorted.n_grid)
        for (const auto& b : sorted.battery) {
            ScanRow row;
            row.n = n;
            row.pattern = b;
            for (double c : sorted.c_grid) {
                for (const auto& cell : scan.report.cells)
                    if (cell.n == n && cell.c == c && cell.pattern == b && cell.rate() >= target_rate) {
                        row.c_star = c;
                        break;
                    }
                if (row.c_star) break;
            }
            scan.rows.push_back(std::move(row));
        }
    return scan;
}

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

const char* host_name(TrialSpec::Host h) {
    switch (h) {
        case TrialSpec::Host::bipartite: return "bipartite";
        case TrialSpec::Host::oneway: return "oneway";
        case TrialSpec::Host::empty: return "empty";
        default: return "file";
    }
}

}  // namespace

std::string emit_csv(const TrialReport& report) {
    std::ostringstream os;
    os << "host,regime,model,n,C,pattern,trials,successes,rate\n";
    for (const auto& cell : report.cells) {
        os << host_name(report.spec.host) << ','
           << (report.spec.regime == Regime::semi ? "semi" : "total") << ','
           << (report.spec.model == RandomModel::Kind::directed ? "d" : "dstar") << ',' << cell.n
           << ',' << fmt_double(cell.c) << ',' << cell.pattern << ',' << cell.trials << ','
           << cell.successes << ',' << fmt_double(cell.rate()) << '\n';
    }
    return os.str();
}

std::string emit_json(const TrialReport& report) {
    nlohmann::json j;
    j["rng"] = report.rng_name;
    j["spec"] = {{"host", host_name(report.spec.host)},
                 {"alpha", report.spec.alpha},
                 {"model", report.spec.model == RandomModel::Kind::directed ? "d" : "dstar"},
                 {"n_grid", report.spec.n_grid},
                 {"C_grid", report.spec.c_grid},
                 {"battery", report.spec.battery},
                 {"length", report.spec.length},
                 {"trials", report.spec.trials},
                 {"regime", report.spec.regime == Regime::semi ? "semi" : "total"},
                 {"epsilon", report.spec.epsilon},
                 {"retries", report.spec.retries},
                 {"master_seed", report.spec.master_seed}};
    j["cells"] = nlohmann::json::array();
    for (const auto& cell : report.cells) {
        nlohmann::json c = {{"n", cell.n},
                            {"C", cell.c},
                            {"pattern", cell.pattern},
                            {"trials", cell.trials},
                            {"successes", cell.successes},
                            {"verified_successes", cell.verified_successes},
                            {"witnesses", cell.witnesses},
                            {"rate", cell.rate()},
                            {"wall_ms", cell.wall_ms}};
        c["stage_failures"] = nlohmann::json::object();
        for (const auto& [stage, cnt] : cell.stage_failures) c["stage_failures"][stage] = cnt;
        j["cells"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

std::string emit_plotdata(const TrialReport& report) {
    std::ostringstream os;
    for (int n : report.spec.n_grid)
        for (const auto& b : report.spec.battery) {
            os << "# host=" << host_name(report.spec.host) << " n=" << n << " pattern=" << b
               << '\n';
            for (const auto& cell : report.cells)
                if (cell.n == n && cell.pattern == b)
                    os << fmt_double(cell.c) << ' ' << fmt_double(cell.rate()) << '\n';
            os << '\n';
        }
    return os.str();
}

std::string emit_scan_csv(const ScanResult& scan) {
    std::ostringstream os;
    os << "n,pattern,target_rate,C_star\n";
    for (const auto& row : scan.rows) {
        os << row.n << ',' << row.pattern << ',' << fmt_double(scan.target_rate) << ',';
        if (row.c_star)
            os << fmt_double(*row.c_star);
        else
            os << "above-grid";
        os << '\n';
    }
    return os.str();
}

}  // namespace oc
