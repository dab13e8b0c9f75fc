// orientcycle: experiment driver for constructive oriented-cycle embedding
// in randomly perturbed digraphs.
//
// Subcommands: trial, scan, sweep, embed-one, verify.
// Exit codes: 0 = ran, 2 = invalid spec/arguments, 3 = I/O failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oc/harness.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
    std::string host = "bipartite";
    std::string host_file;
    double alpha = 0.25;
    std::string model = "dstar";
    std::vector<int> n_grid{300};
    std::vector<double> c_grid{20.0};
    std::vector<std::string> battery{"consistent"};
    int length = 0;
    int trials = 20;
    std::string regime = "semi";
    double epsilon = 0.0;
    int retries = 8;
    uint64_t master_seed = 1;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--host", o.host, "bipartite|oneway|empty|file")
        ->check(CLI::IsMember({"bipartite", "oneway", "empty", "file"}));
    cmd->add_option("--host-file", o.host_file, "edge-list path for --host file");
    cmd->add_option("--alpha", o.alpha, "host density parameter");
    cmd->add_option("--model", o.model, "d (independent) | dstar (bidirected coupled)")
        ->check(CLI::IsMember({"d", "dstar"}));
    cmd->add_option("--n", o.n_grid, "vertex counts (grid)");
    cmd->add_option("--C", o.c_grid, "perturbation constants, p = C/n (grid)");
    cmd->add_option("--battery", o.battery,
                    "patterns: consistent antidirected random:<i> blocky:<len> signs:<+->");
    cmd->add_option("--length", o.length, "cycle length (0 = Hamilton)");
    cmd->add_option("--trials", o.trials, "trials per cell");
    cmd->add_option("--regime", o.regime, "semi|total")->check(CLI::IsMember({"semi", "total"}));
    cmd->add_option("--epsilon", o.epsilon, "pseudorandomness scale (0 = desk t=1)");
    cmd->add_option("--retries", o.retries, "embedder stage retries");
    cmd->add_option("--master-seed", o.master_seed, "master seed");
    cmd->add_option("--threads", o.threads, "worker threads (0 = ORIENTCYCLE_THREADS or auto)");
}

oc::TrialSpec to_spec(const CommonOpts& o) {
    oc::TrialSpec s;
    if (o.host == "bipartite") s.host = oc::TrialSpec::Host::bipartite;
    else if (o.host == "oneway") s.host = oc::TrialSpec::Host::oneway;
    else if (o.host == "empty") s.host = oc::TrialSpec::Host::empty;
    else s.host = oc::TrialSpec::Host::file;
    s.host_file = o.host_file;
    s.alpha = o.alpha;
    s.model = o.model == "d" ? oc::RandomModel::Kind::directed
                             : oc::RandomModel::Kind::bidirected_coupled;
    s.n_grid = o.n_grid;
    s.c_grid = o.c_grid;
    s.battery = o.battery;
    s.length = o.length;
    s.trials = o.trials;
    s.regime = o.regime == "semi" ? oc::Regime::semi : oc::Regime::total;
    s.epsilon = o.epsilon;
    s.retries = o.retries;
    s.master_seed = o.master_seed;
    s.threads = o.threads;
    return s;
}

int write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open " << path << "\n";
        return 3;
    }
    f << content;
    return f ? 0 : 3;
}

json witness_json(const oc::PseudorandomWitness& w) {
    return json{{"mode", w.mode == oc::PseudorandomWitness::Mode::bidirected ? "bidirected"
                                                                             : "directed"},
                {"t", w.t},
                {"U", w.U.to_vector()},
                {"W", w.W.to_vector()}};
}

json outcome_json(const oc::EmbedOutcome& out) {
    json j;
    j["status"] = oc::to_string(out.status);
    j["route"] = out.route;
    if (out.embedding) j["embedding"] = out.embedding->verts;
    if (out.failure) {
        j["stage"] = out.failure->stage;
        j["detail"] = out.failure->detail;
        if (out.failure->witness) j["witness"] = witness_json(*out.failure->witness);
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive oriented-cycle embedding in randomly perturbed digraphs"};
    app.require_subcommand(1);

    CommonOpts topt;
    std::string out_prefix = "orientcycle";
    std::vector<std::string> formats{"csv"};
    double target_rate = 0.9;
    std::vector<int> sweep_lengths;
    int patterns_per_length = 8;
    std::string pattern_text;
    std::string graph_file, embedding_text;
    uint64_t one_seed = 1;

    auto* trial = app.add_subcommand("trial", "run the Monte Carlo grid");
    add_common(trial, topt);
    trial->add_option("--out", out_prefix, "output path prefix");
    trial->add_option("--format", formats, "csv json plotdata");

    auto* scan = app.add_subcommand("scan", "estimate the smallest C reaching a success rate");
    add_common(scan, topt);
    scan->add_option("--out", out_prefix, "output path prefix");
    scan->add_option("--target-rate", target_rate, "required success rate");

    auto* sweep = app.add_subcommand("sweep", "universality sweep on one fixed instance");
    add_common(sweep, topt);
    sweep->add_option("--lengths", sweep_lengths, "cycle lengths (default 2..n)");
    sweep->add_option("--patterns-per-length", patterns_per_length, "battery size per length");
    sweep->add_option("--out", out_prefix, "output path prefix");

    auto* one = app.add_subcommand("embed-one", "embed a single pattern, print JSON outcome");
    add_common(one, topt);
    one->add_option("--pattern", pattern_text, "'cycle ++-..' or battery name")->required();
    one->add_option("--seed", one_seed, "instance seed");

    auto* verify = app.add_subcommand("verify", "check an embedding against a digraph file");
    verify->add_option("--graph", graph_file, "edge-list file")->required();
    verify->add_option("--pattern", pattern_text, "'path ++-' or 'cycle +-'")->required();
    verify->add_option("--embedding", embedding_text, "comma-separated vertex ids")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (trial->parsed()) {
            oc::TrialReport report = oc::run_trials(to_spec(topt));
            int rc = 0;
            for (const auto& f : formats) {
                if (f == "csv") rc = std::max(rc, write_file(out_prefix + ".csv", emit_csv(report)));
                else if (f == "json") rc = std::max(rc, write_file(out_prefix + ".json", emit_json(report)));
                else if (f == "plotdata")
                    rc = std::max(rc, write_file(out_prefix + ".plot", emit_plotdata(report)));
                else {
                    std::cerr << "unknown format " << f << "\n";
                    return 2;
                }
            }
            std::cout << emit_csv(report);
            return rc;
        }
        if (scan->parsed()) {
            oc::ScanResult res = oc::threshold_scan(to_spec(topt), target_rate);
            int rc = write_file(out_prefix + ".scan.csv", emit_scan_csv(res));
            rc = std::max(rc, write_file(out_prefix + ".csv", emit_csv(res.report)));
            std::cout << emit_scan_csv(res);
            return rc;
        }
        if (sweep->parsed()) {
            oc::TrialSpec spec = to_spec(topt);
            spec.validate();
            int n = spec.n_grid.front();
            oc::SplitRng rng(spec.master_seed);
            oc::RandomModel model{spec.model, n, spec.c_grid.front() / n, rng.next_u64()};
            oc::Digraph d = perturb(make_host(spec, n), model);
            std::vector<int> lengths = sweep_lengths;
            if (lengths.empty())
                for (int k = 2; k <= n; ++k) lengths.push_back(k);
            oc::EmbedConfig cfg;
            cfg.regime = spec.regime;
            cfg.alpha = spec.alpha;
            cfg.epsilon = spec.epsilon;
            cfg.retries = spec.retries;
            cfg.seed = rng.next_u64();
            auto rows = oc::universality_sweep(d, lengths, patterns_per_length, cfg);
            std::ostringstream os;
            os << "length,pattern,success,route,stage\n";
            for (const auto& r : rows)
                os << r.length << ',' << r.pattern << ',' << (r.success ? 1 : 0) << ',' << r.route
                   << ',' << r.stage << '\n';
            std::cout << os.str();
            return write_file(out_prefix + ".sweep.csv", os.str());
        }
        if (one->parsed()) {
            oc::TrialSpec spec = to_spec(topt);
            int n = spec.n_grid.front();
            int len = spec.length == 0 ? n : spec.length;
            oc::OrientationPattern pat =
                pattern_text.rfind("cycle", 0) == 0 || pattern_text.rfind("path", 0) == 0
                    ? oc::OrientationPattern::parse(pattern_text)
                    : oc::materialize_pattern(pattern_text, len, spec.master_seed);
            oc::SplitRng rng(one_seed);
            oc::RandomModel model{spec.model, n, spec.c_grid.front() / n, rng.next_u64()};
            oc::Digraph d = perturb(make_host(spec, n), model);
            oc::EmbedConfig cfg;
            cfg.regime = spec.regime;
            cfg.alpha = spec.alpha;
            cfg.epsilon = spec.epsilon;
            cfg.retries = spec.retries;
            cfg.seed = rng.next_u64();
            oc::EmbedOutcome out = embed_cycle(d, pat, cfg);
            std::cout << outcome_json(out).dump(2) << "\n";
            return 0;
        }
        if (verify->parsed()) {
            oc::Digraph d = oc::Digraph::load_file(graph_file);
            oc::OrientationPattern pat = oc::OrientationPattern::parse(pattern_text);
            oc::Embedding e;
            e.pattern = pat;
            std::stringstream ss(embedding_text);
            std::string tok;
            while (std::getline(ss, tok, ',')) e.verts.push_back(std::stoi(tok));
            bool ok = verify_embedding(d, e);
            std::cout << (ok ? "valid" : "invalid") << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
