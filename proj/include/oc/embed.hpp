#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oc/absorb_semi.hpp"
#include "oc/absorb_total.hpp"
#include "oc/digraph.hpp"
#include "oc/outcome.hpp"

namespace oc {

enum class Regime { semi, total };

struct EmbedConfig {
    Regime regime = Regime::semi;
    double alpha = 0.25;   // degree assumption: semi-degree >= alpha*n, or total >= 2*alpha*n
    double eta = 0.5;
    double epsilon = 0.0;  // 0 picks the desk default t = 1
    double C = 20.0;       // perturbation constant, informational
    uint64_t seed = 1;
    int retries = 8;       // stage retries with varied deterministic starts
    bool allow_absorber = true;  // absorber route when the arithmetic fits

    int t_for(int n) const {
        if (epsilon <= 0.0) return 1;
        return std::max(1, int(std::ceil(epsilon * n - 1e-12)));
    }
    void validate() const {
        if (!(alpha > 0) || retries < 1) throw std::invalid_argument("invalid embed config");
    }
};

// The pipeline is one-sided: it mirrors the constructive strategy, so
// strategy_failed means this strategy did not go through (with a witness
// when a pseudorandomness step refuted itself), never that the cycle is
// absent.  confirmed_absent is only reported by exhaustive stages (digon
// and triangle search).
enum class EmbedStatus { found, strategy_failed, confirmed_absent };

inline const char* to_string(EmbedStatus s) {
    switch (s) {
        case EmbedStatus::found: return "found";
        case EmbedStatus::strategy_failed: return "strategy_failed";
        default: return "confirmed_absent";
    }
}

struct EmbedOutcome {
    EmbedStatus status = EmbedStatus::strategy_failed;
    std::optional<Embedding> embedding;     // verified before being returned
    std::optional<FailureReport> failure;
    std::string route;  // digon | triangle | path-closing | absorber-semi | absorber-total

    bool ok() const { return status == EmbedStatus::found; }
};

EmbedOutcome embed_cycle(const Digraph& d, const OrientationPattern& c, const EmbedConfig& cfg);

// Exhaustive backtracking oracle, n <= 10; nullopt means the digraph
// contains no copy of the pattern.
std::optional<Embedding> brute_force_contains(const Digraph& d, const OrientationPattern& c);

struct SweepRow {
    int length = 0;
    std::string pattern;
    bool success = false;
    std::string route;
    std::string stage;  // failure stage, empty on success
};

// One fixed digraph, a battery of targets: exhaustive over sign sequences
// when 2^edges fits the budget, otherwise named + seeded random patterns.
std::vector<SweepRow> universality_sweep(const Digraph& d, const std::vector<int>& lengths,
                                         int patterns_per_length, const EmbedConfig& cfg);

// Pattern battery helpers.
OrientationPattern random_cycle_pattern(int k, SplitRng& rng);
OrientationPattern blocky_cycle_pattern(int k, int block_len);

}  // namespace oc
