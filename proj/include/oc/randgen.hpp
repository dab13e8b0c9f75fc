#pragma once

#include <cstdint>

#include "oc/digraph.hpp"
#include "oc/rng.hpp"

namespace oc {

// The two random models.  `directed` includes each of the n(n-1) ordered
// pairs independently with probability p.  `bidirected_coupled` includes the
// two edges of each unordered pair together or not at all, so its output is
// an undirected random graph with every edge doubled; the constructive
// pipeline consumes this model because it feeds on bidirected edges, and
// success under it lower-bounds success under the directed model at the same
// p (coupling between the models; documented, not proved here).
struct RandomModel {
    enum class Kind { directed, bidirected_coupled };

    Kind kind = Kind::bidirected_coupled;
    int n = 0;
    double p = 0.0;  // clamped to [0,1]
    uint64_t seed = 0;
};

// Deterministic for a fixed model (including seed).
Digraph gen_random(const RandomModel& model);

// Complete bipartite digraph with parts {0..s-1} and {s..n-1}, s = floor(alpha*n),
// all edges in both directions between the parts and none inside.
Digraph gen_bipartite_extremal(int n, double alpha);

// All edges from S = {0..s-1} to T = {s..n-1} only; T-vertices have outdegree 0.
Digraph gen_oneway_extremal(int n, double alpha);

// Edge union of host and a fresh sample of the model (sizes must match).
Digraph perturb(const Digraph& host, const RandomModel& model);

}  // namespace oc
