#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "oc/digraph.hpp"
#include "oc/outcome.hpp"
#include "oc/rng.hpp"

namespace oc {

// Set-size parameter for the pseudorandomness primitives: t = ceil(epsilon*n),
// clamped to at least 1.  A digraph is t-bipseudorandom when every two
// disjoint t-sets are joined by a bidirected edge; the primitives below
// either construct their object or return a witness pair refuting exactly
// that property.
struct PseudoParams {
    int t = 1;
    double epsilon = 0.0;

    static PseudoParams from_epsilon(double epsilon, int n) {
        if (epsilon < 0) throw std::invalid_argument("epsilon < 0");
        int t = std::max(1, int(std::ceil(epsilon * n - 1e-12)));
        if (t > n / 2) throw std::invalid_argument("t exceeds n/2");
        return PseudoParams{t, epsilon};
    }
};

// Lowest pair (u, w), u in U, w in W, with both directions present; scan
// order is ascending u then w, so results are deterministic.  nullopt means
// exhaustive absence (a valid bidirected witness when both sets reach t).
std::optional<std::pair<int, int>> bidirected_edge_between(const Digraph& d, const VertexSet& U,
                                                           const VertexSet& W);

// Same search over possibly overlapping candidate sets; any x in A, y in B
// with x != y qualifies.
std::optional<std::pair<int, int>> bidirected_pair_any(const Digraph& d, const VertexSet& A,
                                                       const VertexSet& B);

// Witness over two (possibly overlapping) candidate sets known to span no
// bidirected edge: splits the overlap, truncates both sides to t.  nullopt
// when either side cannot reach size t.
std::optional<PseudorandomWitness> witness_from_pair(const VertexSet& A, const VertexSet& B, int t);

// Carve pairwise-disjoint blocks out of candidate sets, lowest ids first,
// at most `cap` vertices each: block i takes the lowest `cap` members of
// candidates[i] not claimed by blocks before it.
std::vector<VertexSet> allocate_disjoint_blocks(const std::vector<VertexSet>& candidates, int cap);

// Bidirected path (v_1..v_l) with v_i in blocks[i-1]; blocks must be pairwise
// disjoint.  Forward frontier pass A_1 = B_1, A_{i+1} = members of B_{i+1}
// with a bidirected neighbor in A_i; if a frontier loses t or more members
// while the previous frontier still holds t, the two gaps form a witness.
// Backward extraction picks lowest ids.
Outcome<std::vector<int>> connecting_path(const Digraph& d, const std::vector<VertexSet>& blocks,
                                          int t);

// Bidirected path on exactly target_len vertices avoiding `forbidden`, found
// by DFS over the bidirected subgraph (neighbors in ascending id order; the
// DFS stack is the path).  On exhaustion, the first snapshot at which both
// the unvisited and finished sets held t vertices yields the witness: no
// bidirected edge ever joins those two sides.  start_hint picks the first
// DFS root (lowest unvisited id when -1 or unusable).
Outcome<std::vector<int>> long_bidirected_path(const Digraph& d, const VertexSet& forbidden,
                                               int target_len, int t, int start_hint = -1);

// Copy (v, x, y, v') of a 3-edge oriented path with x, y in `allowed`:
// x in N^{s1}(v), y in N^{reverse s3}(v'), middle edge bidirected.
Outcome<std::pair<int, int>> three_edge_connector(const Digraph& d, int v, int v_prime,
                                                  Sign s1, Sign s2, Sign s3,
                                                  const VertexSet& allowed, int t);

// Exhaustive bipseudorandomness verdict; nullopt = property holds.  The
// enumeration is C(n,t)^2-ish, so n <= 16 or t = 1 is enforced.
std::optional<PseudorandomWitness> is_bipseudorandom_exact(const Digraph& d, int t);

// Monte Carlo complement: sample disjoint (U, W) pairs; a returned witness is
// always valid, nullopt is inconclusive.
std::optional<PseudorandomWitness> falsify_bipseudorandom(const Digraph& d, int t, int samples,
                                                          uint64_t seed);

}  // namespace oc
