#pragma once

#include <map>
#include <vector>

#include "oc/digraph.hpp"
#include "oc/match_template.hpp"
#include "oc/outcome.hpp"
#include "oc/pseudo.hpp"

namespace oc {

// Indices i in {2..k-1} whose pattern-indegree is 0 or 2, i.e. the positions
// where consecutive signs differ.  Consecutive entries alternate between the
// indegree-0 and indegree-2 kinds.
std::vector<int> swap_vertices(const OrientationPattern& p);

// Swap count of the subpath on positions a..j of p (internal sign changes).
int swap_count_in_range(const OrientationPattern& p, int a, int j);

inline bool approx_ge(double a, double b) { return a >= b - 1e-9; }

// d^{sigma(u1,u2)}(v) >= alpha*n and d^{sigma(uk,uk-1)}(v') >= alpha*n.
bool is_compatible(const Digraph& d, int v, int v_prime, const OrientationPattern& p, double alpha);

// Partition of V(D) into V+ and V- with |V^*| >= alpha*n/2 and
// d^*(v) >= alpha*n/2 on each side; requires min total degree >= 2*alpha*n.
std::pair<VertexSet, VertexSet> partition_by_degree(const Digraph& d, double alpha);

// The routing set of the total-degree pipeline: |X| = (1+beta)m; every
// vertex with d^*(v) >= alpha*n/2 sees X at least 2*beta*m times on that
// side; X splits into X+ and X- of size >= 2*beta*m whose members have the
// matching one-sided degree.
struct Reservoir {
    VertexSet X, Xplus, Xminus;
    std::vector<int> Xlist;  // sorted
    double alpha = 0.0, beta = 0.0;
    int m = 0;

    int beta_m() const { return int(std::llround(beta * m)); }
    const VertexSet& side(Sign s) const { return s == Sign::plus ? Xplus : Xminus; }
    // exhaustive re-verification of all three defining bullets
    bool verify(const Digraph& d) const;
};

Outcome<Reservoir> build_reservoir(const Digraph& d, double alpha, double beta, int m,
                                   uint64_t seed, int retries = 100);

// Copy of `p` (k >= 4 vertices) with startpoint v, endpoint v', interior in
// X \ U, built two vertices at a time; the final step closes with a
// bidirected edge (k even) or a 3-block connecting path (k odd).  Requires
// (v,v') (alpha/2)-compatible with p and |U| + k <= (3/2) beta m.
Outcome<std::vector<int>> link_through_reservoir(const Digraph& d, const Reservoir& res, int v,
                                                 int v_prime, const OrientationPattern& p,
                                                 const VertexSet& U, int t, int block_cap = 8);

// Copy of `p` (on |R| + b vertices, b <= beta*m) in D[R u X] covering R with
// startpoint v and endpoint v', splitting p at swap vertices matched to each
// middle vertex's heavy side and linking consecutive vertices of R through
// the reservoir.  Needs at least 4|R|-6 swap vertices in p.
Outcome<Embedding> chain_absorb(const Digraph& d, const Reservoir& res, const VertexSet& R, int v,
                                int v_prime, const OrientationPattern& p, int t, int block_cap = 8);

// Bidirected path on exactly k vertices avoiding U whose startpoint v and
// endpoint v' satisfy d^{star1}(v), d^{star2}(v') >= alpha*n/2; builds one
// long path per degree class and stitches or truncates depending on whether
// the requested classes coincide.
Outcome<std::vector<int>> long_path_with_degrees(const Digraph& d, const VertexSet& U, int k,
                                                 Sign star1, Sign star2, double alpha, int t);

// (A, v, v')-absorber for (S, z): bidirected spine v_1..v_{k-4} whose copy
// of the k-vertex segment always routes through z (at a fixed swap position)
// and through exactly one s in S (at its own swap position).
struct LocalAbsorberTotal {
    OrientationPattern segment;
    int v = -1, v_prime = -1;  // startpoint / endpoint, both in A
    int z = -1;                // external forced vertex
    int z_pos = -1;            // pattern position z occupies
    std::vector<int> spine;    // v_1..v_{k-4}
    std::vector<int> slots;    // S, ordered
    std::map<int, int> slot_pos;  // s -> pattern position i_j

    std::vector<int> own_vertices() const;  // v, spine, v'
};

// alpha here is the compatibility scale: (v,v') must be alpha-compatible
// with `segment`, and slot degrees are judged against alpha*n.
Outcome<LocalAbsorberTotal> build_local_absorber_total(const Digraph& d,
                                                       const OrientationPattern& segment, int v,
                                                       int v_prime, const std::vector<int>& S,
                                                       int z, const VertexSet& forbidden,
                                                       double alpha, int t, int block_cap = 8);

Embedding activate_local_total(const LocalAbsorberTotal& a, int s);

// Copy of an arbitrary oriented subpath between two prescribed endpoints,
// interior bidirected and fresh; endpoints must have the matching
// one-directional neighborhoods large enough to supply a block.
Outcome<std::vector<int>> connect_copy(const Digraph& d, const OrientationPattern& p, int from,
                                       int to, const VertexSet& forbidden, int t, int block_cap = 8);

struct TotalParams {
    double alpha = 0.45;  // min total degree >= 2*alpha*n
    double eta = 1.0;     // swap-density parameter; 516/eta suggests segment_len
    double beta = 1.0 / 3.0;
    int m = 27;
    int t = 1;
    int r = 3;            // leftover size (9*eps*n with eps*n = r/9)
    int segment_len = 129;  // p; at least 129 so a good segment can host 40 slots
    int block_cap = 8;
    int retries = 100;

    int beta_m() const;
    int ell() const { return beta_m() + r - 4; }
    void validate() const;
};

// How the pattern is cut: P0=(1..4), P1=(4..j+1) carved into s+1 pieces of
// segment_len, P2=(j+1..j+ell) for absorbing, P3=(j+ell..k-3), P4=(k-3..k).
struct TotalSegmentation {
    int k = 0, j = 0, ell = 0, r = 0, p = 0, s = 0;
    std::vector<char> good;  // per piece 0..s: has >= 127 swap vertices
    int good_count = 0;
};

struct GlobalAbsorberTotal {
    OrientationPattern pattern;
    TotalParams params;
    TotalSegmentation seg;
    Reservoir res;
    std::vector<int> Y, Z;
    MatchTemplate tpl;
    std::vector<int> w, w_prime;       // anchors, index 0..s+2
    std::vector<int> assigned;         // per z index: its piece i_z
    std::vector<LocalAbsorberTotal> locals;    // per z index
    std::map<int, std::vector<int>> fillers;   // piece i -> copy of P1_i (i unassigned)
    std::vector<int> q1_tail;          // copy of (u_{(s+1)p+5}..u_j)
    std::vector<int> q3;               // copy of P3; startpoint plays u_{j+ell}
    VertexSet A;

    int k() const { return pattern.k(); }
    int absorber_size() const { return A.count(); }
    int leftover_size() const { return k() - absorber_size(); }
};

Outcome<GlobalAbsorberTotal> build_global_absorber_total(const Digraph& d,
                                                         const OrientationPattern& P,
                                                         const TotalParams& params, uint64_t seed);

// Copy of P covering exactly A u R with startpoint v and endpoint v', for
// any R with |R| + |A| = |V(P)| and (v,v') (alpha/2)-compatible with P.
Outcome<Embedding> activate_global_total(const Digraph& d, const GlobalAbsorberTotal& gab,
                                         const VertexSet& R, int v, int v_prime);

}  // namespace oc
