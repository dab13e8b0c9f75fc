#pragma once

#include <map>
#include <vector>

#include "oc/digraph.hpp"
#include "oc/match_template.hpp"
#include "oc/outcome.hpp"
#include "oc/pseudo.hpp"

namespace oc {

// Parameters of the semi-degree absorbing pipeline.  The asymptotic defaults
// derive everything from (alpha, eta); at desk scale the derived epsilon
// collapses below 1/n, so m, beta and t are plain configuration here and the
// builder validates the arithmetic instead of assuming it.
struct SemiParams {
    double alpha = 0.3;  // minimum semi-degree ratio the digraph is assumed to satisfy
    double eta = 0.5;    // absorber size budget as a fraction of |V(P)|
    double beta = 0.5;   // X oversize ratio; beta*m must be an integer
    int m = 24;          // template scale: |X|=(1+beta)m, |Y|=2m, |Z|=3m
    int t = 1;           // pseudorandomness set size
    int block_cap = 8;   // per-block width fed to connecting_path (>= 2t)
    int x_retries = 100; // resampling budget for the X degree property

    int beta_m() const;
    // pattern positions consumed by the fixed structure; a P on k vertices
    // leaves |R| = k - absorber_size() vertices to absorb
    int absorber_size() const { return (252 * m) + beta_m() + 1; }
    int min_pattern_len() const;
    void validate(int n) const;
};

// A (segment)-absorber (A, v) for (S, z): a bidirected spine v_1..v_{2k+2}
// hooked to v and z, where each s in S can be sandwiched between v_{2i} and
// v_{2i+1} to form a copy of the 2k+5-vertex segment from v to z.
struct LocalAbsorberSemi {
    OrientationPattern segment;
    int v = -1;                // startpoint, plays position 1
    int z = -1;                // endpoint, external, plays position 2k+5
    std::vector<int> spine;    // v_1..v_{2k+2}
    std::vector<int> slots;    // slots[i-1] = s_i, sandwiched at spine gap 2i
    std::map<int, int> slot_of;  // vertex -> i (1-based)

    int slot_count() const { return int(slots.size()); }
    // A = {v} u spine (the set the structure occupies, z excluded)
    std::vector<int> own_vertices() const;
};

// Builds the local absorber avoiding `forbidden`; S is ordered, |segment| =
// 2|S|+5.  Neighborhood shortfalls are reported with the offending vertex;
// connecting-path failures propagate their witness.
Outcome<LocalAbsorberSemi> build_local_absorber_semi(const Digraph& d,
                                                     const OrientationPattern& segment, int v,
                                                     const std::vector<int>& S, int z,
                                                     const VertexSet& forbidden, int t,
                                                     int block_cap = 8);

// The copy of `segment` through slot s: (v, v_1..v_{2i}, s, v_{2i+1}.., z).
Embedding activate_local_semi(const LocalAbsorberSemi& a, int s);

// Copy of `pattern` (on |R| + b vertices, b = pattern.k() - |R|) inside
// R u X covering R, with prescribed startpoint v and endpoint v' in R: a
// long bidirected path inside R plus spare X vertices, stitched with 3-edge
// connectors through the rest of X.  Requires b >= 4t+4 and the X degree
// property |N^{+-}(w) & X| >= 2b for every w.
Outcome<Embedding> absorb_R_into_X(const Digraph& d, const VertexSet& X, const VertexSet& R,
                                   int v, int v_prime, const OrientationPattern& pattern, int t);

// The assembled semi-degree global absorber for a pattern P: reservoir X
// with the degree property, Y and Z carrying the match template, anchor z_0,
// and one local absorber per z_i housing pattern segment
// (84i-80 .. 84i+4).  |A| = (252+beta)m + 1.
struct GlobalAbsorberSemi {
    OrientationPattern pattern;
    SemiParams params;
    std::vector<int> X, Y, Z;  // sorted vertex ids
    VertexSet Xset, A;
    int z0 = -1;
    MatchTemplate tpl;
    std::vector<LocalAbsorberSemi> locals;  // locals[i-1] serves z_i

    int k() const { return pattern.k(); }
    int absorber_size() const { return A.count(); }
    int leftover_size() const { return k() - absorber_size(); }  // |R| at activation
};

Outcome<GlobalAbsorberSemi> build_global_absorber_semi(const Digraph& d,
                                                       const OrientationPattern& P,
                                                       const SemiParams& params, uint64_t seed);

// Copy of P covering exactly A u R with startpoint v and endpoint v' in R.
Outcome<Embedding> activate_global_semi(const Digraph& d, const GlobalAbsorberSemi& gab,
                                        const VertexSet& R, int v, int v_prime);

}  // namespace oc
