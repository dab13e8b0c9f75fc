#pragma once

#include <string>

#include "oc/bitset.hpp"
#include "oc/digraph.hpp"

namespace oc {

// A pair of disjoint t-sets with no (bidirected) edge from U to W.  Returned
// by the construction primitives on failure: it certifies that the
// pseudorandomness assumption the step relied on does not hold.
struct PseudorandomWitness {
    enum class Mode { directed, bidirected };

    VertexSet U, W;
    Mode mode = Mode::bidirected;
    int t = 0;
};

// Exhaustive U x W scan of the witness invariants: |U| = |W| = t, disjoint,
// and no edge (directed mode) / no bidirected pair (bidirected mode).
inline bool witness_valid(const Digraph& d, const PseudorandomWitness& w) {
    if (w.t < 1) return false;
    if (w.U.count() != w.t || w.W.count() != w.t) return false;
    if (w.U.intersects(w.W)) return false;
    bool ok = true;
    w.U.for_each([&](int u) {
        w.W.for_each([&](int x) {
            if (w.mode == PseudorandomWitness::Mode::directed) {
                if (d.has_edge(u, x)) ok = false;
            } else {
                if (d.has_bidirected(u, x)) ok = false;
            }
        });
    });
    return ok;
}

}  // namespace oc
