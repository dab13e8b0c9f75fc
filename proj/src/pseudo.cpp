#include "oc/pseudo.hpp"

#include <algorithm>
#include <cmath>

namespace oc {

std::optional<std::pair<int, int>> bidirected_edge_between(const Digraph& d, const VertexSet& U,
                                                           const VertexSet& W) {
    if (U.intersects(W)) throw std::invalid_argument("bidirected_edge_between: sets overlap");
    for (int u = U.first(); u != -1; u = U.next(u)) {
        VertexSet cand = d.out(u) & d.in(u) & W;
        int w = cand.first();
        if (w != -1) return std::make_pair(u, w);
    }
    return std::nullopt;
}

std::optional<std::pair<int, int>> bidirected_pair_any(const Digraph& d, const VertexSet& A,
                                                       const VertexSet& B) {
    for (int u = A.first(); u != -1; u = A.next(u)) {
        VertexSet cand = d.out(u) & d.in(u) & B;
        int w = cand.first();  // never u: no loops
        if (w != -1) return std::make_pair(u, w);
    }
    return std::nullopt;
}

std::optional<PseudorandomWitness> witness_from_pair(const VertexSet& A, const VertexSet& B, int t) {
    if (t < 1) return std::nullopt;
    int n = A.universe();
    VertexSet overlap = A & B;
    VertexSet au = A - overlap, bu = B - overlap;
    // split the overlap evenly, ascending ids
    int ca = au.count(), cb = bu.count();
    for (int v = overlap.first(); v != -1; v = overlap.next(v)) {
        if (ca <= cb) {
            au.set(v);
            ++ca;
        } else {
            bu.set(v);
            ++cb;
        }
    }
    if (ca < t || cb < t) return std::nullopt;
    PseudorandomWitness w;
    w.U = VertexSet::of(n, au.lowest(t));
    w.W = VertexSet::of(n, bu.lowest(t));
    w.mode = PseudorandomWitness::Mode::bidirected;
    w.t = t;
    return w;
}

std::vector<VertexSet> allocate_disjoint_blocks(const std::vector<VertexSet>& candidates, int cap) {
    std::vector<VertexSet> blocks;
    blocks.reserve(candidates.size());
    if (candidates.empty()) return blocks;
    int n = candidates.front().universe();
    VertexSet taken(n);
    for (const VertexSet& c : candidates) {
        VertexSet b(n);
        int got = 0;
        for (int v = c.first(); v != -1 && got < cap; v = c.next(v)) {
            if (taken.test(v)) continue;
            b.set(v);
            taken.set(v);
            ++got;
        }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

Outcome<std::vector<int>> connecting_path(const Digraph& d, const std::vector<VertexSet>& blocks,
                                          int t) {
    if (blocks.empty()) throw std::invalid_argument("connecting_path: no blocks");
    int n = d.n();
    {
        VertexSet seen(n);
        for (const VertexSet& b : blocks) {
            if (b.intersects(seen)) throw std::invalid_argument("connecting_path: blocks overlap");
            seen |= b;
        }
    }
    size_t l = blocks.size();
    std::vector<VertexSet> frontier(l, VertexSet(n));
    frontier[0] = blocks[0];
    if (frontier[0].empty()) return fail("connecting-path", "first block empty");
    for (size_t i = 0; i + 1 < l; ++i) {
        VertexSet next(n);
        for (int v = blocks[i + 1].first(); v != -1; v = blocks[i + 1].next(v)) {
            VertexSet reach = d.out(v) & d.in(v) & frontier[i];
            if (!reach.empty()) next.set(v);
        }
        int lost = blocks[i + 1].count() - next.count();
        if (lost >= t && frontier[i].count() >= t) {
            VertexSet gap = blocks[i + 1] - next;
            PseudorandomWitness w;
            w.U = VertexSet::of(n, frontier[i].lowest(t));
            w.W = VertexSet::of(n, gap.lowest(t));
            w.mode = PseudorandomWitness::Mode::bidirected;
            w.t = t;
            return fail_with_witness("connecting-path", std::move(w),
                                     "frontier lost " + std::to_string(lost) + " of block " +
                                         std::to_string(i + 2));
        }
        // frontier bound: when no witness fires the i+1-st frontier misses
        // fewer than t members, unless the previous frontier was undersized
        OC_CHECK(lost < t || frontier[i].count() < t, "connecting-path frontier bound");
        if (next.empty())
            return fail("connecting-path",
                        "frontier died at block " + std::to_string(i + 2) + " (blocks undersized)");
        frontier[i + 1] = std::move(next);
    }
    // backward extraction, lowest ids
    std::vector<int> path(l, -1);
    path[l - 1] = frontier[l - 1].first();
    for (size_t i = l - 1; i > 0; --i) {
        VertexSet back = d.out(path[i]) & d.in(path[i]) & frontier[i - 1];
        int v = back.first();
        OC_CHECK(v != -1, "connecting-path backward extraction");
        path[i - 1] = v;
    }
    return path;
}

Outcome<std::vector<int>> long_bidirected_path(const Digraph& d, const VertexSet& forbidden,
                                               int target_len, int t, int start_hint) {
    int n = d.n();
    int avail = n - forbidden.count();
    if (target_len < 1 || target_len > avail)
        throw std::invalid_argument("long_bidirected_path: bad target length");

    VertexSet unvisited = VertexSet::full(n) - forbidden;
    VertexSet finished(n);
    std::vector<int> stack;
    stack.reserve(size_t(target_len));
    int finished_count = 0;
    bool have_snapshot = false;
    VertexSet snap_unvisited, snap_finished;

    int root = (start_hint >= 0 && start_hint < n && unvisited.test(start_hint))
                   ? start_hint
                   : unvisited.first();
    while (root != -1) {
        unvisited.reset(root);
        stack.push_back(root);
        if (int(stack.size()) >= target_len) {
            stack.resize(size_t(target_len));
            return stack;
        }
        while (!stack.empty()) {
            int v = stack.back();
            VertexSet cand = d.out(v) & d.in(v) & unvisited;
            int w = cand.first();
            if (w != -1) {
                unvisited.reset(w);
                stack.push_back(w);
                if (int(stack.size()) >= target_len) return stack;
            } else {
                stack.pop_back();
                finished.set(v);
                ++finished_count;
                if (!have_snapshot && finished_count >= t && unvisited.count() >= t) {
                    snap_unvisited = unvisited;
                    snap_finished = finished;
                    have_snapshot = true;
                }
                // spot-assert of the structural invariant: the lowest
                // unvisited vertex has no bidirected edge into finished
                if ((finished_count & (finished_count - 1)) == 0) {
                    int u0 = unvisited.first();
                    if (u0 != -1)
                        OC_CHECK(!(d.out(u0) & d.in(u0)).intersects(finished),
                                 "dfs unvisited/finished separation");
                }
            }
        }
        root = unvisited.first();
    }

    if (have_snapshot) {
        PseudorandomWitness w;
        w.U = VertexSet::of(n, snap_unvisited.lowest(t));
        w.W = VertexSet::of(n, snap_finished.lowest(t));
        w.mode = PseudorandomWitness::Mode::bidirected;
        w.t = t;
        return fail_with_witness("long-path", std::move(w),
                                 "dfs exhausted below target " + std::to_string(target_len));
    }
    return fail("long-path", "dfs exhausted; instance too small for a witness at t=" +
                                 std::to_string(t));
}

Outcome<std::pair<int, int>> three_edge_connector(const Digraph& d, int v, int v_prime, Sign s1,
                                                  Sign s2, Sign s3, const VertexSet& allowed,
                                                  int t) {
    (void)s2;  // the middle edge is taken bidirected, satisfying either sign
    if (v == v_prime) throw std::invalid_argument("three_edge_connector: v == v'");
    VertexSet b1 = d.nbhd(s1, v) & allowed;
    VertexSet b3 = d.nbhd(flip(s3), v_prime) & allowed;
    b1.reset(v_prime);
    b3.reset(v);
    if (b1.test(v)) b1.reset(v);
    if (b3.test(v_prime)) b3.reset(v_prime);
    if (auto xy = bidirected_pair_any(d, b1, b3)) return *xy;
    if (auto w = witness_from_pair(b1, b3, t))
        return fail_with_witness("three-edge-connector", std::move(*w),
                                 "no bidirected middle edge");
    return fail("three-edge-connector", "no bidirected middle edge; endpoint neighborhoods under t");
}

std::optional<PseudorandomWitness> is_bipseudorandom_exact(const Digraph& d, int t) {
    int n = d.n();
    if (t < 1 || t > n / 2) throw std::invalid_argument("is_bipseudorandom_exact: bad t");
    if (!(n <= 16 || t == 1))
        throw std::invalid_argument("is_bipseudorandom_exact: instance too large (need n <= 16 or t = 1)");

    auto make_witness = [&](const std::vector<int>& us, const std::vector<int>& ws) {
        PseudorandomWitness w;
        w.U = VertexSet::of(n, us);
        w.W = VertexSet::of(n, ws);
        w.mode = PseudorandomWitness::Mode::bidirected;
        w.t = t;
        return w;
    };

    if (t == 1) {
        for (int u = 0; u < n; ++u)
            for (int w = u + 1; w < n; ++w)
                if (!d.has_bidirected(u, w)) return make_witness({u}, {w});
        return std::nullopt;
    }

    // n <= 16: bitmask enumeration with per-vertex bidirected adjacency masks
    std::vector<uint32_t> badj(size_t(n), 0);
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w)
            if (w != u && d.has_bidirected(u, w)) badj[size_t(u)] |= (1u << w);

    std::vector<uint32_t> masks;
    for (uint32_t m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == t) masks.push_back(m);

    auto to_list = [&](uint32_t m) {
        std::vector<int> out;
        for (int v = 0; v < n; ++v)
            if (m & (1u << v)) out.push_back(v);
        return out;
    };

    for (uint32_t mu : masks) {
        uint32_t reach = 0;
        for (int v = 0; v < n; ++v)
            if (mu & (1u << v)) reach |= badj[size_t(v)];
        for (uint32_t mw : masks) {
            if (mw & mu) continue;
            if (!(reach & mw)) return make_witness(to_list(mu), to_list(mw));
        }
    }
    return std::nullopt;
}

std::optional<PseudorandomWitness> falsify_bipseudorandom(const Digraph& d, int t, int samples,
                                                          uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("falsify_bipseudorandom: samples >= 1");
    int n = d.n();
    if (t < 1 || 2 * t > n) throw std::invalid_argument("falsify_bipseudorandom: bad t");
    SplitRng rng(seed);
    std::vector<int> picked;
    for (int s = 0; s < samples; ++s) {
        picked.clear();
        VertexSet u_set(n), w_set(n);
        while (int(picked.size()) < 2 * t) {
            int v = int(rng.next_below(uint64_t(n)));
            if (u_set.test(v) || w_set.test(v)) continue;
            if (int(picked.size()) < t)
                u_set.set(v);
            else
                w_set.set(v);
            picked.push_back(v);
        }
        if (!bidirected_edge_between(d, u_set, w_set)) {
            PseudorandomWitness w;
            w.U = std::move(u_set);
            w.W = std::move(w_set);
            w.mode = PseudorandomWitness::Mode::bidirected;
            w.t = t;
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace oc
