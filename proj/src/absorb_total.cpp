#include "oc/absorb_total.hpp"

#include <algorithm>
#include <cmath>

namespace oc {

std::vector<int> swap_vertices(const OrientationPattern& p) {
    if (p.is_cycle()) throw std::invalid_argument("swap_vertices: path patterns only");
    std::vector<int> out;
    for (int i = 2; i <= p.k() - 1; ++i)
        if (p.sign(i - 1) != p.sign(i)) out.push_back(i);
    return out;
}

int swap_count_in_range(const OrientationPattern& p, int a, int j) {
    int c = 0;
    for (int i = std::max(2, a + 1); i <= std::min(p.k() - 1, j - 1); ++i)
        if (p.sign(i - 1) != p.sign(i)) ++c;
    return c;
}

bool is_compatible(const Digraph& d, int v, int v_prime, const OrientationPattern& p,
                   double alpha) {
    double need = alpha * d.n();
    return approx_ge(d.deg(p.sigma(1, 2), v), need) &&
           approx_ge(d.deg(p.sigma(p.k(), p.k() - 1), v_prime), need);
}

std::pair<VertexSet, VertexSet> partition_by_degree(const Digraph& d, double alpha) {
    int n = d.n();
    double half = alpha * n / 2.0;
    if (2 * alpha * n + 1 > n + 1e-9)
        throw std::invalid_argument("partition_by_degree: 2*alpha*n + 1 <= n required");
    for (int v = 0; v < n; ++v)
        if (!approx_ge(d.total_deg(v), 2 * alpha * n))
            throw std::invalid_argument("partition_by_degree: vertex " + std::to_string(v) +
                                        " has total degree " + std::to_string(d.total_deg(v)) +
                                        " < 2*alpha*n");

    VertexSet uplus(n), uminus(n);
    for (int v = 0; v < n; ++v) {
        if (approx_ge(d.outdeg(v), half)) uplus.set(v);
        if (approx_ge(d.indeg(v), half)) uminus.set(v);
    }
    VertexSet only_plus = uplus - uminus, only_minus = uminus - uplus;

    VertexSet vplus(n), vminus(n);
    if (approx_ge(only_plus.count(), half)) {
        vplus = only_plus;
        vminus = uminus;
    } else if (approx_ge(only_minus.count(), half)) {
        vminus = only_minus;
        vplus = uplus;
    } else {
        VertexSet both = uplus & uminus;
        vplus = only_plus;
        vminus = only_minus;
        bool to_plus = true;  // alternate for a balanced split, ascending ids
        for (int v = both.first(); v != -1; v = both.next(v)) {
            (to_plus ? vplus : vminus).set(v);
            to_plus = !to_plus;
        }
    }
    OC_CHECK(!vplus.intersects(vminus) && (vplus | vminus).count() == n,
             "degree partition must cover V");
    OC_CHECK(approx_ge(vplus.count(), half) && approx_ge(vminus.count(), half),
             "degree partition side sizes");
    return {vplus, vminus};
}

bool Reservoir::verify(const Digraph& d) const {
    int n = d.n();
    int bm = beta_m();
    if (X.count() != m + bm) return false;
    if ((Xplus | Xminus) == X && !Xplus.intersects(Xminus)) {
        if (Xplus.count() < 2 * bm || Xminus.count() < 2 * bm) return false;
    } else
        return false;
    double half = alpha * n / 2.0;
    for (int v = 0; v < n; ++v) {
        if (approx_ge(d.outdeg(v), half) && d.out(v).intersection_count(X) < 2 * bm) return false;
        if (approx_ge(d.indeg(v), half) && d.in(v).intersection_count(X) < 2 * bm) return false;
    }
    for (int v = Xplus.first(); v != -1; v = Xplus.next(v))
        if (!approx_ge(d.outdeg(v), half)) return false;
    for (int v = Xminus.first(); v != -1; v = Xminus.next(v))
        if (!approx_ge(d.indeg(v), half)) return false;
    return true;
}

Outcome<Reservoir> build_reservoir(const Digraph& d, double alpha, double beta, int m,
                                   uint64_t seed, int retries) {
    int n = d.n();
    double bm_real = beta * m;
    int bm = int(std::llround(bm_real));
    if (std::abs(bm_real - bm) > 1e-9 || bm < 1)
        throw std::invalid_argument("build_reservoir: beta*m must be a positive integer");
    int xsize = m + bm;
    if (xsize > n) throw std::invalid_argument("build_reservoir: X larger than V");

    auto [vplus, vminus] = partition_by_degree(d, alpha);

    SplitRng root(seed);
    for (int attempt = 0; attempt < retries; ++attempt) {
        SplitRng rng = root.split(0xe5e4701ull + uint64_t(attempt));
        VertexSet cand(n);
        int got = 0;
        while (got < xsize) {
            int v = int(rng.next_below(uint64_t(n)));
            if (cand.test(v)) continue;
            cand.set(v);
            ++got;
        }
        Reservoir r;
        r.X = cand;
        r.Xplus = cand & vplus;
        r.Xminus = cand & vminus;
        r.Xlist = cand.to_vector();
        r.alpha = alpha;
        r.beta = beta;
        r.m = m;
        if (r.verify(d)) return r;
    }
    return fail("reservoir", "no valid reservoir in " + std::to_string(retries) + " samples");
}

Outcome<std::vector<int>> link_through_reservoir(const Digraph& d, const Reservoir& res, int v,
                                                 int v_prime, const OrientationPattern& p,
                                                 const VertexSet& U, int t, int block_cap) {
    int k = p.k();
    int bm = res.beta_m();
    if (k < 4) throw std::invalid_argument("link: pattern shorter than 4");
    if (v == v_prime) throw std::invalid_argument("link: v == v'");
    if (res.X.test(v) || res.X.test(v_prime)) throw std::invalid_argument("link: endpoints in X");
    if (double(U.count() + k) > 1.5 * double(bm) + 1e-9)
        throw std::invalid_argument("link: |U| + k exceeds (3/2) beta m");
    if (!is_compatible(d, v, v_prime, p, res.alpha / 2))
        throw std::invalid_argument("link: endpoints not (alpha/2)-compatible with pattern");

    std::vector<int> verts{v};
    VertexSet avoid = U;
    avoid.set(v);
    avoid.set(v_prime);

    auto extend_two = [&](int cur_pos) -> std::optional<FailureReport> {
        // one step: realize (u_cur, u_cur+1, u_cur+2) with a bidirected pair
        VertexSet b1 = (d.nbhd(p.sigma(cur_pos, cur_pos + 1), verts.back()) & res.X) - avoid;
        VertexSet b2 = res.side(p.sigma(cur_pos + 2, cur_pos + 3)) - avoid;
        if (auto xy = bidirected_pair_any(d, b1, b2)) {
            avoid.set(xy->first);
            avoid.set(xy->second);
            verts.push_back(xy->first);
            verts.push_back(xy->second);
            return std::nullopt;
        }
        if (auto w = witness_from_pair(b1, b2, t))
            return fail_with_witness("link", std::move(*w), "no bidirected pair inside X");
        return fail("link", "no bidirected pair inside X and sides below t");
    };

    int cur = 1;
    int stop = (k % 2 == 0) ? k - 3 : k - 4;
    while (cur < stop) {
        if (auto f = extend_two(cur)) return std::move(*f);
        cur += 2;
    }

    if (k % 2 == 0) {
        VertexSet b1 = (d.nbhd(p.sigma(k - 3, k - 2), verts.back()) & res.X) - avoid;
        VertexSet b2 = (d.nbhd(p.sigma(k, k - 1), v_prime) & res.X) - avoid;
        auto xy = bidirected_pair_any(d, b1, b2);
        if (!xy) {
            if (auto w = witness_from_pair(b1, b2, t))
                return fail_with_witness("link", std::move(*w), "no closing bidirected pair");
            return fail("link", "no closing bidirected pair and sides below t");
        }
        verts.push_back(xy->first);
        verts.push_back(xy->second);
        verts.push_back(v_prime);
    } else {
        std::vector<VertexSet> cands;
        cands.push_back((d.nbhd(p.sigma(k - 4, k - 3), verts.back()) & res.X) - avoid);
        cands.push_back(res.X - avoid);
        cands.push_back((d.nbhd(p.sigma(k, k - 1), v_prime) & res.X) - avoid);
        auto blocks = allocate_disjoint_blocks(cands, std::max(block_cap, 2 * t));
        auto path3 = connecting_path(d, blocks, t);
        if (!path3) return std::move(path3).take_failure();
        for (int w : path3.value()) verts.push_back(w);
        verts.push_back(v_prime);
    }
    OC_CHECK(int(verts.size()) == k, "link length");
    return verts;
}

Outcome<Embedding> chain_absorb(const Digraph& d, const Reservoir& res, const VertexSet& R, int v,
                                int v_prime, const OrientationPattern& p, int t, int block_cap) {
    int n = d.n();
    int k = p.k();
    int l = R.count();
    int bm = res.beta_m();
    if (l < 2 || !R.test(v) || !R.test(v_prime) || v == v_prime)
        throw std::invalid_argument("chain_absorb: R must contain distinct v, v'");
    if (R.intersects(res.X)) throw std::invalid_argument("chain_absorb: R meets X");
    if (k - l > bm) throw std::invalid_argument("chain_absorb: X budget exceeds beta*m");
    if (2 * k > 3 * bm) throw std::invalid_argument("chain_absorb: pattern exceeds (3/2) beta m");
    if (!is_compatible(d, v, v_prime, p, res.alpha / 2))
        throw std::invalid_argument("chain_absorb: (v,v') not (alpha/2)-compatible");
    int swaps = swap_count_in_range(p, 1, k);
    if (swaps < 4 * l - 6)
        return fail("chain", "pattern has " + std::to_string(swaps) + " swap vertices, needs " +
                                 std::to_string(4 * l - 6));

    // R ordered: v, middles ascending, v'
    std::vector<int> order{v};
    for (int w = R.first(); w != -1; w = R.next(w))
        if (w != v && w != v_prime) order.push_back(w);
    order.push_back(v_prime);

    // cut positions: i_1 = 1, i_l = k, middles at swap vertices whose
    // outgoing sign matches the heavy side of the vertex parked there
    double need = res.alpha * n;
    std::vector<int> cut(size_t(l), 0);
    cut[0] = 1;
    cut[size_t(l - 1)] = k;
    int prev = 1;
    for (int j = 2; j <= l - 1; ++j) {
        int vj = order[size_t(j - 1)];
        Sign strong;
        if (approx_ge(d.outdeg(vj), need))
            strong = Sign::plus;
        else if (approx_ge(d.indeg(vj), need))
            strong = Sign::minus;
        else
            return fail("chain", "vertex " + std::to_string(vj) + " has no side of degree >= alpha*n");
        int pick = -1;
        for (int i = prev + 3; i <= k - 3 * (l - j); ++i) {
            bool swap_here = p.sign(i - 1) != p.sign(i);
            if (swap_here && p.sign(i) == (strong == Sign::plus ? Sign::plus : Sign::minus)) {
                pick = i;
                break;
            }
        }
        if (pick == -1)
            return fail("chain", "no admissible swap vertex for chain position " + std::to_string(j));
        cut[size_t(j - 1)] = pick;
        prev = pick;
    }
    if (l >= 3 && k - cut[size_t(l - 2)] < 3)
        return fail("chain", "final chain gap shorter than 3");

    std::vector<int> verts;
    VertexSet used_x(n);
    for (int j = 1; j <= l - 1; ++j) {
        auto pj = subpattern(p, cut[size_t(j - 1)], cut[size_t(j)]);
        auto q = link_through_reservoir(d, res, order[size_t(j - 1)], order[size_t(j)], pj, used_x,
                                        t, block_cap);
        if (!q) return std::move(q).take_failure();
        const auto& seg = q.value();
        for (size_t idx = 1; idx + 1 < seg.size(); ++idx) used_x.set(seg[idx]);
        if (j == 1)
            verts = seg;
        else
            verts.insert(verts.end(), seg.begin() + 1, seg.end());
    }

    Embedding e{p, std::move(verts)};
    OC_CHECK(int(e.verts.size()) == k, "chain length");
    OC_CHECK(verify_embedding(d, e), "chain produced an invalid copy");
    VertexSet cover = VertexSet::of(n, e.verts);
    OC_CHECK(R.is_subset_of(cover), "chain must cover R");
    OC_CHECK((cover - R).is_subset_of(res.X), "chain excess must come from X");
    return e;
}

Outcome<std::vector<int>> long_path_with_degrees(const Digraph& d, const VertexSet& U, int k,
                                                 Sign star1, Sign star2, double alpha, int t) {
    int n = d.n();
    if (k < 2) throw std::invalid_argument("long_path_with_degrees: k >= 2");
    auto [vplus, vminus] = partition_by_degree(d, alpha);
    VertexSet sides[2] = {vplus - U, vminus - U};
    auto side_of = [&](Sign s) -> VertexSet& { return sides[s == Sign::plus ? 0 : 1]; };

    auto grow = [&](Sign s) -> Outcome<std::vector<int>> {
        const VertexSet& pool = side_of(s);
        int avail = pool.count();
        int target = std::max(1, avail - 2 * t);
        if (avail < 1) return fail("long-path-degrees", "degree class empty after exclusions");
        return long_bidirected_path(d, VertexSet::full(n) - pool, target, t);
    };

    auto qa = grow(star1);
    if (!qa) return std::move(qa).take_failure();
    std::vector<int> A = qa.value();

    if (star1 == star2) {
        if (k <= int(A.size())) {
            A.resize(size_t(k));
            return A;
        }
        auto qb = grow(flip(star1));
        if (!qb) return std::move(qb).take_failure();
        const std::vector<int>& B0 = qb.value();
        int b_need = k - int(A.size()) + 4 * t;
        if (int(B0.size()) < b_need || int(A.size()) < 2 * t || b_need < 2 * t)
            return fail("long-path-degrees", "side paths too short to stitch");
        std::vector<int> B(B0.begin(), B0.begin() + b_need);

        auto window = [&](const std::vector<int>& path, int from, int cnt) {
            VertexSet s(n);
            for (int i = from; i < from + cnt; ++i) s.set(path[size_t(i)]);
            return s;
        };
        auto pos_in = [&](const std::vector<int>& path, int vtx) {
            for (size_t i = 0; i < path.size(); ++i)
                if (path[i] == vtx) return int(i);
            return -1;
        };

        auto e1 = bidirected_edge_between(d, window(B, 0, t), window(A, 0, t));
        if (!e1) {
            PseudorandomWitness w;
            w.U = window(B, 0, t);
            w.W = window(A, 0, t);
            w.mode = PseudorandomWitness::Mode::bidirected;
            w.t = t;
            return fail_with_witness("long-path-degrees", std::move(w), "no stitch edge e1");
        }
        auto e2 = bidirected_edge_between(d, window(B, int(B.size()) - t, t), window(A, t, t));
        if (!e2) {
            PseudorandomWitness w;
            w.U = window(B, int(B.size()) - t, t);
            w.W = window(A, t, t);
            w.mode = PseudorandomWitness::Mode::bidirected;
            w.t = t;
            return fail_with_witness("long-path-degrees", std::move(w), "no stitch edge e2");
        }
        int x = pos_in(B, e1->first), y = pos_in(A, e1->second);
        int x2 = pos_in(B, e2->first), y2 = pos_in(A, e2->second);
        OC_CHECK(y < y2 && x < x2, "stitch positions ordered");
        // A tail down to y2, B reversed from x2 to x, A head from y down to 0
        std::vector<int> out;
        for (int i = int(A.size()) - 1; i >= y2; --i) out.push_back(A[size_t(i)]);
        for (int i = x2; i >= x; --i) out.push_back(B[size_t(i)]);
        for (int i = y; i >= 0; --i) out.push_back(A[size_t(i)]);
        if (int(out.size()) < k) return fail("long-path-degrees", "stitched path under k");
        int drop = int(out.size()) - k;
        int head_len = int(A.size()) - y2;
        if (drop >= head_len) return fail("long-path-degrees", "cannot truncate inside one class");
        out.erase(out.begin(), out.begin() + drop);
        return out;
    }

    // star1 != star2: jump from the tail of the star1-path to the head of
    // the star2-path
    auto qb = grow(star2);
    if (!qb) return std::move(qb).take_failure();
    const std::vector<int>& B = qb.value();
    if (int(A.size()) < t || int(B.size()) < t)
        return fail("long-path-degrees", "side paths shorter than t");

    auto window = [&](const std::vector<int>& path, int from, int cnt) {
        VertexSet s(n);
        for (int i = from; i < from + cnt; ++i) s.set(path[size_t(i)]);
        return s;
    };
    auto e = bidirected_edge_between(d, window(A, int(A.size()) - t, t), window(B, 0, t));
    if (!e) {
        PseudorandomWitness w;
        w.U = window(A, int(A.size()) - t, t);
        w.W = window(B, 0, t);
        w.mode = PseudorandomWitness::Mode::bidirected;
        w.t = t;
        return fail_with_witness("long-path-degrees", std::move(w), "no junction edge");
    }
    int i = -1, j = -1;
    for (size_t idx = 0; idx < A.size(); ++idx)
        if (A[idx] == e->first) i = int(idx);
    for (size_t idx = 0; idx < B.size(); ++idx)
        if (B[idx] == e->second) j = int(idx);
    int a_avail = i + 1, b_avail = int(B.size()) - j;
    if (a_avail + b_avail < k) return fail("long-path-degrees", "joined path under k");
    int a_cnt = std::min(a_avail, k - 1);
    int b_cnt = k - a_cnt;
    if (b_cnt > b_avail) {
        b_cnt = b_avail;
        a_cnt = k - b_cnt;
        if (a_cnt > a_avail) return fail("long-path-degrees", "window infeasible");
    }
    std::vector<int> out;
    for (int idx = i + 1 - a_cnt; idx <= i; ++idx) out.push_back(A[size_t(idx)]);
    for (int idx = j; idx < j + b_cnt; ++idx) out.push_back(B[size_t(idx)]);
    return out;
}

std::vector<int> LocalAbsorberTotal::own_vertices() const {
    std::vector<int> out;
    out.reserve(spine.size() + 2);
    out.push_back(v);
    out.insert(out.end(), spine.begin(), spine.end());
    out.push_back(v_prime);
    return out;
}

Outcome<LocalAbsorberTotal> build_local_absorber_total(const Digraph& d,
                                                       const OrientationPattern& segment, int v,
                                                       int v_prime, const std::vector<int>& S,
                                                       int z, const VertexSet& forbidden,
                                                       double alpha, int t, int block_cap) {
    int n = d.n();
    int k = segment.k();
    int l = int(S.size());
    if (k < 3 * l + 9)
        throw std::invalid_argument("local absorber: segment needs at least 3|S|+9 vertices");
    if (v == v_prime || v == z || v_prime == z)
        throw std::invalid_argument("local absorber: v, v', z must be distinct");
    if (!is_compatible(d, v, v_prime, segment, alpha))
        throw std::invalid_argument("local absorber: (v,v') not alpha-compatible with segment");

    double need = alpha * n;
    std::vector<int> anchors = S;
    anchors.push_back(z);
    std::vector<Sign> star(size_t(l + 1));
    for (int j = 0; j <= l; ++j) {
        int a = anchors[size_t(j)];
        if (approx_ge(d.outdeg(a), need))
            star[size_t(j)] = Sign::plus;
        else if (approx_ge(d.indeg(a), need))
            star[size_t(j)] = Sign::minus;
        else
            return fail("local-absorber-total",
                        "anchor " + std::to_string(a) + " has no side of degree >= alpha*n");
    }

    // pick l+1 typed swap vertices: gaps >= 2, a 3-gap before the z slot,
    // all inside [4, k-3]
    std::vector<int> picks(size_t(l + 1), 0);
    int prev = 2;
    for (int j = 1; j <= l + 1; ++j) {
        int min_gap = (j == l + 1) ? 3 : 2;
        Sign want = star[size_t(j - 1)];  // d_P^{want}(u_i) = 2
        int pick = -1;
        for (int i = std::max(4, prev + min_gap); i <= k - 3; ++i) {
            if (segment.sign(i - 1) == segment.sign(i)) continue;  // not a swap vertex
            // outdegree 2 in P: both edges leave u_i, i.e. sign(i-1) = -, sign(i) = +
            Sign outward = segment.sign(i);
            if ((want == Sign::plus && outward == Sign::plus) ||
                (want == Sign::minus && outward == Sign::minus)) {
                pick = i;
                break;
            }
        }
        if (pick == -1)
            return fail("local-absorber-total",
                        "could not place slot " + std::to_string(j) + " on a typed swap vertex");
        picks[size_t(j - 1)] = pick;
        prev = pick;
    }

    VertexSet excluded = forbidden;
    excluded.set(v);
    excluded.set(v_prime);
    excluded.set(z);
    for (int s : S) excluded.set(s);

    int nblocks = k - 4;
    std::vector<VertexSet> cands(size_t(nblocks));
    std::vector<int> source(size_t(nblocks), -1);
    VertexSet rest = VertexSet::full(n) - excluded;
    for (int i = 0; i < nblocks; ++i) cands[size_t(i)] = rest;

    auto set_block = [&](int idx1, Sign s, int anchor) {
        cands[size_t(idx1 - 1)] = d.nbhd(s, anchor) - excluded;
        source[size_t(idx1 - 1)] = anchor;
    };
    set_block(1, segment.sigma(1, 2), v);
    for (int j = 1; j <= l; ++j) {
        set_block(picks[size_t(j - 1)] - 2, star[size_t(j - 1)], anchors[size_t(j - 1)]);
        set_block(picks[size_t(j - 1)] - 1, star[size_t(j - 1)], anchors[size_t(j - 1)]);
    }
    set_block(picks[size_t(l)] - 3, star[size_t(l)], z);
    set_block(picks[size_t(l)] - 2, star[size_t(l)], z);
    set_block(k - 4, segment.sigma(k, k - 1), v_prime);

    for (int i = 0; i < nblocks; ++i)
        if (cands[size_t(i)].count() < 2 * t)
            return fail("local-absorber-total",
                        "neighborhood of vertex " +
                            std::to_string(source[size_t(i)] == -1 ? -1 : source[size_t(i)]) +
                            " too small (block " + std::to_string(i + 1) + ")");

    auto blocks = allocate_disjoint_blocks(cands, std::max(block_cap, 2 * t));
    auto path = connecting_path(d, blocks, t);
    if (!path) return std::move(path).take_failure();

    LocalAbsorberTotal a;
    a.segment = segment;
    a.v = v;
    a.v_prime = v_prime;
    a.z = z;
    a.z_pos = picks[size_t(l)];
    a.spine = path.value();
    a.slots = S;
    for (int j = 1; j <= l; ++j) a.slot_pos[S[size_t(j - 1)]] = picks[size_t(j - 1)];
    OC_CHECK(int(a.spine.size()) == nblocks, "local total spine length");
    return a;
}

Embedding activate_local_total(const LocalAbsorberTotal& a, int s) {
    auto it = a.slot_pos.find(s);
    if (it == a.slot_pos.end())
        throw std::invalid_argument("activate_local_total: vertex " + std::to_string(s) +
                                    " is not a registered slot");
    int i = it->second, zp = a.z_pos;
    int k = a.segment.k();
    std::vector<int> verts;
    verts.reserve(size_t(k));
    verts.push_back(a.v);
    for (int idx = 0; idx <= i - 3; ++idx) verts.push_back(a.spine[size_t(idx)]);
    verts.push_back(s);
    for (int idx = i - 2; idx <= zp - 4; ++idx) verts.push_back(a.spine[size_t(idx)]);
    verts.push_back(a.z);
    for (int idx = zp - 3; idx <= k - 5; ++idx) verts.push_back(a.spine[size_t(idx)]);
    verts.push_back(a.v_prime);
    return Embedding{a.segment, std::move(verts)};
}

Outcome<std::vector<int>> connect_copy(const Digraph& d, const OrientationPattern& p, int from,
                                       int to, const VertexSet& forbidden, int t, int block_cap) {
    int k = p.k();
    if (from == to) throw std::invalid_argument("connect_copy: equal endpoints");
    VertexSet excluded = forbidden;
    excluded.set(from);
    excluded.set(to);

    if (k == 2) {
        bool ok = (p.sign(1) == Sign::plus) ? d.has_edge(from, to) : d.has_edge(to, from);
        if (!ok) return fail("connect-copy", "required edge absent");
        return std::vector<int>{from, to};
    }
    int n = d.n();
    std::vector<VertexSet> cands;
    if (k == 3) {
        cands.push_back((d.nbhd(p.sigma(1, 2), from) & d.nbhd(p.sigma(3, 2), to)) - excluded);
    } else {
        cands.push_back(d.nbhd(p.sigma(1, 2), from) - excluded);
        for (int i = 0; i < k - 4; ++i) cands.push_back(VertexSet::full(n) - excluded);
        cands.push_back(d.nbhd(p.sigma(k, k - 1), to) - excluded);
    }
    auto blocks = allocate_disjoint_blocks(cands, std::max(block_cap, 2 * t));
    auto path = connecting_path(d, blocks, t);
    if (!path) return std::move(path).take_failure();
    std::vector<int> out{from};
    for (int w : path.value()) out.push_back(w);
    out.push_back(to);
    OC_CHECK(int(out.size()) == k, "connect_copy length");
    return out;
}

int TotalParams::beta_m() const {
    double bm = beta * m;
    int r_ = int(std::llround(bm));
    if (std::abs(bm - r_) > 1e-9) throw std::invalid_argument("TotalParams: beta*m not an integer");
    return r_;
}

void TotalParams::validate() const {
    if (m < 1 || t < 1 || r < 2) throw std::invalid_argument("TotalParams: m,t >= 1 and r >= 2");
    int bm = beta_m();
    if (bm < 3 * r)
        throw std::invalid_argument("TotalParams: beta*m must be >= 3r so the absorbing piece has room");
    if (beta > 1.0 / 3.0 + 1e-12)
        throw std::invalid_argument("TotalParams: beta <= 1/3 (reservoir split needs 4*beta*m <= |X|)");
    if (segment_len < 129)
        throw std::invalid_argument("TotalParams: segment_len >= 129 (hosts 40 slots, 127 swaps)");
    if (ell() < 4) throw std::invalid_argument("TotalParams: ell < 4");
}

Outcome<GlobalAbsorberTotal> build_global_absorber_total(const Digraph& d,
                                                         const OrientationPattern& P,
                                                         const TotalParams& params,
                                                         uint64_t seed) {
    params.validate();
    int n = d.n();
    int k = P.k();
    int m = params.m, t = params.t, r = params.r;
    int p = params.segment_len;
    int ell = params.ell();

    // segmentation: scan j ascending until the absorbing piece has enough
    // swap vertices and pieces 0..s contain 3m good ones
    std::vector<char> good_at;  // piece i good: segment (ip+5 .. (i+1)p+4)
    {
        int max_pieces = std::max(0, (k - 8) / p);
        good_at.assign(size_t(max_pieces), 0);
        for (int i = 0; i < max_pieces; ++i)
            good_at[size_t(i)] =
                swap_count_in_range(P, i * p + 5, (i + 1) * p + 4) >= 3 * 40 + 7 ? 1 : 0;
    }
    int j = -1, s = -1, goods = 0;
    for (int cand = 4; cand <= k - 4 - ell; ++cand) {
        int s_cand = (cand - 8) / p - 1;
        if (s_cand + 1 < 3 * m) continue;
        if (swap_count_in_range(P, cand + 1, cand + ell) < 4 * r - 6) continue;
        int g = 0;
        for (int i = 0; i <= s_cand; ++i) g += good_at[size_t(i)];
        if (g < 3 * m) continue;
        j = cand;
        s = s_cand;
        goods = g;
        break;
    }
    if (j == -1)
        return fail("segmentation", "no cut index j with enough swap vertices and good pieces");

    GlobalAbsorberTotal gab;
    gab.pattern = P;
    gab.params = params;
    gab.seg.k = k;
    gab.seg.j = j;
    gab.seg.ell = ell;
    gab.seg.r = r;
    gab.seg.p = p;
    gab.seg.s = s;
    gab.seg.good.assign(good_at.begin(), good_at.begin() + (s + 1));
    gab.seg.good_count = goods;

    SplitRng root(seed);
    auto res = build_reservoir(d, params.alpha, params.beta, m, root.split(1).next_u64(),
                               params.retries);
    if (!res) return std::move(res).take_failure();
    gab.res = std::move(res.value());

    VertexSet core = gab.res.X;
    VertexSet restpool = VertexSet::full(n) - core;
    gab.Y = restpool.lowest(2 * m);
    for (int y : gab.Y) restpool.reset(y);
    gab.Z = restpool.lowest(3 * m);
    OC_CHECK(int(gab.Y.size()) == 2 * m && int(gab.Z.size()) == 3 * m,
             "total absorber: not enough vertices for Y and Z");
    for (int y : gab.Y) core.set(y);
    for (int z : gab.Z) core.set(z);

    try {
        gab.tpl = build_template(m, params.beta, root.split(2).next_u64());
    } catch (const std::exception& e) {
        return fail("template", e.what());
    }

    // degree classes away from X u Y u Z, then the anchor pairs
    auto [vplus_all, vminus_all] = partition_by_degree(d, params.alpha);
    VertexSet vplus = vplus_all - core, vminus = vminus_all - core;
    auto side_set = [&](Sign sg) -> VertexSet& { return sg == Sign::plus ? vplus : vminus; };

    VertexSet used = core;
    gab.w.assign(size_t(s + 3), -1);
    gab.w_prime.assign(size_t(s + 3), -1);
    for (int i = 0; i <= s + 2; ++i) {
        int pos_a = (i <= s + 1) ? i * p + 4 : j;
        int pos_b = pos_a + 1;
        Sign sa = P.sigma(pos_a, pos_a - 1);
        Sign sb = P.sigma(pos_b, pos_b + 1);
        VertexSet ca = side_set(sa) - used;
        VertexSet cb = side_set(sb) - used;
        auto e = bidirected_pair_any(d, ca, cb);
        if (!e) {
            if (auto w = witness_from_pair(ca, cb, t))
                return fail_with_witness("anchors", std::move(*w),
                                         "no bidirected anchor pair " + std::to_string(i));
            return fail("anchors", "no bidirected anchor pair " + std::to_string(i));
        }
        gab.w[size_t(i)] = e->first;
        gab.w_prime[size_t(i)] = e->second;
        used.set(e->first);
        used.set(e->second);
    }

    // a distinct good piece for every z, lowest indices first
    gab.assigned.assign(size_t(3 * m), -1);
    {
        int next_good = 0;
        for (int zi = 0; zi < 3 * m; ++zi) {
            while (next_good <= s && !gab.seg.good[size_t(next_good)]) ++next_good;
            OC_CHECK(next_good <= s, "ran out of good pieces");
            gab.assigned[size_t(zi)] = next_good++;
        }
    }

    std::vector<int> piece_of(size_t(s + 1), -1);  // piece -> z index
    for (int zi = 0; zi < 3 * m; ++zi) piece_of[size_t(gab.assigned[size_t(zi)])] = zi;

    auto left_vertex = [&](int lidx) {
        return lidx < gab.tpl.nx ? gab.res.Xlist[size_t(lidx)] : gab.Y[size_t(lidx - gab.tpl.nx)];
    };

    for (int zi = 0; zi < 3 * m; ++zi) {
        int piece = gab.assigned[size_t(zi)];
        std::vector<int> slots;
        for (int lidx : gab.tpl.adj[size_t(zi)]) slots.push_back(left_vertex(lidx));
        std::sort(slots.begin(), slots.end());
        auto segp = subpattern(P, piece * p + 5, (piece + 1) * p + 4);
        auto local = build_local_absorber_total(d, segp, gab.w_prime[size_t(piece)],
                                                gab.w[size_t(piece + 1)], slots, gab.Z[size_t(zi)],
                                                used, params.alpha / 2, t, params.block_cap);
        if (!local) {
            auto f = std::move(local).take_failure();
            f.detail = "local absorber for z" + std::to_string(zi + 1) + ": " + f.detail;
            return f;
        }
        for (int w : local.value().spine) used.set(w);
        gab.locals.push_back(std::move(local.value()));
    }

    for (int i = 0; i <= s; ++i) {
        if (piece_of[size_t(i)] != -1) continue;
        auto segp = subpattern(P, i * p + 5, (i + 1) * p + 4);
        auto q = connect_copy(d, segp, gab.w_prime[size_t(i)], gab.w[size_t(i + 1)], used, t,
                              params.block_cap);
        if (!q) return std::move(q).take_failure();
        for (size_t idx = 1; idx + 1 < q.value().size(); ++idx) used.set(q.value()[idx]);
        gab.fillers[i] = std::move(q.value());
    }

    {
        auto segp = subpattern(P, (s + 1) * p + 5, j);
        auto q = connect_copy(d, segp, gab.w_prime[size_t(s + 1)], gab.w[size_t(s + 2)], used, t,
                              params.block_cap);
        if (!q) return std::move(q).take_failure();
        for (size_t idx = 1; idx + 1 < q.value().size(); ++idx) used.set(q.value()[idx]);
        gab.q1_tail = std::move(q.value());
    }

    // A1 accounting: pieces, tail, anchors; |A1| = j - 6m - 2
    VertexSet a1(n);
    a1.set(gab.w[0]);
    for (const auto& la : gab.locals)
        for (int w : la.own_vertices()) a1.set(w);
    for (const auto& [i, fv] : gab.fillers)
        for (int w : fv) a1.set(w);
    for (int w : gab.q1_tail) a1.set(w);
    for (int i = 1; i <= s + 1; ++i) {
        a1.set(gab.w[size_t(i)]);
        a1.set(gab.w_prime[size_t(i)]);
    }
    a1.set(gab.w_prime[size_t(s + 2)]);
    OC_CHECK(a1.count() == j - 6 * m - 2, "A1 size identity |A1| = |V(P1)| - 6m");

    int q3_len = k - j - ell - 2;
    VertexSet q3_avoid = core | a1;
    q3_avoid.set(gab.w[size_t(s + 2)]);
    auto q3 = long_path_with_degrees(d, q3_avoid, q3_len, P.sigma(j + ell, j + ell - 1),
                                     P.sigma(k - 3, k - 2), params.alpha, t);
    if (!q3) return std::move(q3).take_failure();
    gab.q3 = std::move(q3.value());

    gab.A = core | a1;
    for (int w : gab.q3) gab.A.set(w);
    OC_CHECK(gab.A.count() == k - r, "global absorber size identity |A| = k - r");
    return gab;
}

Outcome<Embedding> activate_global_total(const Digraph& d, const GlobalAbsorberTotal& gab,
                                         const VertexSet& R, int v, int v_prime) {
    int n = d.n();
    int k = gab.k();
    const OrientationPattern& P = gab.pattern;
    const auto& seg = gab.seg;
    int m = gab.params.m, t = gab.params.t;
    if (R.intersects(gab.A)) throw std::invalid_argument("activate: R meets A");
    if (R.count() != gab.leftover_size())
        throw std::invalid_argument("activate: |R| must be " + std::to_string(gab.leftover_size()));
    if (v == v_prime || !R.test(v) || !R.test(v_prime))
        throw std::invalid_argument("activate: v, v' must be distinct members of R");
    if (!is_compatible(d, v, v_prime, P, gab.params.alpha / 2))
        throw std::invalid_argument("activate: (v,v') not (alpha/2)-compatible with P");

    int w_last_prime = gab.w_prime[size_t(seg.s + 2)];
    int q3_start = gab.q3.front(), q3_end = gab.q3.back();

    VertexSet r2 = R;
    r2.reset(v);
    r2.reset(v_prime);
    r2.set(w_last_prime);
    r2.set(q3_start);
    auto p2 = subpattern(P, seg.j + 1, seg.j + seg.ell);
    auto q2 = chain_absorb(d, gab.res, r2, w_last_prime, q3_start, p2, t, gab.params.block_cap);
    if (!q2) return std::move(q2).take_failure();

    VertexSet used_x = VertexSet::of(n, q2.value().verts) & gab.res.X;
    auto q0 = link_through_reservoir(d, gab.res, v, gab.w[0], subpattern(P, 1, 4), used_x, t,
                                     gab.params.block_cap);
    if (!q0) return std::move(q0).take_failure();
    for (size_t i = 1; i + 1 < q0.value().size(); ++i) used_x.set(q0.value()[i]);
    auto q4 = link_through_reservoir(d, gab.res, q3_end, v_prime, subpattern(P, k - 3, k), used_x,
                                     t, gab.params.block_cap);
    if (!q4) return std::move(q4).take_failure();
    for (size_t i = 1; i + 1 < q4.value().size(); ++i) used_x.set(q4.value()[i]);

    VertexSet x_left = gab.res.X - used_x;
    OC_CHECK(x_left.count() == m, "activation: |X'| = m");
    std::vector<int> x_prime_idx;
    for (int idx = 0; idx < int(gab.res.Xlist.size()); ++idx)
        if (x_left.test(gab.res.Xlist[size_t(idx)])) x_prime_idx.push_back(idx);

    auto match = robust_matching(gab.tpl, x_prime_idx);
    if (!match)
        return fail("robust-matching",
                    "template failed to match X'; regenerate the template with a new seed");

    // P1: anchors alternate with activated locals and fillers
    std::vector<int> piece_seq;  // positions 4 .. j+1
    piece_seq.push_back(gab.w[0]);
    std::vector<int> z_of_piece(size_t(seg.s + 1), -1);
    for (int zi = 0; zi < 3 * m; ++zi) z_of_piece[size_t(gab.assigned[size_t(zi)])] = zi;
    for (int i = 0; i <= seg.s; ++i) {
        int zi = z_of_piece[size_t(i)];
        if (zi >= 0) {
            int lidx = (*match)[size_t(zi)];
            int partner = lidx < gab.tpl.nx ? gab.res.Xlist[size_t(lidx)]
                                            : gab.Y[size_t(lidx - gab.tpl.nx)];
            Embedding qi = activate_local_total(gab.locals[size_t(zi)], partner);
            OC_CHECK(qi.verts.front() == gab.w_prime[size_t(i)] &&
                         qi.verts.back() == gab.w[size_t(i + 1)],
                     "activation: local endpoints");
            piece_seq.insert(piece_seq.end(), qi.verts.begin(), qi.verts.end());
        } else {
            const auto& f = gab.fillers.at(i);
            piece_seq.insert(piece_seq.end(), f.begin(), f.end());
        }
    }
    piece_seq.insert(piece_seq.end(), gab.q1_tail.begin(), gab.q1_tail.end());
    piece_seq.push_back(w_last_prime);
    OC_CHECK(int(piece_seq.size()) == seg.j - 2, "activation: P1 copy length");

    std::vector<int> verts = q0.value();              // positions 1..4
    verts.insert(verts.end(), piece_seq.begin() + 1, piece_seq.end());  // 5..j+1
    verts.insert(verts.end(), q2.value().verts.begin() + 1, q2.value().verts.end());  // ..j+ell
    verts.insert(verts.end(), gab.q3.begin() + 1, gab.q3.end());        // ..k-3
    verts.insert(verts.end(), q4.value().begin() + 1, q4.value().end());  // ..k

    Embedding e{P, std::move(verts)};
    OC_CHECK(int(e.verts.size()) == k, "activation: copy length");
    OC_CHECK(verify_embedding(d, e), "activation produced an invalid copy");
    VertexSet cover = VertexSet::of(n, e.verts);
    OC_CHECK(cover == (gab.A | R), "activation must cover exactly A u R");
    return e;
}

}  // namespace oc
