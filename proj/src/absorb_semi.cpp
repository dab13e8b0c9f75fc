#include "oc/absorb_semi.hpp"

#include <algorithm>
#include <cmath>

namespace oc {

int SemiParams::beta_m() const {
    double bm = beta * m;
    int r = int(std::llround(bm));
    if (std::abs(bm - r) > 1e-9) throw std::invalid_argument("SemiParams: beta*m not an integer");
    return r;
}

int SemiParams::min_pattern_len() const {
    return absorber_size() + std::max(2, 6 * t + 9 - beta_m());
}

void SemiParams::validate(int n) const {
    if (m < 1) throw std::invalid_argument("SemiParams: m >= 1");
    if (t < 1) throw std::invalid_argument("SemiParams: t >= 1");
    int bm = beta_m();
    if (bm < 4 * t + 6)
        throw std::invalid_argument("SemiParams: beta*m must be at least 4t+6 to leave connector room");
    if ((1 + beta) * m < 2 * bm + 2)
        throw std::invalid_argument("SemiParams: |X| below the degree property threshold 2*beta*m+2");
    if (n < absorber_size() + std::max(2, 6 * t + 9 - bm))
        throw std::invalid_argument("SemiParams: n too small for the absorber plus a leftover set");
}

std::vector<int> LocalAbsorberSemi::own_vertices() const {
    std::vector<int> out;
    out.reserve(spine.size() + 1);
    out.push_back(v);
    out.insert(out.end(), spine.begin(), spine.end());
    return out;
}

Outcome<LocalAbsorberSemi> build_local_absorber_semi(const Digraph& d,
                                                     const OrientationPattern& segment, int v,
                                                     const std::vector<int>& S, int z,
                                                     const VertexSet& forbidden, int t,
                                                     int block_cap) {
    int k = int(S.size());
    if (segment.k() != 2 * k + 5)
        throw std::invalid_argument("local absorber: segment must have 2|S|+5 vertices");
    if (v == z) throw std::invalid_argument("local absorber: v == z");
    for (int s : S)
        if (s == v || s == z) throw std::invalid_argument("local absorber: S meets {v,z}");

    int n = d.n();
    VertexSet excluded = forbidden;
    excluded.set(v);
    excluded.set(z);
    for (int s : S) excluded.set(s);

    int cap = std::max(block_cap, 2 * t);
    int nblocks = 2 * k + 2;
    std::vector<VertexSet> cands;
    cands.reserve(size_t(nblocks));
    std::vector<int> source(size_t(nblocks + 1), -1);  // 1-based block -> anchor vertex

    auto push_block = [&](int idx, Sign s, int anchor) {
        VertexSet c = d.nbhd(s, anchor) - excluded;
        source[size_t(idx)] = anchor;
        cands.push_back(std::move(c));
    };

    push_block(1, segment.sigma(1, 2), v);
    for (int i = 1; i <= k; ++i) {
        push_block(2 * i, segment.sigma(2 * i + 2, 2 * i + 1), S[size_t(i - 1)]);
        push_block(2 * i + 1, segment.sigma(2 * i + 2, 2 * i + 3), S[size_t(i - 1)]);
    }
    push_block(2 * k + 2, segment.sigma(2 * k + 5, 2 * k + 4), z);

    for (int i = 0; i < nblocks; ++i)
        if (cands[size_t(i)].count() < 2 * t)
            return fail("local-absorber",
                        "neighborhood of vertex " + std::to_string(source[size_t(i + 1)]) +
                            " too small after exclusions (block " + std::to_string(i + 1) + ")");

    std::vector<VertexSet> blocks = allocate_disjoint_blocks(cands, cap);
    for (int i = 0; i < nblocks; ++i)
        if (blocks[size_t(i)].count() < std::min(2 * t, cands[size_t(i)].count()))
            return fail("local-absorber", "block " + std::to_string(i + 1) +
                                              " crowded out by earlier blocks");

    auto path = connecting_path(d, blocks, t);
    if (!path) return std::move(path).take_failure();

    LocalAbsorberSemi a;
    a.segment = segment;
    a.v = v;
    a.z = z;
    a.spine = path.value();
    a.slots = S;
    for (int i = 1; i <= k; ++i) a.slot_of[S[size_t(i - 1)]] = i;
    OC_CHECK(int(a.spine.size()) == nblocks, "local absorber spine length");
    (void)n;
    return a;
}

Embedding activate_local_semi(const LocalAbsorberSemi& a, int s) {
    auto it = a.slot_of.find(s);
    if (it == a.slot_of.end())
        throw std::invalid_argument("activate_local_semi: vertex " + std::to_string(s) +
                                    " is not a registered slot");
    int i = it->second;
    std::vector<int> verts;
    verts.reserve(a.spine.size() + 3);
    verts.push_back(a.v);
    verts.insert(verts.end(), a.spine.begin(), a.spine.begin() + 2 * i);
    verts.push_back(s);
    verts.insert(verts.end(), a.spine.begin() + 2 * i, a.spine.end());
    verts.push_back(a.z);
    return Embedding{a.segment, std::move(verts)};
}

Outcome<Embedding> absorb_R_into_X(const Digraph& d, const VertexSet& X, const VertexSet& R,
                                   int v, int v_prime, const OrientationPattern& pattern, int t) {
    int n = d.n();
    int k = pattern.k();
    int r_count = R.count();
    int b = k - r_count;
    if (v == v_prime || !R.test(v) || !R.test(v_prime))
        throw std::invalid_argument("absorb_R_into_X: v, v' must be distinct members of R");
    if (R.intersects(X)) throw std::invalid_argument("absorb_R_into_X: R meets X");
    if (b < 4 * t + 4)
        throw std::invalid_argument("absorb_R_into_X: pattern leaves under 4t+4 X-slots");
    if (k < 6 * t + 7)
        throw std::invalid_argument("absorb_R_into_X: pattern shorter than 6t+7");
    if (X.count() < b) throw std::invalid_argument("absorb_R_into_X: X smaller than budget");

    // spare X vertices folded into R so the long path leaves exactly 2t ends
    int spare = b - 4 * t - 4;
    VertexSet x_spare = VertexSet::of(n, X.lowest(spare));
    VertexSet x_conn = X - x_spare;
    VertexSet r0 = (R | x_spare);
    r0.reset(v);
    r0.reset(v_prime);

    int target = r0.count() - 2 * t;
    OC_CHECK(target == k - 6 * t - 6, "absorb_R_into_X size arithmetic");
    auto q = long_bidirected_path(d, VertexSet::full(n) - r0, target, t);
    if (!q) return std::move(q).take_failure();
    const std::vector<int>& path = q.value();

    VertexSet on_path = VertexSet::of(n, path);
    std::vector<int> left = (r0 - on_path).to_vector();
    OC_CHECK(int(left.size()) == 2 * t, "absorb_R_into_X leftover count");

    std::vector<int> hops;  // v_0 = v, leftovers ascending, v_{q+1} = path front
    hops.push_back(v);
    hops.insert(hops.end(), left.begin(), left.end());
    hops.push_back(path.front());

    std::vector<int> verts;
    verts.reserve(size_t(k));
    verts.push_back(v);
    VertexSet used = x_conn;  // shrinks as connectors consume it
    for (int i = 0; i + 1 < int(hops.size()); ++i) {
        int base = 3 * i + 1;
        auto xy = three_edge_connector(d, hops[size_t(i)], hops[size_t(i + 1)],
                                       pattern.sigma(base, base + 1), pattern.sigma(base + 1, base + 2),
                                       pattern.sigma(base + 2, base + 3), used, t);
        if (!xy) return std::move(xy).take_failure();
        auto [x, y] = xy.value();
        used.reset(x);
        used.reset(y);
        verts.push_back(x);
        verts.push_back(y);
        verts.push_back(hops[size_t(i + 1)]);
    }
    verts.insert(verts.end(), path.begin() + 1, path.end());

    auto xy = three_edge_connector(d, path.back(), v_prime, pattern.sigma(k - 3, k - 2),
                                   pattern.sigma(k - 2, k - 1), pattern.sigma(k - 1, k), used, t);
    if (!xy) return std::move(xy).take_failure();
    verts.push_back(xy.value().first);
    verts.push_back(xy.value().second);
    verts.push_back(v_prime);

    Embedding e{pattern, std::move(verts)};
    OC_CHECK(int(e.verts.size()) == k, "absorb_R_into_X length");
    OC_CHECK(verify_embedding(d, e), "absorb_R_into_X produced an invalid copy");
    VertexSet cover = VertexSet::of(n, e.verts);
    OC_CHECK(R.is_subset_of(cover), "absorb_R_into_X must cover R");
    OC_CHECK((cover - R).is_subset_of(X), "absorb_R_into_X excess must come from X");
    OC_CHECK((cover - R).count() == b, "absorb_R_into_X uses exactly its X budget");
    return e;
}

Outcome<GlobalAbsorberSemi> build_global_absorber_semi(const Digraph& d,
                                                       const OrientationPattern& P,
                                                       const SemiParams& params, uint64_t seed) {
    int n = d.n();
    params.validate(n);
    int m = params.m, t = params.t, bm = params.beta_m();
    if (P.k() < params.min_pattern_len())
        throw std::invalid_argument("global absorber: pattern shorter than structural minimum " +
                                    std::to_string(params.min_pattern_len()));
    int xsize = m + bm;  // (1+beta)m

    SplitRng root(seed);

    // reservoir X: resample until every vertex sees it 2*beta*m+2 times both ways
    VertexSet Xset(n);
    bool have_x = false;
    for (int attempt = 0; attempt < params.x_retries && !have_x; ++attempt) {
        SplitRng rng = root.split(0x5eed0000ull + uint64_t(attempt));
        VertexSet cand(n);
        int got = 0;
        while (got < xsize) {
            int v = int(rng.next_below(uint64_t(n)));
            if (cand.test(v)) continue;
            cand.set(v);
            ++got;
        }
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            if (d.out(v).intersection_count(cand) < 2 * bm + 2) ok = false;
            if (ok && d.in(v).intersection_count(cand) < 2 * bm + 2) ok = false;
        }
        if (ok) {
            Xset = std::move(cand);
            have_x = true;
        }
    }
    if (!have_x)
        return fail("x-sampling", "no X of size " + std::to_string(xsize) +
                                      " with the degree property after " +
                                      std::to_string(params.x_retries) + " samples");

    GlobalAbsorberSemi gab;
    gab.pattern = P;
    gab.params = params;
    gab.Xset = Xset;
    gab.X = Xset.to_vector();

    // Y, Z, z0: lowest eligible ids
    VertexSet rest = VertexSet::full(n) - Xset;
    gab.Y = rest.lowest(2 * m);
    for (int y : gab.Y) rest.reset(y);
    gab.Z = rest.lowest(3 * m);
    for (int z : gab.Z) rest.reset(z);
    gab.z0 = rest.first();
    OC_CHECK(int(gab.Y.size()) == 2 * m && int(gab.Z.size()) == 3 * m && gab.z0 != -1,
             "global absorber: ran out of vertices for Y/Z/z0");

    try {
        gab.tpl = build_template(m, params.beta, root.split(0x7e3917eull).next_u64());
    } catch (const std::exception& e) {
        return fail("template", e.what());
    }

    // slot sets: template neighborhoods padded to exactly 40 anchors each
    VertexSet xy_set(n);
    for (int x : gab.X) xy_set.set(x);
    for (int y : gab.Y) xy_set.set(y);
    auto left_vertex = [&](int l) { return l < gab.tpl.nx ? gab.X[size_t(l)] : gab.Y[size_t(l - gab.tpl.nx)]; };

    VertexSet forbidden = xy_set;
    for (int z : gab.Z) forbidden.set(z);
    forbidden.set(gab.z0);

    for (int i = 1; i <= 3 * m; ++i) {
        std::vector<int> slots;
        slots.reserve(40);
        for (int l : gab.tpl.adj[size_t(i - 1)]) slots.push_back(left_vertex(l));
        std::sort(slots.begin(), slots.end());
        VertexSet in_slots = VertexSet::of(n, slots);
        for (int w = xy_set.first(); w != -1 && int(slots.size()) < 40; w = xy_set.next(w))
            if (!in_slots.test(w)) slots.push_back(w);
        std::sort(slots.begin(), slots.end());
        OC_CHECK(int(slots.size()) == 40, "global absorber: slot set must have 40 anchors");

        int v_anchor = (i == 1) ? gab.z0 : gab.Z[size_t(i - 2)];
        auto seg = subpattern(P, 84 * i - 80, 84 * i + 4);
        auto local = build_local_absorber_semi(d, seg, v_anchor, slots, gab.Z[size_t(i - 1)],
                                               forbidden, t, params.block_cap);
        if (!local) {
            auto f = std::move(local).take_failure();
            f.detail = "local absorber " + std::to_string(i) + ": " + f.detail;
            return f;
        }
        for (int w : local.value().spine) forbidden.set(w);
        gab.locals.push_back(std::move(local.value()));
    }

    gab.A = forbidden;  // X u Y u Z u {z0} u spines
    OC_CHECK(gab.A.count() == params.absorber_size(), "global absorber size identity (252+beta)m+1");
    return gab;
}

Outcome<Embedding> activate_global_semi(const Digraph& d, const GlobalAbsorberSemi& gab,
                                        const VertexSet& R, int v, int v_prime) {
    int n = d.n();
    int k = gab.k();
    int m = gab.params.m, t = gab.params.t;
    if (R.intersects(gab.A)) throw std::invalid_argument("activate: R meets A");
    if (R.count() != gab.leftover_size())
        throw std::invalid_argument("activate: |R| must be " + std::to_string(gab.leftover_size()));
    if (v == v_prime || !R.test(v) || !R.test(v_prime))
        throw std::invalid_argument("activate: v, v' must be distinct members of R");

    const OrientationPattern& P = gab.pattern;
    int z_last = gab.Z.back();

    auto x12 = three_edge_connector(d, v, gab.z0, P.sigma(1, 2), P.sigma(2, 3), P.sigma(3, 4),
                                    gab.Xset, t);
    if (!x12) return std::move(x12).take_failure();
    auto [x1, x2] = x12.value();

    VertexSet x_bar = gab.Xset;
    x_bar.reset(x1);
    x_bar.reset(x2);
    VertexSet r_bar = R;
    r_bar.reset(v);
    r_bar.set(z_last);

    auto q = absorb_R_into_X(d, x_bar, r_bar, z_last, v_prime, subpattern(P, 252 * m + 4, k), t);
    if (!q) return std::move(q).take_failure();

    // leftover X' is matched to Z; the matching picks each local's slot
    VertexSet q_cover = VertexSet::of(n, q.value().verts);
    VertexSet x_left = x_bar - q_cover;
    OC_CHECK(x_left.count() == m, "activation: |X'| = m");
    std::vector<int> x_prime_idx;
    x_prime_idx.reserve(size_t(m));
    for (int idx = 0; idx < int(gab.X.size()); ++idx)
        if (x_left.test(gab.X[size_t(idx)])) x_prime_idx.push_back(idx);

    auto match = robust_matching(gab.tpl, x_prime_idx);
    if (!match)
        return fail("robust-matching",
                    "template failed to match X'; regenerate the template with a new seed");

    std::vector<int> verts;
    verts.reserve(size_t(k));
    verts.push_back(v);
    verts.push_back(x1);
    verts.push_back(x2);
    verts.push_back(gab.z0);
    for (int i = 1; i <= 3 * m; ++i) {
        int l = (*match)[size_t(i - 1)];
        int partner = l < gab.tpl.nx ? gab.X[size_t(l)] : gab.Y[size_t(l - gab.tpl.nx)];
        Embedding qi = activate_local_semi(gab.locals[size_t(i - 1)], partner);
        OC_CHECK(qi.verts.front() == verts.back(), "activation: local junction mismatch");
        verts.insert(verts.end(), qi.verts.begin() + 1, qi.verts.end());
    }
    OC_CHECK(verts.back() == z_last, "activation: chain must end at the last anchor");
    verts.insert(verts.end(), q.value().verts.begin() + 1, q.value().verts.end());

    Embedding e{P, std::move(verts)};
    OC_CHECK(int(e.verts.size()) == k, "activation: copy length");
    OC_CHECK(verify_embedding(d, e), "activation produced an invalid copy");
    VertexSet cover = VertexSet::of(n, e.verts);
    OC_CHECK(cover == (gab.A | R), "activation must cover exactly A u R");
    return e;
}

}  // namespace oc
