#include "oc/embed.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oc {

namespace {

EmbedOutcome found(Embedding e, std::string route) {
    EmbedOutcome o;
    o.status = EmbedStatus::found;
    o.embedding = std::move(e);
    o.route = std::move(route);
    return o;
}

EmbedOutcome failed(FailureReport f, std::string route) {
    EmbedOutcome o;
    o.status = EmbedStatus::strategy_failed;
    o.failure = std::move(f);
    o.route = std::move(route);
    return o;
}

EmbedOutcome absent(std::string route, std::string detail) {
    EmbedOutcome o;
    o.status = EmbedStatus::confirmed_absent;
    o.route = std::move(route);
    o.failure = fail(o.route, std::move(detail));
    return o;
}

// k = 2: exhaustive digon search.
EmbedOutcome embed_digon(const Digraph& d, const OrientationPattern& c) {
    for (int u = 0; u < d.n(); ++u) {
        VertexSet cand = d.out(u) & d.in(u);
        int v = cand.first();
        if (v != -1) return found(Embedding{c, {u, v}}, "digon");
    }
    return absent("digon", "no bidirected pair exists");
}

// k = 3: exhaustive neighborhood edge search over all base vertices.
EmbedOutcome embed_triangle(const Digraph& d, const OrientationPattern& c) {
    for (int u = 0; u < d.n(); ++u) {
        VertexSet b1 = d.nbhd(c.sigma(1, 2), u);         // candidates for u_2
        VertexSet b3 = d.nbhd(c.sigma(1, 3), u);         // candidates for u_3 (wrap edge)
        for (int v = b1.first(); v != -1; v = b1.next(v)) {
            VertexSet cand = d.nbhd(c.sigma(2, 3), v) & b3;
            cand.reset(u);
            int w = cand.first();
            if (w != -1) return found(Embedding{c, {u, v, w}}, "triangle");
        }
    }
    return absent("triangle", "exhaustive search found no copy");
}

// Close a bidirected window into the cycle: sweep rotations, realize the
// three remaining edges through a connector pair from the leftover pool.
Outcome<Embedding> close_window(const Digraph& d, const OrientationPattern& c,
                                const std::vector<int>& window, int t) {
    int n = d.n();
    int k = c.k();
    VertexSet leftovers = VertexSet::full(n) - VertexSet::of(n, window);
    int w_first = window.front(), w_last = window.back();
    std::optional<FailureReport> last_fail;
    for (int cut = 1; cut <= k; ++cut) {
        // window plays (u_cut .. u_{cut+k-3}); connector realizes the path
        // (u_{cut+k-3}, u_{cut+k-2}, u_{cut+k-1}, u_cut) from w_last to w_first
        auto tail = [&](int off) { return ((cut - 1 + off) % k) + 1; };
        Sign sa = c.sigma(tail(k - 3), tail(k - 2));
        Sign sb = c.sigma(tail(k - 2), tail(k - 1));
        Sign sc = c.sigma(tail(k - 1), tail(0));
        auto xy = three_edge_connector(d, w_last, w_first, sa, sb, sc, leftovers, t);
        if (xy) {
            std::vector<int> seq = window;
            seq.push_back(xy.value().first);
            seq.push_back(xy.value().second);
            // seq[i] plays u_{cut+i}; shift into pattern order
            std::vector<int> verts(size_t(k), -1);
            for (int i = 0; i < k; ++i) verts[size_t((cut - 1 + i) % k)] = seq[size_t(i)];
            Embedding e{c, std::move(verts)};
            if (verify_embedding(d, e)) return e;
            OC_CHECK(false, "close_window assembled an invalid copy");
        }
        last_fail = std::move(xy).take_failure();
    }
    if (last_fail) return std::move(*last_fail);
    return fail("closing", "no rotation closed the window");
}

// Generic desk route for k >= 4: bidirected path on k-2 vertices, then a
// rotation-swept 3-edge closing through the leftovers.  Retries restart the
// path search from varied roots.
EmbedOutcome embed_path_closing(const Digraph& d, const OrientationPattern& c,
                                const EmbedConfig& cfg) {
    int n = d.n();
    int k = c.k();
    int t = cfg.t_for(n);
    std::optional<FailureReport> last_fail;
    for (int attempt = 0; attempt < cfg.retries; ++attempt) {
        int hint = attempt == 0 ? -1 : int((uint64_t(attempt) * 0x9e3779b97f4a7c15ull) % uint64_t(n));
        auto q = long_bidirected_path(d, VertexSet(n), k - 2, t, hint);
        if (!q) {
            last_fail = std::move(q).take_failure();
            continue;
        }
        auto closed = close_window(d, c, q.value(), t);
        if (closed) return found(std::move(closed.value()), "path-closing");
        last_fail = std::move(closed).take_failure();
    }
    if (!last_fail) last_fail = fail("path-closing", "no attempt succeeded");
    return failed(std::move(*last_fail), "path-closing");
}

// Absorber parameters that fit this instance, if any.
std::optional<SemiParams> semi_params_for(int n, int k, int t) {
    SemiParams p;
    p.t = t;
    p.beta = 0.5;
    int m_min = 2 * (4 * t + 6);  // beta*m >= 4t+6 with beta = 1/2
    if (m_min % 2) ++m_min;
    for (int m = m_min; m <= m_min + 64; m += 2) {
        p.m = m;
        if ((1 + p.beta) * m < 2 * p.beta_m() + 2) continue;
        if (k >= p.min_pattern_len() && n >= k + 2) return p;
        break;  // larger m only grows the requirement
    }
    return std::nullopt;
}

std::optional<TotalParams> total_params_for(int n, int k, int t) {
    TotalParams p;
    p.t = t;
    p.r = 9 * t;
    p.beta = 1.0 / 3.0;
    p.m = 3 * (3 * p.r);  // beta*m = 3r exactly
    p.segment_len = 129;
    try {
        p.validate();
    } catch (const std::exception&) {
        return std::nullopt;
    }
    // structural floor: pieces for all of Z plus the absorbing piece
    long long j_min = (3LL * p.m + 1) * p.segment_len + 8;
    if (k < j_min + p.ell() + 4 || n < k + 2) return std::nullopt;
    return p;
}

EmbedOutcome embed_long_semi(const Digraph& d, const OrientationPattern& c,
                             const EmbedConfig& cfg, const SemiParams& params) {
    int n = d.n();
    int k = c.k();
    int t = params.t;
    int len_p = std::min(int(std::ceil(cfg.alpha * n / 4.0 - 1e-9)), k - 2);
    if (len_p < params.min_pattern_len())
        return failed(fail("absorber-semi", "pattern budget below structural minimum"), "absorber-semi");
    OrientationPattern P = cycle_window(c, 1, len_p);

    auto gab = build_global_absorber_semi(d, P, params, cfg.seed);
    if (!gab) return failed(std::move(gab).take_failure(), "absorber-semi");

    auto q = long_bidirected_path(d, gab.value().A, k - len_p + 2, t);
    if (!q) return failed(std::move(q).take_failure(), "absorber-semi");
    const auto& path = q.value();
    int v = path.back(), v_prime = path.front();  // v plays u_1, v' plays u_{len_p}

    VertexSet rest = VertexSet::full(n) - gab.value().A - VertexSet::of(n, path);
    VertexSet R(n);
    R.set(v);
    R.set(v_prime);
    int need = gab.value().leftover_size() - 2;
    for (int w = rest.first(); w != -1 && need > 0; w = rest.next(w), --need) R.set(w);
    if (need > 0) return failed(fail("absorber-semi", "not enough free vertices for R"), "absorber-semi");

    auto copy = activate_global_semi(d, gab.value(), R, v, v_prime);
    if (!copy) return failed(std::move(copy).take_failure(), "absorber-semi");

    std::vector<int> verts = copy.value().verts;  // plays u_1..u_{len_p}
    verts.insert(verts.end(), path.begin() + 1, path.end() - 1);
    Embedding e{c, std::move(verts)};
    OC_CHECK(verify_embedding(d, e), "absorber-semi cycle assembly");
    return found(std::move(e), "absorber-semi");
}

EmbedOutcome embed_long_total(const Digraph& d, const OrientationPattern& c,
                              const EmbedConfig& cfg, const TotalParams& params) {
    int n = d.n();
    int k = c.k();
    int t = params.t;
    long long j_min = (3LL * params.m + 1) * params.segment_len + 8;
    int len_p = std::min(int(std::ceil(cfg.alpha * n / 4.0 - 1e-9)), k - 2);
    if (len_p < j_min + params.ell() + 4)
        return failed(fail("absorber-total", "pattern budget below structural minimum"),
                      "absorber-total");
    OrientationPattern P = cycle_window(c, 1, len_p);

    auto gab = build_global_absorber_total(d, P, params, cfg.seed);
    if (!gab) return failed(std::move(gab).take_failure(), "absorber-total");

    auto q = long_path_with_degrees(d, gab.value().A, k - len_p + 2, P.sigma(len_p, len_p - 1),
                                    P.sigma(1, 2), params.alpha, t);
    if (!q) return failed(std::move(q).take_failure(), "absorber-total");
    const auto& path = q.value();
    int v = path.back(), v_prime = path.front();

    VertexSet rest = VertexSet::full(n) - gab.value().A - VertexSet::of(n, path);
    VertexSet R(n);
    R.set(v);
    R.set(v_prime);
    int need = gab.value().leftover_size() - 2;
    for (int w = rest.first(); w != -1 && need > 0; w = rest.next(w), --need) R.set(w);
    if (need > 0)
        return failed(fail("absorber-total", "not enough free vertices for R"), "absorber-total");

    auto copy = activate_global_total(d, gab.value(), R, v, v_prime);
    if (!copy) return failed(std::move(copy).take_failure(), "absorber-total");

    std::vector<int> verts = copy.value().verts;
    verts.insert(verts.end(), path.begin() + 1, path.end() - 1);
    Embedding e{c, std::move(verts)};
    OC_CHECK(verify_embedding(d, e), "absorber-total cycle assembly");
    return found(std::move(e), "absorber-total");
}

}  // namespace

EmbedOutcome embed_cycle(const Digraph& d, const OrientationPattern& c, const EmbedConfig& cfg) {
    cfg.validate();
    if (!c.is_cycle()) throw std::invalid_argument("embed_cycle: pattern must be a cycle");
    int n = d.n();
    int k = c.k();
    if (k > n) throw std::invalid_argument("embed_cycle: cycle longer than the digraph");

    if (k == 2) return embed_digon(d, c);
    if (k == 3) return embed_triangle(d, c);

    int t = cfg.t_for(n);
    if (cfg.allow_absorber) {
        // proof-shaped absorber route for long cycles when the structural
        // arithmetic fits this instance; desk-scale instances fall through
        double threshold = cfg.alpha * n / 2.0;
        if (cfg.regime == Regime::semi && k >= threshold) {
            if (auto params = semi_params_for(n, k, t)) {
                EmbedOutcome o = embed_long_semi(d, c, cfg, *params);
                if (o.ok()) return o;
            }
        } else if (cfg.regime == Regime::total &&
                   k >= (1.0 - 13.0 * cfg.epsilon / cfg.alpha - 8.0 * cfg.epsilon) * n) {
            if (auto params = total_params_for(n, k, t)) {
                EmbedOutcome o = embed_long_total(d, c, cfg, *params);
                if (o.ok()) return o;
            }
        }
    }
    return embed_path_closing(d, c, cfg);
}

std::optional<Embedding> brute_force_contains(const Digraph& d, const OrientationPattern& c) {
    int n = d.n();
    if (n > 10) throw std::invalid_argument("brute_force_contains: n <= 10");
    int k = c.k();
    if (k > n) return std::nullopt;

    if (c.is_cycle() && k == 2) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (d.has_bidirected(u, v)) return Embedding{c, {u, v}};
        return std::nullopt;
    }

    std::vector<int> verts(size_t(k), -1);
    std::vector<char> used(size_t(n), 0);

    auto edge_ok = [&](int pos_a, int pos_b, int a, int b) {
        return c.sigma(pos_a, pos_b) == Sign::plus ? d.has_edge(a, b) : d.has_edge(b, a);
    };

    std::function<bool(int)> place = [&](int pos) -> bool {
        if (pos > k) return !c.is_cycle() || edge_ok(k, 1, verts[size_t(k - 1)], verts[0]);
        for (int v = 0; v < n; ++v) {
            if (used[size_t(v)]) continue;
            if (pos > 1 && !edge_ok(pos - 1, pos, verts[size_t(pos - 2)], v)) continue;
            verts[size_t(pos - 1)] = v;
            used[size_t(v)] = 1;
            if (place(pos + 1)) return true;
            used[size_t(v)] = 0;
        }
        return false;
    };
    if (place(1)) return Embedding{c, verts};
    return std::nullopt;
}

OrientationPattern random_cycle_pattern(int k, SplitRng& rng) {
    std::vector<Sign> signs(size_t(k));
    for (int i = 0; i < k; ++i) signs[size_t(i)] = rng.bernoulli(0.5) ? Sign::plus : Sign::minus;
    return OrientationPattern(OrientationPattern::Kind::cycle, std::move(signs));
}

OrientationPattern blocky_cycle_pattern(int k, int block_len) {
    std::vector<Sign> signs(size_t(k));
    for (int i = 0; i < k; ++i)
        signs[size_t(i)] = ((i / block_len) % 2 == 0) ? Sign::plus : Sign::minus;
    return OrientationPattern(OrientationPattern::Kind::cycle, std::move(signs));
}

std::vector<SweepRow> universality_sweep(const Digraph& d, const std::vector<int>& lengths,
                                         int patterns_per_length, const EmbedConfig& cfg) {
    std::vector<SweepRow> rows;
    SplitRng rng(cfg.seed ^ 0x5eedba77e12ull);
    for (int k : lengths) {
        if (k < 2 || k > d.n()) continue;
        std::vector<OrientationPattern> battery;
        if (k <= 20 && (1LL << k) <= patterns_per_length) {
            for (long long mask = 0; mask < (1LL << k); ++mask) {
                std::vector<Sign> signs(size_t(k));
                for (int i = 0; i < k; ++i)
                    signs[size_t(i)] = (mask >> i) & 1 ? Sign::minus : Sign::plus;
                battery.emplace_back(OrientationPattern::Kind::cycle, std::move(signs));
            }
        } else {
            battery.push_back(OrientationPattern::consistent(OrientationPattern::Kind::cycle, k));
            if (k % 2 == 0 && patterns_per_length > 1)
                battery.push_back(OrientationPattern::antidirected(OrientationPattern::Kind::cycle, k));
            while (int(battery.size()) < patterns_per_length)
                battery.push_back(random_cycle_pattern(k, rng));
        }
        for (const auto& pat : battery) {
            EmbedOutcome o = embed_cycle(d, pat, cfg);
            SweepRow row;
            row.length = k;
            row.pattern = pat.to_string();
            row.success = o.ok();
            row.route = o.route;
            if (!o.ok() && o.failure) row.stage = o.failure->stage;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace oc
