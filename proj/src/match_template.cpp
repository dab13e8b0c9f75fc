#include "oc/match_template.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "oc/outcome.hpp"

namespace oc {

void MatchTemplate::write(std::ostream& os) const {
    long long edges = 0;
    for (const auto& a : adj) edges += (long long)a.size();
    os << left_size() << ' ' << nz << ' ' << edges << '\n';
    for (int z = 0; z < nz; ++z)
        for (int l : adj[size_t(z)]) os << l << ' ' << z << '\n';
}

MatchTemplate MatchTemplate::read(std::istream& is) {
    MatchTemplate t;
    long long edges;
    int left;
    if (!(is >> left >> t.nz >> edges)) throw std::runtime_error("template: bad header");
    t.m = t.nz / 3;
    t.ny = 2 * t.m;
    t.nx = left - t.ny;
    t.beta = t.m > 0 ? double(t.nx - t.m) / double(t.m) : 0.0;
    t.adj.assign(size_t(t.nz), {});
    for (long long i = 0; i < edges; ++i) {
        int l, z;
        if (!(is >> l >> z)) throw std::runtime_error("template: truncated");
        t.adj[size_t(z)].push_back(l);
    }
    for (auto& a : t.adj) std::sort(a.begin(), a.end());
    return t;
}

namespace {

// Hopcroft-Karp between Z (left of the matching) and allowed template-left
// vertices.  allowed[l] marks usable vertices of X u Y.
std::optional<std::vector<int>> hopcroft_karp(const MatchTemplate& tpl,
                                              const std::vector<char>& allowed) {
    const int INF = 1 << 30;
    int nz = tpl.nz, nl = tpl.left_size();
    std::vector<int> match_z(size_t(nz), -1), match_l(size_t(nl), -1);
    std::vector<int> dist(size_t(nz), 0);

    auto bfs = [&]() {
        std::queue<int> q;
        for (int z = 0; z < nz; ++z) {
            if (match_z[size_t(z)] == -1) {
                dist[size_t(z)] = 0;
                q.push(z);
            } else
                dist[size_t(z)] = INF;
        }
        bool found = false;
        while (!q.empty()) {
            int z = q.front();
            q.pop();
            for (int l : tpl.adj[size_t(z)]) {
                if (!allowed[size_t(l)]) continue;
                int z2 = match_l[size_t(l)];
                if (z2 == -1)
                    found = true;
                else if (dist[size_t(z2)] == INF) {
                    dist[size_t(z2)] = dist[size_t(z)] + 1;
                    q.push(z2);
                }
            }
        }
        return found;
    };

    std::function<bool(int)> dfs = [&](int z) {
        for (int l : tpl.adj[size_t(z)]) {
            if (!allowed[size_t(l)]) continue;
            int z2 = match_l[size_t(l)];
            if (z2 == -1 || (dist[size_t(z2)] == dist[size_t(z)] + 1 && dfs(z2))) {
                match_z[size_t(z)] = l;
                match_l[size_t(l)] = z;
                return true;
            }
        }
        dist[size_t(z)] = INF;
        return false;
    };

    int matched = 0;
    while (bfs()) {
        for (int z = 0; z < nz; ++z)
            if (match_z[size_t(z)] == -1 && dfs(z)) ++matched;
    }
    if (matched != nz) return std::nullopt;
    return match_z;
}

MatchTemplate build_once(int m, double beta, int bm, SplitRng& rng, const TemplateOptions& opts) {
    MatchTemplate t;
    t.m = m;
    t.beta = beta;
    t.nx = m + bm;
    t.ny = 2 * m;
    t.nz = 3 * m;
    t.degree_cap = opts.degree_cap;
    t.adj.assign(size_t(t.nz), {});

    std::vector<int> deg_left(size_t(t.left_size()), 0);
    std::vector<int> order(size_t(t.nz));
    std::iota(order.begin(), order.end(), 0);

    auto add_round = [&](int lo, int hi) {
        // one fresh neighbor in [lo, hi) per z, uniform among unsaturated,
        // z order shuffled per round so cap truncation spreads evenly
        for (int i = t.nz - 1; i > 0; --i)
            std::swap(order[size_t(i)], order[size_t(rng.next_below(uint64_t(i + 1)))]);
        for (int z : order) {
            auto& az = t.adj[size_t(z)];
            if (int(az.size()) >= opts.degree_cap) continue;
            std::vector<int> cands;
            for (int l = lo; l < hi; ++l) {
                if (deg_left[size_t(l)] >= opts.degree_cap) continue;
                if (std::find(az.begin(), az.end(), l) != az.end()) continue;
                cands.push_back(l);
            }
            if (cands.empty()) continue;  // truncated by cap
            int l = cands[size_t(rng.next_below(uint64_t(cands.size())))];
            az.push_back(l);
            ++deg_left[size_t(l)];
        }
    };

    for (int r = 0; r < opts.x_rounds; ++r) add_round(0, t.nx);
    for (int r = 0; r < opts.y_rounds; ++r) add_round(t.nx, t.nx + t.ny);
    for (auto& a : t.adj) std::sort(a.begin(), a.end());
    return t;
}

}  // namespace

MatchTemplate build_template(int m, double beta, uint64_t seed, TemplateOptions opts) {
    if (m < 0) throw std::invalid_argument("build_template: m >= 0");
    double bm_real = beta * m;
    int bm = int(std::llround(bm_real));
    if (std::abs(bm_real - bm) > 1e-9 || beta < 0 || beta > 1 + 1e-12)
        throw std::invalid_argument("build_template: beta*m must be an integer, 0 <= beta <= 1");
    if (opts.x_rounds + opts.y_rounds > opts.degree_cap)
        throw std::invalid_argument("build_template: rounds exceed degree cap");
    if (m == 0) {
        MatchTemplate t;
        t.m = 0;
        t.beta = beta;
        t.degree_cap = opts.degree_cap;
        return t;
    }

    SplitRng root(seed);
    for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
        SplitRng rng = root.split(uint64_t(attempt));
        MatchTemplate t = build_once(m, beta, bm, rng, opts);
        t.build_attempts = attempt;

        bool ok = true;
        for (const auto& a : t.adj)
            if (a.empty()) ok = false;  // an isolated z can never be matched
        // smoke tests: lexicographically first X', last X', and random draws
        std::vector<int> first_m(size_t(m)), last_m(size_t(m));
        std::iota(first_m.begin(), first_m.end(), 0);
        std::iota(last_m.begin(), last_m.end(), t.nx - m);
        if (ok) ok = robust_matching(t, first_m).has_value();
        if (ok) ok = robust_matching(t, last_m).has_value();
        for (int s = 0; ok && s < opts.smoke_samples; ++s) {
            std::vector<int> pool(size_t(t.nx));
            std::iota(pool.begin(), pool.end(), 0);
            for (int i = 0; i < m; ++i)
                std::swap(pool[size_t(i)], pool[size_t(i + int(rng.next_below(uint64_t(t.nx - i))))]);
            pool.resize(size_t(m));
            ok = robust_matching(t, pool).has_value();
        }
        if (ok) return t;
    }
    throw std::runtime_error("build_template: smoke tests failed for all attempts");
}

std::optional<std::vector<int>> robust_matching(const MatchTemplate& tpl,
                                                const std::vector<int>& X_prime) {
    if (int(X_prime.size()) != tpl.m) throw std::invalid_argument("robust_matching: |X'| != m");
    std::vector<char> allowed(size_t(tpl.left_size()), 0);
    for (int x : X_prime) {
        if (x < 0 || x >= tpl.nx) throw std::invalid_argument("robust_matching: X' not inside X");
        if (allowed[size_t(x)]) throw std::invalid_argument("robust_matching: duplicate in X'");
        allowed[size_t(x)] = 1;
    }
    for (int y = tpl.nx; y < tpl.left_size(); ++y) allowed[size_t(y)] = 1;

    auto match = hopcroft_karp(tpl, allowed);
    if (!match) return std::nullopt;
    // the matching must saturate Z along template edges inside X' u Y
    std::vector<char> used(size_t(tpl.left_size()), 0);
    for (int z = 0; z < tpl.nz; ++z) {
        int l = (*match)[size_t(z)];
        OC_CHECK(l >= 0 && l < tpl.left_size() && allowed[size_t(l)] && !used[size_t(l)],
                 "robust_matching output sanity");
        OC_CHECK(std::binary_search(tpl.adj[size_t(z)].begin(), tpl.adj[size_t(z)].end(), l),
                 "robust_matching uses template edges");
        used[size_t(l)] = 1;
    }
    return match;
}

bool verify_template_exhaustive(const MatchTemplate& tpl) {
    if (tpl.m > 6) throw std::invalid_argument("verify_template_exhaustive: m <= 6 required");
    if (tpl.m == 0) return true;
    std::vector<int> sel(size_t(tpl.m));
    std::iota(sel.begin(), sel.end(), 0);
    while (true) {
        if (!robust_matching(tpl, sel)) return false;
        // next combination
        int i = tpl.m - 1;
        while (i >= 0 && sel[size_t(i)] == tpl.nx - tpl.m + i) --i;
        if (i < 0) break;
        ++sel[size_t(i)];
        for (int j = i + 1; j < tpl.m; ++j) sel[size_t(j)] = sel[size_t(j - 1)] + 1;
    }
    return true;
}

}  // namespace oc
