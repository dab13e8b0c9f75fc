#include "oc/randgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace oc {

Digraph gen_random(const RandomModel& model) {
    if (model.n < 0) throw std::invalid_argument("gen_random: negative n");
    double p = std::clamp(model.p, 0.0, 1.0);
    Digraph d(model.n);
    SplitRng rng(model.seed);
    if (p <= 0.0) return d;
    if (model.kind == RandomModel::Kind::directed) {
        for (int u = 0; u < model.n; ++u)
            for (int v = 0; v < model.n; ++v) {
                if (u == v) continue;
                if (p >= 1.0 || rng.bernoulli(p)) d.add_edge(u, v);
            }
    } else {
        for (int u = 0; u < model.n; ++u)
            for (int v = u + 1; v < model.n; ++v) {
                if (p >= 1.0 || rng.bernoulli(p)) {
                    d.add_edge(u, v);
                    d.add_edge(v, u);
                }
            }
    }
    return d;
}

static int small_part(int n, double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must be in (0, 1/2)");
    int s = int(alpha * n);  // rounded down
    if (s < 1 || s >= n) throw std::invalid_argument("degenerate part size");
    return s;
}

Digraph gen_bipartite_extremal(int n, double alpha) {
    int s = small_part(n, alpha);
    Digraph d(n);
    for (int u = 0; u < s; ++u)
        for (int v = s; v < n; ++v) {
            d.add_edge(u, v);
            d.add_edge(v, u);
        }
    return d;
}

Digraph gen_oneway_extremal(int n, double alpha) {
    int s = small_part(n, alpha);
    Digraph d(n);
    for (int u = 0; u < s; ++u)
        for (int v = s; v < n; ++v) d.add_edge(u, v);
    return d;
}

Digraph perturb(const Digraph& host, const RandomModel& model) {
    if (host.n() != model.n) throw std::invalid_argument("perturb: size mismatch");
    Digraph d = host;
    d.merge(gen_random(model));
    return d;
}

}  // namespace oc
