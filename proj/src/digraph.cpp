#include "oc/digraph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace oc {

Digraph Digraph::read(std::istream& is) {
    int n;
    long long m;
    if (!(is >> n >> m)) throw std::runtime_error("edge list: bad header");
    Digraph d(n);
    for (long long i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated");
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::runtime_error("edge list: vertex out of range");
        d.add_edge(u, v);
    }
    return d;
}

void Digraph::write(std::ostream& os) const {
    os << n_ << ' ' << edge_count() << '\n';
    for (int u = 0; u < n_; ++u)
        out_[size_t(u)].for_each([&](int v) { os << u << ' ' << v << '\n'; });
}

Digraph Digraph::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return read(f);
}

void Digraph::save_file(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    write(f);
}

int min_semidegree(const Digraph& d) {
    if (d.n() < 1) throw std::invalid_argument("empty digraph");
    int best = d.n();
    for (int v = 0; v < d.n(); ++v)
        best = std::min(best, std::min(d.outdeg(v), d.indeg(v)));
    return best;
}

int min_total_degree(const Digraph& d) {
    if (d.n() < 1) throw std::invalid_argument("empty digraph");
    int best = 2 * d.n();
    for (int v = 0; v < d.n(); ++v) best = std::min(best, d.total_deg(v));
    return best;
}

bool verify_embedding(const Digraph& d, const Embedding& e) {
    const auto& p = e.pattern;
    if (int(e.verts.size()) != p.k()) return false;
    std::vector<char> seen(size_t(d.n()), 0);
    for (int v : e.verts) {
        if (v < 0 || v >= d.n()) return false;
        if (seen[size_t(v)]) return false;
        seen[size_t(v)] = 1;
    }
    if (p.is_cycle() && p.k() == 2) {
        // digon: both edges between the two vertices
        return d.has_bidirected(e.verts[0], e.verts[1]);
    }
    int edges = p.edge_count();
    for (int i = 1; i <= edges; ++i) {
        int a = e.verts[size_t(i - 1)];
        int b = e.verts[size_t(i % p.k())];
        bool ok = (p.sign(i) == Sign::plus) ? d.has_edge(a, b) : d.has_edge(b, a);
        if (!ok) return false;
    }
    return true;
}

}  // namespace oc
