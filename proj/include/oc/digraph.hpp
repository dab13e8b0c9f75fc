#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oc/bitset.hpp"
#include "oc/pattern.hpp"

namespace oc {

// Loop-free digraph on dense vertex ids 0..n-1 with at most one edge per
// ordered pair.  Out- and in-neighborhoods are stored as bitsets so that
// every set-restricted scan is a word-level intersection.
//
// Construction is add_edge()s followed by read-only use; all algorithms take
// const references and the type is safe to share across threads once built.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n) : n_(n), out_(size_t(n), VertexSet(n)), in_(size_t(n), VertexSet(n)) {}

    int n() const { return n_; }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("loops not allowed");
        out_[size_t(u)].set(v);
        in_[size_t(v)].set(u);
    }

    bool has_edge(int u, int v) const { return out_[size_t(u)].test(v); }
    bool has_bidirected(int u, int v) const { return has_edge(u, v) && has_edge(v, u); }

    const VertexSet& out(int v) const { return out_[size_t(v)]; }
    const VertexSet& in(int v) const { return in_[size_t(v)]; }

    // Neighborhood selected by sign: plus = out, minus = in.
    const VertexSet& nbhd(Sign s, int v) const { return s == Sign::plus ? out_[size_t(v)] : in_[size_t(v)]; }

    VertexSet bidirected_nbhd(int v) const { return out_[size_t(v)] & in_[size_t(v)]; }

    int outdeg(int v) const { return out_[size_t(v)].count(); }
    int indeg(int v) const { return in_[size_t(v)].count(); }
    int deg(Sign s, int v) const { return s == Sign::plus ? outdeg(v) : indeg(v); }
    int total_deg(int v) const { return outdeg(v) + indeg(v); }

    long long edge_count() const {
        long long m = 0;
        for (int v = 0; v < n_; ++v) m += outdeg(v);
        return m;
    }

    // Union of edge sets; both digraphs must have the same n.
    void merge(const Digraph& o) {
        if (o.n_ != n_) throw std::invalid_argument("merge: size mismatch");
        for (int v = 0; v < n_; ++v) {
            out_[size_t(v)] |= o.out_[size_t(v)];
            in_[size_t(v)] |= o.in_[size_t(v)];
        }
    }

    bool operator==(const Digraph& o) const { return n_ == o.n_ && out_ == o.out_ && in_ == o.in_; }

    // Edge-list format: first line "n m", then m lines "u v" per edge u->v.
    static Digraph read(std::istream& is);
    void write(std::ostream& os) const;
    static Digraph load_file(const std::string& path);
    void save_file(const std::string& path) const;

private:
    int n_ = 0;
    std::vector<VertexSet> out_, in_;
};

// min over v of min(outdeg, indeg)
int min_semidegree(const Digraph& d);
// min over v of outdeg + indeg
int min_total_degree(const Digraph& d);

// A vertex sequence realizing a pattern in a digraph.
struct Embedding {
    OrientationPattern pattern;
    std::vector<int> verts;  // verts[i] plays position i+1

    int vertex_at(int pos) const { return verts[size_t(pos - 1)]; }
};

// True iff `e` is a valid copy of its pattern in `d`: vertex count matches,
// vertices distinct and in range, and every pattern edge is present with the
// required orientation (digons require both edges).  Pure; malformed input
// returns false rather than throwing.
bool verify_embedding(const Digraph& d, const Embedding& e);

}  // namespace oc
