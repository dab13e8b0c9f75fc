#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oc {

// Orientation of one edge of a path/cycle pattern, viewed along the vertex
// order: plus = the edge points from position i to position i+1.
enum class Sign : uint8_t { plus, minus };

inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

// A sign sequence specifying an oriented path or cycle up to isomorphism.
//
// Positions are 1-based: vertices u_1..u_k.  Edge i joins u_i and u_{i+1}
// (indices mod k for cycles, so a cycle has k edges and a path k-1).
// A k=2 cycle is a digon and means "both edges between two vertices"; its
// stored signs are ignored by verification.
//
// Cycles keep an explicit distinguished starting edge; rotations are not
// canonicalized.
class OrientationPattern {
public:
    enum class Kind { path, cycle };

    OrientationPattern() = default;
    OrientationPattern(Kind kind, std::vector<Sign> signs)
        : kind_(kind), signs_(std::move(signs)) {
        k_ = int(signs_.size()) + (kind_ == Kind::path ? 1 : 0);
        if (k_ < 2) throw std::invalid_argument("pattern needs at least 2 vertices");
    }

    Kind kind() const { return kind_; }
    bool is_cycle() const { return kind_ == Kind::cycle; }
    int k() const { return k_; }
    int edge_count() const { return int(signs_.size()); }

    // Sign of edge e (1-based; e in [1, k-1] for paths, [1, k] for cycles).
    Sign sign(int e) const {
        if (e < 1 || e > edge_count()) throw std::out_of_range("pattern edge index");
        return signs_[size_t(e - 1)];
    }

    // Orientation of the edge between adjacent positions a and b, viewed from
    // a: plus when the edge points a -> b.  Accepts both orders and, for
    // cycles, the wrap-around pair.
    Sign sigma(int a, int b) const {
        check_pos(a);
        check_pos(b);
        if (b == a + 1) return sign(a);
        if (a == b + 1) return flip(sign(b));
        if (is_cycle() && a == k_ && b == 1) return sign(k_);
        if (is_cycle() && b == k_ && a == 1) return flip(sign(k_));
        throw std::invalid_argument("sigma: positions not adjacent");
    }

    // In-degree of position i inside the pattern (paths only, internal i).
    int indegree(int i) const {
        if (is_cycle()) {
            int prev = (i == 1) ? k_ : i - 1;
            return (sigma(prev, i) == Sign::plus ? 1 : 0) +
                   (sigma(i, i == k_ ? 1 : i + 1) == Sign::minus ? 1 : 0);
        }
        check_pos(i);
        int d = 0;
        if (i > 1 && sign(i - 1) == Sign::plus) ++d;
        if (i < k_ && sign(i) == Sign::minus) ++d;
        return d;
    }

    const std::vector<Sign>& signs() const { return signs_; }

    std::string to_string() const {
        std::string s(is_cycle() ? "cycle " : "path ");
        for (Sign x : signs_) s += sign_char(x);
        return s;
    }

    static OrientationPattern parse(const std::string& text);

    static OrientationPattern consistent(Kind kind, int k);
    static OrientationPattern antidirected(Kind kind, int k);  // cycle k must be even
    static OrientationPattern from_signs(Kind kind, const std::string& s);

private:
    void check_pos(int i) const {
        if (i < 1 || i > k_) throw std::out_of_range("pattern position");
    }

    Kind kind_ = Kind::path;
    int k_ = 0;
    std::vector<Sign> signs_;
};

// The oriented subpath on positions i..j of p (1-based, inclusive), signs
// sliced exactly.  For cycles the window may wrap; its length j-i+1 counts
// with wrap-around and must be at most k.
OrientationPattern subpattern(const OrientationPattern& p, int i, int j);

// Cyclic window of `len` vertices whose first edge is cycle edge `start_edge`.
OrientationPattern cycle_window(const OrientationPattern& c, int start_edge, int len);

}  // namespace oc
