#pragma once

#include <cstdint>
#include <cassert>
#include <vector>
#include <bit>

namespace oc {

// Fixed-universe dynamic bitset over vertex ids 0..n-1.
// Every set-valued object in this library (neighborhoods, candidate blocks,
// absorber bookkeeping) is one of these, so that set-restricted neighborhood
// scans are linear in 64-bit words.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int universe() const { return n_; }

    void set(int v) {
        assert(v >= 0 && v < n_);
        w_[v >> 6] |= (uint64_t{1} << (v & 63));
    }
    void reset(int v) {
        assert(v >= 0 && v < n_);
        w_[v >> 6] &= ~(uint64_t{1} << (v & 63));
    }
    bool test(int v) const {
        assert(v >= 0 && v < n_);
        return (w_[v >> 6] >> (v & 63)) & 1;
    }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    int count() const {
        int c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }
    bool empty() const {
        for (uint64_t x : w_) if (x) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { a |= b; return a; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { a &= b; return a; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { a -= b; return a; }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }

    bool intersects(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    int intersection_count(const VertexSet& o) const {
        assert(n_ == o.n_);
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    bool is_subset_of(const VertexSet& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // Lowest set id, or -1.
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
        return -1;
    }

    // Lowest set id strictly greater than v, or -1.
    int next(int v) const {
        int i = (v + 1) >> 6;
        if (i >= int(w_.size())) return -1;
        uint64_t x = w_[i] & ~((uint64_t{1} << ((v + 1) & 63)) - 1);
        while (true) {
            if (x) return int(i * 64 + std::countr_zero(x));
            if (++i >= int(w_.size())) return -1;
            x = w_[i];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t x = w_[i];
            while (x) {
                f(int(i * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(size_t(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    static VertexSet of(int n, const std::vector<int>& vs) {
        VertexSet s(n);
        for (int v : vs) s.set(v);
        return s;
    }

    static VertexSet full(int n) {
        VertexSet s(n);
        for (int i = 0; i < n; ++i) s.set(i);
        return s;
    }

    // Lowest `k` members (fewer if the set is smaller).
    std::vector<int> lowest(int k) const {
        std::vector<int> out;
        out.reserve(size_t(k));
        for (int v = first(); v != -1 && int(out.size()) < k; v = next(v)) out.push_back(v);
        return out;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace oc
