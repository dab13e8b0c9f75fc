#pragma once

#include <cstdint>

namespace oc {

// Counter-based splittable generator ("ocrng-sm64/v1").
//
// Output i of stream `key` is mix(key + i*GOLDEN) where mix is the SplitMix64
// finalizer.  Because each draw is a pure function of (key, counter), derived
// streams are reproducible regardless of thread scheduling; split(stream)
// derives an independent key.  The paper-level experiments only need i.i.d.
// uniforms, so statistical quality of SplitMix64 is more than enough.
class SplitRng {
public:
    static constexpr const char* name() { return "ocrng-sm64/v1"; }

    explicit SplitRng(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    uint64_t next_u64() { return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ull); }

    // Uniform in [0,1).
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

    // Uniform in [0, bound); bound >= 1.  Multiply-shift; the O(2^-64) bias
    // is irrelevant here and determinism is what matters.
    uint64_t next_below(uint64_t bound) {
        return uint64_t((__uint128_t(next_u64()) * bound) >> 64);
    }

    int next_int(int lo, int hi) {  // inclusive range
        return lo + int(next_below(uint64_t(hi - lo + 1)));
    }

    // Independent derived stream; deterministic in (parent key, stream id).
    SplitRng split(uint64_t stream) const {
        SplitRng r(0);
        r.key_ = mix(key_ ^ mix(stream + 0x632be59bd9b4e019ull));
        r.ctr_ = 0;
        return r;
    }

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace oc
