#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "oc/rng.hpp"

namespace oc {

// Sparse bipartite template with robust matching properties: parts L = X u Y
// (X indices 0..nx-1, Y indices nx..nx+ny-1) and Z, with |X| = (1+beta)m,
// |Y| = 2m, |Z| = 3m, max degree at most 40 on both sides, and the working
// property that every m-subset X' of X extends to a perfect matching between
// X' u Y and Z.
//
// The template is built randomly (per-round one fresh X- and Y-neighbor per
// z, uniform among unsaturated targets) and verified lazily: build retries
// until matching smoke tests pass, robustness on the X' sets that actually
// arise is certified per call by robust_matching, and small instances can be
// checked exhaustively.
struct MatchTemplate {
    int m = 0;
    double beta = 0.0;
    int nx = 0, ny = 0, nz = 0;
    int degree_cap = 40;
    std::vector<std::vector<int>> adj;  // per z: sorted neighbor indices in [0, nx+ny)
    int build_attempts = 0;             // regenerations consumed by the builder

    int left_size() const { return nx + ny; }
    bool is_x_index(int l) const { return l < nx; }

    void write(std::ostream& os) const;  // bipartite edge-list: "nL nR E" then "l z" lines
    static MatchTemplate read(std::istream& is);
};

struct TemplateOptions {
    int x_rounds = 13;      // per-z neighbor rounds toward X
    int y_rounds = 20;      // per-z neighbor rounds toward Y
    int degree_cap = 40;
    int max_attempts = 10;  // internal regeneration budget for smoke tests
    int smoke_samples = 3;  // random X' smoke checks per attempt
};

// Degree caps respected on both sides; throws when beta*m is not an integer
// or the smoke tests cannot be satisfied within max_attempts.
MatchTemplate build_template(int m, double beta, uint64_t seed, TemplateOptions opts = {});

// Perfect matching saturating Z inside X' u Y, via Hopcroft-Karp; X_prime
// holds X indices, |X_prime| = m.  nullopt signals a defective template.
// Returned vector maps z -> left partner index.
std::optional<std::vector<int>> robust_matching(const MatchTemplate& tpl,
                                                const std::vector<int>& X_prime);

// True iff every X' of size m admits a perfect matching; enforced m <= 6.
bool verify_template_exhaustive(const MatchTemplate& tpl);

}  // namespace oc
