#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "oc/witness.hpp"

namespace oc {

// Expected failure of a construction step: which stage gave up, an optional
// pseudorandomness witness, and a human-readable detail line.
struct FailureReport {
    std::string stage;
    std::optional<PseudorandomWitness> witness;
    std::string detail;
};

// Value-or-failure return for the constructive pipeline.  Contract
// violations still throw; this type is for the expected "the strategy did
// not go through on this instance" outcomes.
template <typename T>
class Outcome {
public:
    Outcome(T value) : v_(std::move(value)) {}
    Outcome(FailureReport f) : v_(std::move(f)) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    T& value() {
        if (!ok()) throw std::logic_error("Outcome: no value (" + failure().stage + ")");
        return std::get<T>(v_);
    }
    const T& value() const {
        if (!ok()) throw std::logic_error("Outcome: no value (" + failure().stage + ")");
        return std::get<T>(v_);
    }
    const FailureReport& failure() const { return std::get<FailureReport>(v_); }
    FailureReport take_failure() && { return std::get<FailureReport>(std::move(v_)); }

private:
    std::variant<T, FailureReport> v_;
};

inline FailureReport fail(std::string stage, std::string detail) {
    return FailureReport{std::move(stage), std::nullopt, std::move(detail)};
}

inline FailureReport fail_with_witness(std::string stage, PseudorandomWitness w, std::string detail) {
    return FailureReport{std::move(stage), std::move(w), std::move(detail)};
}

// Internal invariant check that stays on in release builds; these guard the
// size identities and containment relations of the absorber constructions.
#define OC_CHECK(cond, msg)                                         \
    do {                                                            \
        if (!(cond)) throw std::logic_error(std::string("check failed: ") + (msg)); \
    } while (0)

}  // namespace oc
