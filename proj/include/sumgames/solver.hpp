#pragma once

#include <map>

#include "sumgames/morphism.hpp"

namespace sumgames {

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A positional-determinacy breach at desk scale: no single uniform
/// strategy covers a computed region, or the two players' regions fail to
/// partition the arena. Raised as a first-class finding, never ignored.
struct TheoremViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SolveMethod { Brute, Energy, UMeasure };

std::string_view method_name(SolveMethod m);
std::optional<SolveMethod> parse_method(std::string_view name);

struct PositionalStrategy {
    Player player = Player::Eve;
    std::map<int, int> choice;  // owned vertex -> edge id (canonical order)
};

struct CertificateResult {
    bool valid = false;
    std::vector<int> witness;  // edge ids of the refuting cycle, if any
};

/// Checks a strategy against its claimed region, independently of every
/// solver. Eve: in the subgraph where her vertices keep only the chosen
/// edge, no cycle of weight <= 0 is reachable from the region. Adam: in
/// his fixed subgraph, no cycle of weight >= 1 is reachable.
CertificateResult verify_certificate(const Arena& arena, const PositionalStrategy& strategy,
                                     const std::vector<char>& region);

struct Solution {
    SolveMethod method = SolveMethod::Brute;
    std::vector<char> eve_region;  // by vertex; adam region is the complement
    PositionalStrategy eve_strategy;
    PositionalStrategy adam_strategy;
    CertificateResult eve_certificate;
    CertificateResult adam_certificate;

    std::vector<char> adam_region() const;
};

/// Self-test instrumentation: deliberately weakens a solver's cycle
/// criterion from >= 1 to >= 0 so the harness can demonstrate it would
/// catch a wrong solver.
struct SolverTweaks {
    bool accept_zero_cycles = false;
};

Solution solve(const Arena& arena, SolveMethod method, const SolverTweaks& tweaks = {});

}  // namespace sumgames
