#pragma once

#include "sumgames/solver.hpp"

namespace sumgames {

struct CampaignConfig {
    enum class Mode { Exhaustive, Random };

    int max_vertices = 3;
    std::vector<std::int64_t> weight_set = {-1, 0, 1};
    int max_out_degree = 2;
    Mode mode = Mode::Exhaustive;
    long long sample_count = 10000;  // random mode
    std::uint64_t seed = 42;         // random mode
    long long arena_cap = 2'000'000;  // exhaustive mode guard
    int jobs = 0;                     // 0 = hardware concurrency
    std::optional<SolveMethod> mutate;  // weaken one solver (negative control)
};

/// Certification of a single arena: all three solvers must agree on Eve's
/// region, one uniform positional strategy per player must pass the
/// independent certificate checker, and the verdicts partition the
/// vertices. Any daylight lands in `problems`.
struct CertReport {
    std::string arena_id;
    std::vector<std::pair<std::string, Player>> verdicts;  // vertex -> certified winner
    PositionalStrategy eve_strategy;
    PositionalStrategy adam_strategy;
    bool methods_agree = false;
    bool certificates_valid = false;
    std::vector<std::string> problems;

    bool certified() const { return problems.empty(); }
};

CertReport certify_arena(const Arena& arena, std::optional<SolveMethod> mutate = {},
                         std::string arena_id = {});

struct Finding {
    long long arena_index = 0;
    Arena arena;  // serialized for replay
    std::vector<std::string> problems;
};

struct Summary {
    long long arenas = 0;
    long long certified = 0;
    std::vector<Finding> findings;  // ordered by arena index
};

/// Enumerates (exhaustive) or samples (random) arenas, certifies each and
/// aggregates. Deterministic for a fixed config, independent of the worker
/// count. `stop_at_first_finding` short-circuits negative-control runs.
Summary run_campaign(const CampaignConfig& config, bool stop_at_first_finding = false);

/// Number of arenas the exhaustive enumeration would visit; throws
/// SizeCapError beyond the cap.
long long exhaustive_count(const CampaignConfig& config);

/// The arena at a given position of the exhaustive enumeration
/// (deterministic; usable to replay a finding by index).
Arena exhaustive_arena(const CampaignConfig& config, long long index);

}  // namespace sumgames
