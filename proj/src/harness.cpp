#include "sumgames/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace sumgames {

namespace {

std::string region_names(const Arena& arena, const std::vector<char>& region) {
    std::string out = "{";
    bool first = true;
    for (int v = 0; v < arena.graph.vertex_count(); ++v)
        if (region[static_cast<std::size_t>(v)]) {
            if (!first)
                out += ",";
            out += arena.graph.name(v);
            first = false;
        }
    return out + "}";
}

// ---- exhaustive enumeration -------------------------------------------------

// Per vertex, the possible outgoing-edge sets: all subsets of the
// (target, weight) pairs of size 1..max_out_degree, pairs ordered by
// (target, weight), subsets in lexicographic combination order.
std::vector<std::vector<std::pair<int, std::int64_t>>> edge_menus(
    int n, const std::vector<std::int64_t>& weights, int max_out_degree) {
    std::vector<std::pair<int, std::int64_t>> pairs;
    for (int t = 0; t < n; ++t)
        for (std::int64_t w : weights)
            pairs.emplace_back(t, w);

    std::vector<std::vector<std::pair<int, std::int64_t>>> menus;
    std::vector<std::size_t> idx;
    auto emit = [&] {
        std::vector<std::pair<int, std::int64_t>> menu;
        for (std::size_t i : idx)
            menu.push_back(pairs[i]);
        menus.push_back(std::move(menu));
    };
    for (int size = 1; size <= max_out_degree && size <= static_cast<int>(pairs.size()); ++size) {
        idx.assign(static_cast<std::size_t>(size), 0);
        for (int i = 0; i < size; ++i)
            idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
        while (true) {
            emit();
            int i = size - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == pairs.size() - static_cast<std::size_t>(size - i))
                --i;
            if (i < 0)
                break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return menus;
}

std::vector<std::string> vertex_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back("v" + std::to_string(i));
    return names;
}

struct ExhaustivePlan {
    struct Block {
        int n;
        std::vector<std::vector<std::pair<int, std::int64_t>>> menus;
        long long arenas;  // |menus|^n * 2^n
    };
    std::vector<Block> blocks;
    long long total = 0;
};

ExhaustivePlan plan_exhaustive(const CampaignConfig& config) {
    ExhaustivePlan plan;
    for (int n = 1; n <= config.max_vertices; ++n) {
        auto menus = edge_menus(n, config.weight_set, config.max_out_degree);
        long long arenas = 1;
        try {
            for (int i = 0; i < n; ++i)
                arenas = checked_mul(arenas, static_cast<long long>(menus.size()));
            for (int i = 0; i < n; ++i)
                arenas = checked_mul(arenas, 2);
            plan.total = checked_add(plan.total, arenas);
        } catch (const OverflowError&) {
            throw SizeCapError("exhaustive campaign exceeds the arena cap");
        }
        plan.blocks.push_back({n, std::move(menus), arenas});
        if (plan.total > config.arena_cap)
            throw SizeCapError("exhaustive campaign of " + std::to_string(plan.total) +
                               "+ arenas exceeds the cap of " + std::to_string(config.arena_cap));
    }
    return plan;
}

Arena decode_exhaustive(const ExhaustivePlan& plan, long long index) {
    for (const auto& block : plan.blocks) {
        if (index >= block.arenas) {
            index -= block.arenas;
            continue;
        }
        int n = block.n;
        auto menu_count = static_cast<long long>(block.menus.size());
        long long owner_mask = index % (1LL << n);
        long long combo = index / (1LL << n);
        Arena arena;
        for (const auto& name : vertex_names(n))
            arena.graph.add_vertex(name);
        for (int v = 0; v < n; ++v) {
            arena.owner.push_back((owner_mask >> v) & 1 ? Player::Adam : Player::Eve);
            auto menu_index = static_cast<std::size_t>(combo % menu_count);
            combo /= menu_count;
            for (auto [target, weight] : block.menus[menu_index])
                arena.graph.add_edge(v, weight, target);
        }
        return arena;
    }
    throw std::logic_error("arena index out of range");
}

// ---- random generation -------------------------------------------------------

// Deterministic across platforms: all draws reduce raw 64-bit outputs.
std::vector<Arena> sample_arenas(const CampaignConfig& config) {
    std::mt19937_64 rng(config.seed);
    auto draw = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };
    std::vector<Arena> arenas;
    arenas.reserve(static_cast<std::size_t>(config.sample_count));
    for (long long s = 0; s < config.sample_count; ++s) {
        int n = 1 + draw(static_cast<std::uint64_t>(config.max_vertices));
        Arena arena;
        for (const auto& name : vertex_names(n))
            arena.graph.add_vertex(name);
        for (int v = 0; v < n; ++v) {
            arena.owner.push_back(draw(2) ? Player::Adam : Player::Eve);
            auto pair_count = static_cast<long long>(n) *
                              static_cast<long long>(config.weight_set.size());
            int degree = 1 + draw(static_cast<std::uint64_t>(
                                 std::min<long long>(config.max_out_degree, pair_count)));
            std::set<std::pair<int, std::int64_t>> chosen;
            while (static_cast<int>(chosen.size()) < degree) {
                int target = draw(static_cast<std::uint64_t>(n));
                std::int64_t weight =
                    config.weight_set[static_cast<std::size_t>(draw(config.weight_set.size()))];
                chosen.emplace(target, weight);
            }
            for (auto [target, weight] : chosen)
                arena.graph.add_edge(v, weight, target);
        }
        arena.validate();
        arenas.push_back(std::move(arena));
    }
    return arenas;
}

}  // namespace

CertReport certify_arena(const Arena& arena, std::optional<SolveMethod> mutate,
                         std::string arena_id) {
    CertReport report;
    report.arena_id = std::move(arena_id);
    const std::array<SolveMethod, 3> methods = {SolveMethod::Brute, SolveMethod::Energy,
                                                SolveMethod::UMeasure};
    std::array<std::optional<Solution>, 3> solutions;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        SolverTweaks tweaks;
        tweaks.accept_zero_cycles = mutate && *mutate == methods[i];
        try {
            solutions[i] = solve(arena, methods[i], tweaks);
        } catch (const TheoremViolation& tv) {
            report.problems.push_back(std::string(method_name(methods[i])) + ": " + tv.what());
        }
    }

    report.methods_agree = true;
    const Solution* reference = nullptr;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (!solutions[i])
            continue;
        if (!reference) {
            reference = &*solutions[i];
            continue;
        }
        if (solutions[i]->eve_region != reference->eve_region) {
            report.methods_agree = false;
            report.problems.push_back(
                "region disagreement: " + std::string(method_name(reference->method)) + " " +
                region_names(arena, reference->eve_region) + " vs " +
                std::string(method_name(solutions[i]->method)) + " " +
                region_names(arena, solutions[i]->eve_region));
        }
    }

    report.certificates_valid = true;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (!solutions[i])
            continue;
        if (!solutions[i]->eve_certificate.valid) {
            report.certificates_valid = false;
            report.problems.push_back(std::string(method_name(methods[i])) +
                                      ": Eve certificate invalid on " +
                                      region_names(arena, solutions[i]->eve_region));
        }
        if (!solutions[i]->adam_certificate.valid) {
            report.certificates_valid = false;
            report.problems.push_back(std::string(method_name(methods[i])) +
                                      ": Adam certificate invalid on " +
                                      region_names(arena, solutions[i]->adam_region()));
        }
    }

    if (reference) {
        for (int v = 0; v < arena.graph.vertex_count(); ++v)
            report.verdicts.emplace_back(arena.graph.name(v),
                                         reference->eve_region[static_cast<std::size_t>(v)]
                                             ? Player::Eve
                                             : Player::Adam);
        report.eve_strategy = reference->eve_strategy;
        report.adam_strategy = reference->adam_strategy;
    } else {
        report.problems.push_back("no solver produced a solution");
    }
    return report;
}

long long exhaustive_count(const CampaignConfig& config) {
    return plan_exhaustive(config).total;
}

Arena exhaustive_arena(const CampaignConfig& config, long long index) {
    return decode_exhaustive(plan_exhaustive(config), index);
}

Summary run_campaign(const CampaignConfig& config, bool stop_at_first_finding) {
    ExhaustivePlan plan;
    std::vector<Arena> samples;
    long long total = 0;
    if (config.mode == CampaignConfig::Mode::Exhaustive) {
        plan = plan_exhaustive(config);
        total = plan.total;
    } else {
        samples = sample_arenas(config);
        total = static_cast<long long>(samples.size());
    }

    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());

    std::atomic<long long> next_chunk{0};
    std::atomic<bool> stop{false};
    constexpr long long kChunk = 256;
    std::mutex merge_mutex;
    long long certified = 0;
    std::vector<Finding> findings;

    auto worker = [&] {
        long long local_certified = 0;
        std::vector<Finding> local_findings;
        while (!stop.load(std::memory_order_relaxed)) {
            long long begin = next_chunk.fetch_add(kChunk);
            if (begin >= total)
                break;
            long long end = std::min(begin + kChunk, total);
            for (long long i = begin; i < end; ++i) {
                Arena arena = config.mode == CampaignConfig::Mode::Exhaustive
                                  ? decode_exhaustive(plan, i)
                                  : samples[static_cast<std::size_t>(i)];
                CertReport report = certify_arena(arena, config.mutate, std::to_string(i));
                if (report.certified()) {
                    ++local_certified;
                } else {
                    local_findings.push_back({i, std::move(arena), report.problems});
                    if (stop_at_first_finding)
                        stop.store(true, std::memory_order_relaxed);
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        certified += local_certified;
        findings.insert(findings.end(), std::make_move_iterator(local_findings.begin()),
                        std::make_move_iterator(local_findings.end()));
    };

    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    std::sort(findings.begin(), findings.end(),
              [](const Finding& a, const Finding& b) { return a.arena_index < b.arena_index; });

    Summary summary;
    summary.arenas = stop_at_first_finding && !findings.empty()
                         ? certified + static_cast<long long>(findings.size())
                         : total;
    summary.certified = certified;
    summary.findings = std::move(findings);
    return summary;
}

}  // namespace sumgames
