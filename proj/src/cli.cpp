#include "sumgames/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "sumgames/harness.hpp"
#include "sumgames/json_io.hpp"

namespace sumgames::cli {

namespace {

std::int64_t size_cap_from_env(std::int64_t fallback) {
    const char* raw = std::getenv("SUMGAMES_SIZE_CAP");
    if (!raw)
        return fallback;
    try {
        return std::stoll(raw);
    } catch (const std::exception&) {
        throw ParseError("SUMGAMES_SIZE_CAP must be an integer");
    }
}

std::vector<std::int64_t> parse_weight_spec(const std::string& spec) {
    std::vector<std::int64_t> weights;
    auto range = spec.find("..");
    if (range != std::string::npos) {
        std::int64_t lo = std::stoll(spec.substr(0, range));
        std::int64_t hi = std::stoll(spec.substr(range + 2));
        if (lo > hi)
            throw ParseError("empty weight range '" + spec + "'");
        for (std::int64_t w = lo; w <= hi; ++w)
            weights.push_back(w);
        return weights;
    }
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        if (item.empty())
            throw ParseError("bad weight list '" + spec + "'");
        weights.push_back(std::stoll(item));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return weights;
}

std::vector<std::int64_t> parse_int_list(const std::string& spec) {
    if (spec.empty())
        return {};
    return parse_weight_spec(spec);
}

Json edge_json(const LabeledGraph& g, int e) {
    const auto& ed = g.edge(e);
    return Json{{"from", g.name(ed.from)}, {"weight", ed.weight}, {"to", g.name(ed.to)}};
}

Json cycle_json(const LabeledGraph& g, const std::vector<int>& cycle) {
    Json arr = Json::array();
    for (int e : cycle)
        arr.push_back(edge_json(g, e));
    return arr;
}

Json verdict_json(const LabeledGraph& g, const SatisfactionVerdict& v) {
    Json doc{{"satisfies", v.satisfies}};
    if (!v.satisfies) {
        doc["witness"] = cycle_json(g, v.witness);
        doc["witness_weight"] = cycle_weight(g, v.witness);
    }
    return doc;
}

Json nmap_json(const LabeledGraph& g, const NMap& n) {
    Json values = Json::object();
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (n.is_bottom(v))
            values[g.name(v)] = nullptr;
        else
            values[g.name(v)] = n.at(v);
    }
    Json negative = Json::array();
    for (int v : n.negative)
        negative.push_back(g.name(v));
    Json doc{{"values", values}, {"negative", negative}};
    doc["v0"] = n.v0 ? Json(g.name(*n.v0)) : Json(nullptr);
    return doc;
}

Json morphism_json(const LabeledGraph& g, const Morphism& m) {
    Json assignment = Json::object();
    for (int v = 0; v < g.vertex_count(); ++v)
        assignment[g.name(v)] = m.assignment[static_cast<std::size_t>(v)].to_string();
    Json failures = Json::array();
    for (const auto& check : m.report)
        if (!check.holds) {
            Json f = edge_json(g, check.edge_id);
            f["reason"] = check.reason;
            failures.push_back(std::move(f));
        }
    return Json{{"assignment", assignment}, {"failures", failures}};
}

Json strategy_json(const Arena& a, const PositionalStrategy& s) {
    Json doc = Json::object();
    for (const auto& [v, e] : s.choice)
        doc[a.graph.name(v)] = e;  // canonical edge index
    return doc;
}

Json region_json(const Arena& a, const std::vector<char>& region) {
    Json arr = Json::array();
    for (int v = 0; v < a.graph.vertex_count(); ++v)
        if (region[static_cast<std::size_t>(v)])
            arr.push_back(a.graph.name(v));
    return arr;
}

Json certificate_json(const Arena& a, const CertificateResult& c) {
    Json doc{{"valid", c.valid}};
    if (!c.valid)
        doc["witness"] = cycle_json(a.graph, c.witness);
    return doc;
}

Json solution_json(const Arena& a, const Solution& s) {
    return Json{{"method", std::string(method_name(s.method))},
                {"eve_region", region_json(a, s.eve_region)},
                {"adam_region", region_json(a, s.adam_region())},
                {"eve_strategy", strategy_json(a, s.eve_strategy)},
                {"adam_strategy", strategy_json(a, s.adam_strategy)},
                {"tie_break", "least measure value, then lowest edge index"},
                {"certificates",
                 Json{{"eve", certificate_json(a, s.eve_certificate)},
                      {"adam", certificate_json(a, s.adam_certificate)}}}};
}

Json summary_json(const Summary& summary) {
    Json findings = Json::array();
    for (const auto& f : summary.findings)
        findings.push_back(Json{{"index", f.arena_index},
                                {"problems", f.problems},
                                {"arena", arena_to_json(f.arena)}});
    return Json{{"arenas", summary.arenas},
                {"certified", summary.certified},
                {"findings", findings}};
}

struct CommandError {
    int code;
};

LabeledGraph load_graph(const std::string& path) {
    return parse_labeled_graph(read_file(path));
}

Arena load_arena(const std::string& path) { return parse_arena(read_file(path)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"solver, constructor and certification toolkit for divergent-sum games"};
    app.require_subcommand(1);

    // satisfies
    auto* sat_cmd = app.add_subcommand("satisfies", "check that every cycle has weight >= 1");
    std::string sat_file;
    sat_cmd->add_option("graph", sat_file, "graph JSON file")->required();

    // nvalues
    auto* nv_cmd = app.add_subcommand("nvalues", "worst-descent values n(v)");
    std::string nv_file;
    nv_cmd->add_option("graph", nv_file, "graph JSON file")->required();

    // phi
    auto* phi_cmd = app.add_subcommand("phi", "build a morphism into the universal graph");
    std::string phi_file, phi_method = "paper";
    phi_cmd->add_option("graph", phi_file, "graph JSON file")->required();
    phi_cmd->add_option("--method", phi_method, "paper|fixpoint")
        ->check(CLI::IsMember({"paper", "fixpoint"}));

    // verify-morphism
    auto* vm_cmd = app.add_subcommand("verify-morphism", "check an assignment edge by edge");
    std::string vm_graph, vm_phi;
    vm_cmd->add_option("graph", vm_graph, "graph JSON file")->required();
    vm_cmd->add_option("assignment", vm_phi, "morphism JSON file")->required();

    // figure1
    auto* fig_cmd = app.add_subcommand("figure1", "the built-in worked example");
    bool fig_dot = false, fig_check = false;
    fig_cmd->add_flag("--dot", fig_dot, "emit DOT");
    fig_cmd->add_flag("--check", fig_check, "recompute and compare against expected values");

    // order
    auto* ord_cmd = app.add_subcommand("order", "compare two tuples in the graph order");
    std::string ord_u, ord_v;
    ord_cmd->add_option("u", ord_u, "tuple, e.g. (0,2)")->required();
    ord_cmd->add_option("v", ord_v, "tuple")->required();

    // edge
    auto* edge_cmd = app.add_subcommand("edge", "evaluate the universal edge predicate");
    std::string eu, ev;
    std::int64_t ew = 0;
    edge_cmd->add_option("u", eu, "source tuple")->required();
    edge_cmd->add_option("w", ew, "weight")->required();
    edge_cmd->add_option("v", ev, "target tuple")->required();

    // fragment
    auto* frag_cmd = app.add_subcommand("fragment", "materialize a finite window");
    std::int64_t frag_len = 0, frag_coord = 0;
    std::string frag_weights;
    bool frag_dot = false;
    frag_cmd->add_option("--max-len", frag_len, "maximum tuple length")->required();
    frag_cmd->add_option("--max-coord", frag_coord, "coordinate bound (exclusive)")->required();
    frag_cmd->add_option("--weights", frag_weights, "e.g. -2..2 or -1,0,1")->required();
    frag_cmd->add_flag("--dot", frag_dot, "emit DOT");

    // monotone
    auto* mono_cmd = app.add_subcommand("monotone", "exhaustive monotonicity check");
    std::int64_t mono_len = 0, mono_coord = 0;
    std::string mono_weights;
    mono_cmd->add_option("--max-len", mono_len, "maximum tuple length")->required();
    mono_cmd->add_option("--max-coord", mono_coord, "coordinate bound (exclusive)")->required();
    mono_cmd->add_option("--weights", mono_weights, "e.g. -2..2")->required();

    // reduce
    auto* red_cmd = app.add_subcommand("reduce", "difference word of a natural sequence");
    std::string red_input;
    red_cmd->add_option("--input", red_input, "comma-separated naturals")->required();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "decide the winner on an arena");
    std::string solve_file, solve_method = "energy";
    bool solve_dot = false, solve_json = true;
    solve_cmd->add_option("arena", solve_file, "arena JSON file")->required();
    solve_cmd->add_option("--method", solve_method, "brute|energy|umeasure")
        ->check(CLI::IsMember({"brute", "energy", "umeasure"}));
    solve_cmd->add_flag("--dot", solve_dot, "emit DOT with the strategies bolded");
    solve_cmd->add_flag("--json", solve_json, "emit JSON (default)");

    // harness
    auto* har_cmd = app.add_subcommand("harness", "certify families of small arenas");
    int har_maxv = 3, har_outdeg = 2, har_jobs = 0;
    std::string har_weights = "-1,0,1", har_replay = "findings", har_mutate;
    bool har_exhaustive = false, har_random = false;
    long long har_samples = 10000, har_cap = 2'000'000;
    std::uint64_t har_seed = 42;
    har_cmd->add_option("--max-vertices", har_maxv, "vertex count bound");
    har_cmd->add_option("--weights", har_weights, "weight set, e.g. -3..3");
    har_cmd->add_option("--max-out-degree", har_outdeg, "out-degree bound");
    har_cmd->add_flag("--exhaustive", har_exhaustive, "enumerate every arena");
    har_cmd->add_flag("--random", har_random, "sample arenas with the seeded generator");
    har_cmd->add_option("--samples", har_samples, "random mode: sample count");
    har_cmd->add_option("--seed", har_seed, "random mode: 64-bit seed");
    har_cmd->add_option("--cap", har_cap, "exhaustive mode: arena-count cap");
    har_cmd->add_option("--jobs", har_jobs, "worker count (default: hardware)");
    har_cmd->add_option("--replay-dir", har_replay, "directory for finding replays");
    har_cmd->add_option("--weaken", har_mutate,
                        "negative control: accept zero-weight cycles in this solver")
        ->check(CLI::IsMember({"brute", "energy", "umeasure"}));

    std::vector<const char*> argv;
    argv.push_back("sumgames");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::int64_t fragment_cap = size_cap_from_env(kDefaultSizeCap);

    try {
        if (sat_cmd->parsed()) {
            LabeledGraph g = load_graph(sat_file);
            SatisfactionVerdict v = satisfies(g);
            out << verdict_json(g, v).dump(2) << "\n";
            return v.satisfies ? 0 : 1;
        }

        if (nv_cmd->parsed()) {
            LabeledGraph g = load_graph(nv_file);
            out << nmap_json(g, compute_n(g)).dump(2) << "\n";
            return 0;
        }

        if (phi_cmd->parsed()) {
            LabeledGraph g = load_graph(phi_file);
            if (phi_method == "paper") {
                PaperPhi phi = phi_paper(g);
                Json doc = morphism_json(g, phi.morphism);
                doc["v0"] = phi.v0 ? Json(g.name(*phi.v0)) : Json(nullptr);
                Json reach = Json::array();
                for (int v : phi.reachable_from_v0)
                    reach.push_back(g.name(v));
                doc["reachable_from_v0"] = reach;
                out << doc.dump(2) << "\n";
                return phi.morphism.all_hold() ? 0 : 1;
            }
            auto result = phi_fixpoint(g, {}, fragment_cap);
            if (auto* bounds = std::get_if<BoundsExceeded>(&result)) {
                err << "bound ceiling exceeded at max_len=" << bounds->reached.max_len
                    << " max_coord=" << bounds->reached.max_coord << "\n";
                return 2;
            }
            const Morphism& m = std::get<Morphism>(result);
            out << morphism_json(g, m).dump(2) << "\n";
            return m.all_hold() ? 0 : 1;
        }

        if (vm_cmd->parsed()) {
            LabeledGraph g = load_graph(vm_graph);
            Json doc = Json::parse(read_file(vm_phi), nullptr, false);
            if (doc.is_discarded() || !doc.contains("assignment") ||
                !doc.at("assignment").is_object())
                throw ParseError("morphism file must carry an 'assignment' object");
            std::map<std::string, OrdTuple> assignment;
            for (const auto& [name, tuple] : doc.at("assignment").items())
                assignment[name] = OrdTuple::parse(tuple.get<std::string>());
            Morphism m = verify_morphism(g, assignment);
            out << morphism_json(g, m).dump(2) << "\n";
            return m.all_hold() ? 0 : 1;
        }

        if (fig_cmd->parsed()) {
            LabeledGraph g = figure1_graph();
            if (fig_dot) {
                out << graph_to_dot(g);
                return 0;
            }
            PaperPhi phi = phi_paper(g);
            Json expected_n = Json::object();
            for (const auto& [name, n] : figure1_expected_n())
                expected_n[name] = n;
            Json expected_phi = Json::object();
            for (const auto& [name, tuple] : figure1_expected_phi())
                expected_phi[name] = tuple;
            if (!fig_check) {
                Json anomalies = Json::array();
                for (int e : phi.morphism.failing_edges())
                    anomalies.push_back(edge_json(g, e));
                Json doc{{"graph", graph_to_json(g)},
                         {"n", expected_n},
                         {"phi", expected_phi},
                         {"anomalies", anomalies}};
                out << doc.dump(2) << "\n";
                return 0;
            }
            bool n_ok = true;
            NMap nmap = compute_n(g);
            for (const auto& [name, n] : figure1_expected_n()) {
                int v = g.require(name);
                n_ok = n_ok && !nmap.is_bottom(v) && nmap.at(v) == n;
            }
            bool phi_ok = true;
            for (const auto& [name, tuple] : figure1_expected_phi()) {
                int v = g.require(name);
                phi_ok = phi_ok &&
                         phi.morphism.assignment[static_cast<std::size_t>(v)].to_string() == tuple;
            }
            auto failures = phi.morphism.failing_edges();
            bool anomaly_ok = failures.size() == 1 &&
                              g.name(g.edge(failures.front()).from) == "v0" &&
                              g.edge(failures.front()).weight == 2 &&
                              g.name(g.edge(failures.front()).to) == "r1";
            Json doc{{"n_ok", n_ok}, {"phi_ok", phi_ok}, {"anomaly_ok", anomaly_ok}};
            Json anomalies = Json::array();
            for (int e : failures)
                anomalies.push_back(edge_json(g, e));
            doc["anomalies"] = anomalies;
            out << doc.dump(2) << "\n";
            return n_ok && phi_ok && anomaly_ok ? 0 : 1;
        }

        if (ord_cmd->parsed()) {
            OrdTuple u = OrdTuple::parse(ord_u);
            OrdTuple v = OrdTuple::parse(ord_v);
            if (order_gt(u, v)) {
                out << ">\n";
                return 0;
            }
            out << (u == v ? "=" : "<") << "\n";
            return 1;
        }

        if (edge_cmd->parsed()) {
            bool yes = is_edge(OrdTuple::parse(eu), ew, OrdTuple::parse(ev));
            out << (yes ? "edge" : "no-edge") << "\n";
            return yes ? 0 : 1;
        }

        if (frag_cmd->parsed()) {
            Fragment f = build_fragment(frag_len, frag_coord, parse_weight_spec(frag_weights),
                                        fragment_cap);
            if (frag_dot)
                out << graph_to_dot(f.graph);
            else
                out << graph_to_json(f.graph).dump(2) << "\n";
            return 0;
        }

        if (mono_cmd->parsed()) {
            Fragment f = build_fragment(mono_len, mono_coord, parse_weight_spec(mono_weights),
                                        fragment_cap);
            auto counterexample = check_monotonicity(f);
            if (!counterexample) {
                out << "Ok\n";
                return 0;
            }
            out << Json{{"u", counterexample->u.to_string()},
                        {"v", counterexample->v.to_string()},
                        {"weight", counterexample->weight},
                        {"v_prime", counterexample->v_prime.to_string()},
                        {"u_prime", counterexample->u_prime.to_string()}}
                       .dump(2)
                << "\n";
            return 1;
        }

        if (red_cmd->parsed()) {
            WeightWord word = reduce_finocc(parse_int_list(red_input));
            for (std::size_t i = 0; i < word.size(); ++i)
                out << (i ? "," : "") << word[i];
            out << "\n";
            return 0;
        }

        if (solve_cmd->parsed()) {
            Arena arena = load_arena(solve_file);
            auto method = parse_method(solve_method);
            try {
                Solution s = solve(arena, *method);
                if (solve_dot) {
                    std::set<int> bold;
                    for (const auto& [v, e] : s.eve_strategy.choice)
                        bold.insert(e);
                    for (const auto& [v, e] : s.adam_strategy.choice)
                        bold.insert(e);
                    out << "digraph {\n";
                    for (int v = 0; v < arena.graph.vertex_count(); ++v)
                        out << "  \"" << arena.graph.name(v) << "\" [shape="
                            << (arena.owner[static_cast<std::size_t>(v)] == Player::Adam
                                    ? "square"
                                    : "circle")
                            << "];\n";
                    for (int e = 0; e < arena.graph.edge_count(); ++e) {
                        const auto& ed = arena.graph.edge(e);
                        out << "  \"" << arena.graph.name(ed.from) << "\" -> \""
                            << arena.graph.name(ed.to) << "\" [label=\"" << ed.weight << "\"";
                        if (bold.count(e))
                            out << ",penwidth=2";
                        out << "];\n";
                    }
                    out << "}\n";
                } else {
                    out << solution_json(arena, s).dump(2) << "\n";
                }
                return s.eve_certificate.valid && s.adam_certificate.valid ? 0 : 1;
            } catch (const TheoremViolation& tv) {
                err << "finding: " << tv.what() << "\n";
                return 1;
            }
        }

        if (har_cmd->parsed()) {
            if (har_exhaustive == har_random)
                throw ParseError("choose exactly one of --exhaustive / --random");
            CampaignConfig config;
            config.max_vertices = har_maxv;
            config.weight_set = parse_weight_spec(har_weights);
            config.max_out_degree = har_outdeg;
            config.mode = har_exhaustive ? CampaignConfig::Mode::Exhaustive
                                         : CampaignConfig::Mode::Random;
            config.sample_count = har_samples;
            config.seed = har_seed;
            config.arena_cap = size_cap_from_env(har_cap);
            config.jobs = har_jobs;
            if (!har_mutate.empty())
                config.mutate = parse_method(har_mutate);
            Summary summary = run_campaign(config);
            out << summary_json(summary).dump(2) << "\n";
            if (!summary.findings.empty()) {
                std::filesystem::create_directories(har_replay);
                for (const auto& f : summary.findings) {
                    std::ofstream file(std::filesystem::path(har_replay) /
                                       ("arena_" + std::to_string(f.arena_index) + ".json"));
                    file << arena_to_json(f.arena).dump(2) << "\n";
                }
                err << summary.findings.size() << " finding(s) written to " << har_replay
                    << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace sumgames::cli
