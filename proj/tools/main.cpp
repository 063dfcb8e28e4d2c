// Command-line front end: instance generation, axiom verification, single
// strategy runs, seeded experiments, and IR tree materialization.
//
// Exit codes: 0 on success/pass, 2 when a check or acceptance threshold
// fails, 1 on usage or input errors.

#include <CLI11.hpp>
#include <iostream>
#include <memory>

#include "symtree/canonical.hpp"
#include "symtree/experiments.hpp"
#include "symtree/generators.hpp"
#include "symtree/graph.hpp"
#include "symtree/ir_tree.hpp"
#include "symtree/seeding.hpp"
#include "symtree/strategies.hpp"
#include "symtree/tree_io.hpp"

namespace {

using namespace symtree;

constexpr int k_exit_ok = 0;
constexpr int k_exit_error = 1;
constexpr int k_exit_threshold = 2;

struct gen_args {
    std::string family = "mh";
    std::size_t height = 3;
    double prune_prob = 0.25;
    bool planted = false;
    std::uint64_t seed = 1;
    orbit_tree_spec orbit;
    std::string in_path;
    std::string out = "tree1.tree";
    std::string out2 = "tree2.tree";
};

int run_gen(const gen_args& a) {
    if (a.family == "mh") {
        save_tree_file(complete_binary(a.height), a.out);
        std::cout << "wrote " << a.out << "\n";
    } else if (a.family == "shuffle") {
        if (a.in_path.empty()) throw CLI::ValidationError("--in is required for shuffle");
        save_tree_file(iso_shuffle(load_tree_file(a.in_path), a.seed), a.out);
        std::cout << "wrote " << a.out << "\n";
    } else if (a.family == "orbit") {
        save_tree_file(orbit_tree(a.orbit, a.seed), a.out);
        std::cout << "wrote " << a.out << "\n";
    } else if (a.family == "iso-pair") {
        search_tree base = complete_binary(a.height);
        save_tree_file(base, a.out);
        save_tree_file(iso_shuffle(base, a.seed), a.out2);
        std::cout << "wrote " << a.out << " " << a.out2 << "\n";
    } else if (a.family == "noniso-pair") {
        auto [t1, t2] = disjoint_color_pair(a.height, a.seed);
        save_tree_file(t1, a.out);
        save_tree_file(t2, a.out2);
        std::cout << "wrote " << a.out << " " << a.out2 << "\n";
    } else if (a.family == "pruned-pair") {
        auto [t1, t2] = pruned_pair(a.height, a.prune_prob, a.seed, a.planted);
        save_tree_file(t1, a.out);
        save_tree_file(t2, a.out2);
        std::cout << "wrote " << a.out << " " << a.out2 << "\n";
    } else {
        throw CLI::ValidationError("unknown family: " + a.family);
    }
    return k_exit_ok;
}

int run_verify(const std::string& path1, const std::string& path2, std::size_t cap) {
    search_tree t1 = load_tree_file(path1);
    std::optional<search_tree> t2;
    if (!path2.empty()) t2 = load_tree_file(path2);
    axiom_report r = verify_axiom(t1, t2 ? &*t2 : nullptr, cap);
    std::cout << "pairs checked: " << r.pairs_checked << "\n";
    if (r.pass) {
        std::cout << "axiom holds\n";
        return k_exit_ok;
    }
    for (const axiom_violation& v : r.violations) std::cout << "violation: " << describe(v) << "\n";
    return k_exit_threshold;
}

int run_run(const std::string& strategy_name, const std::string& p1, const std::string& p2,
            double epsilon, unsigned walk_cap_c, std::uint64_t seed) {
    auto strategy = strategy_from_string(strategy_name);
    if (!strategy) throw CLI::ValidationError("unknown strategy: " + strategy_name);
    search_tree t1 = load_tree_file(p1);
    search_tree t2 = load_tree_file(p2);
    exploration_session s1(t1, mix_seed(seed, 1));
    exploration_session s2(t2, mix_seed(seed, 2));
    verdict v = run_strategy(*strategy, s1, s2, mix_seed(seed, 3), epsilon, walk_cap_c);

    tree_metrics m1 = metrics(t1), m2 = metrics(t2);
    trial_record r;
    r.trial = 0;
    r.seed = seed;
    r.h = static_cast<unsigned>(std::max(m1.height, m2.height));
    r.n = std::min(m1.size, m2.size);
    r.N = std::max(m1.size, m2.size);
    r.d = std::max(m1.max_degree, m2.max_degree);
    r.verdict = v.kind;
    r.cost1 = v.cost1;
    r.cost2 = v.cost2;
    r.restarts = v.stats.restarts;
    std::string csv = to_csv({r});
    std::cout << csv.substr(csv.find('\n') + 1);
    return k_exit_ok;
}

int run_ir_tree(const std::string& graph_path, const std::string& out,
                const std::string& graph2_path, const std::string& out2) {
    auto interner = std::make_shared<color_interner>();
    save_tree_file(ir_search_tree(parse_graph_file(graph_path), interner).materialize(), out);
    std::cout << "wrote " << out << "\n";
    if (!graph2_path.empty()) {
        save_tree_file(ir_search_tree(parse_graph_file(graph2_path), interner).materialize(),
                       out2);
        std::cout << "wrote " << out2 << "\n";
    }
    return k_exit_ok;
}

void print_points(const scaling_result& r) {
    for (const scaling_point& p : r.points)
        std::cout << "  h=" << p.height << " n=" << p.n << " median=" << p.median_cost
                  << " mean=" << p.mean_cost << "\n";
}

int run_bench(const std::string& experiment, experiment_config cfg,
              const std::string& heights_csv) {
    if (!heights_csv.empty()) {
        cfg.heights.clear();
        std::stringstream ss(heights_csv);
        for (std::string tok; std::getline(ss, tok, ',');)
            cfg.heights.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    if (experiment == "error-rate") {
        error_rate_result r = error_rate_experiment(cfg);
        std::cout << "error-rate: trials=" << cfg.trials << " failures=" << r.failures
                  << " fraction=" << r.fraction << " threshold=" << r.threshold << " ci95=["
                  << r.ci_low << "," << r.ci_high << "] -> " << (r.pass ? "PASS" : "FAIL")
                  << "\n";
        return r.pass ? k_exit_ok : k_exit_threshold;
    }
    if (experiment == "scaling") {
        scaling_result r = scaling_experiment(cfg);
        print_points(r);
        std::cout << "scaling: exponent="
                  << (r.applicable ? std::to_string(r.exponent) : std::string("n/a"))
                  << " window=[" << r.window_lo << "," << r.window_hi << "] -> "
                  << (r.pass ? "PASS" : "FAIL") << "\n";
        return r.pass ? k_exit_ok : k_exit_threshold;
    }
    if (experiment == "split-probability") {
        split_probability_result r = split_probability_experiment(cfg);
        std::cout << "split-probability: splits=" << r.splits_returned
                  << " balanced=" << r.balanced_count << " fraction=" << r.fraction
                  << " threshold=" << r.threshold << " budget_violations=" << r.budget_violations
                  << " -> " << (r.pass ? "PASS" : "FAIL") << "\n";
        return r.pass ? k_exit_ok : k_exit_threshold;
    }
    if (experiment == "ir-occurrence") {
        ir_occurrence_result r = ir_occurrence_experiment(standard_graph_corpus());
        std::cout << to_csv(r);
        if (!cfg.out_path.empty()) write_file(cfg.out_path, to_csv(r));
        std::cout << "ir-occurrence -> " << (r.pass ? "PASS" : "FAIL") << "\n";
        return r.pass ? k_exit_ok : k_exit_threshold;
    }
    throw CLI::ValidationError("unknown experiment: " + experiment);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"black box search tree toolkit"};
    app.require_subcommand(1);

    gen_args g;
    CLI::App* gen = app.add_subcommand("gen", "generate instances");
    gen->add_option("--family", g.family,
                    "mh | shuffle | orbit | iso-pair | noniso-pair | pruned-pair");
    gen->add_option("--height", g.height, "tree height parameter");
    gen->add_option("--prune-prob", g.prune_prob, "pruning probability");
    gen->add_flag("--planted", g.planted, "plant a full color matching (pruned-pair)");
    gen->add_option("--seed", g.seed, "generator seed");
    gen->add_option("--size", g.orbit.target_size, "orbit: approximate node count");
    gen->add_option("--max-degree", g.orbit.max_degree, "orbit: maximum degree");
    gen->add_option("--dup-prob", g.orbit.duplication_prob, "orbit: duplication probability");
    gen->add_option("--height-cap", g.orbit.height_cap, "orbit: height cap");
    gen->add_option("--in", g.in_path, "input tree (shuffle)");
    gen->add_option("--out", g.out, "output path");
    gen->add_option("--out2", g.out2, "second output path (pair families)");

    std::string v_tree1, v_tree2;
    std::size_t v_cap = 300;
    CLI::App* verify = app.add_subcommand("verify-axiom", "check the invariance axiom");
    verify->add_option("tree1", v_tree1, "tree file")->required();
    verify->add_option("tree2", v_tree2, "optional second tree file");
    verify->add_option("--node-cap", v_cap, "exhaustive-check size cap");

    std::string r_strategy = "mc", r_tree1, r_tree2;
    double r_epsilon = 0.125;
    unsigned r_walk_cap = 4;
    std::uint64_t r_seed = 1;
    CLI::App* run = app.add_subcommand("run", "run one strategy on a tree pair");
    run->add_option("--strategy", r_strategy, "mc | mc-budgeted | lv | det");
    run->add_option("--epsilon", r_epsilon, "error bound for mc strategies");
    run->add_option("--walk-cap-c", r_walk_cap, "walk length cap constant");
    run->add_option("--seed", r_seed, "run seed");
    run->add_option("--tree1", r_tree1, "first tree file")->required();
    run->add_option("--tree2", r_tree2, "second tree file")->required();

    std::string b_experiment, b_family = "iso-mh", b_strategy = "mc", b_heights;
    experiment_config b_cfg;
    CLI::App* bench = app.add_subcommand("bench", "seeded experiment");
    bench->add_option("experiment", b_experiment,
                      "error-rate | scaling | split-probability | ir-occurrence")
        ->required();
    bench->add_option("--family", b_family, "instance family");
    bench->add_option("--strategy", b_strategy, "strategy under test");
    bench->add_option("--height", b_cfg.height, "instance height");
    bench->add_option("--heights", b_heights, "comma-separated heights (scaling)");
    bench->add_option("--epsilon", b_cfg.epsilon, "error bound");
    bench->add_option("--prune-prob", b_cfg.prune_prob, "pruning probability");
    bench->add_option("--trials", b_cfg.trials, "trial count");
    bench->add_option("--seed", b_cfg.base_seed, "base seed");
    bench->add_option("--out", b_cfg.out_path, "CSV output path");

    std::string i_graph, i_graph2, i_out = "ir1.tree", i_out2 = "ir2.tree";
    CLI::App* ir = app.add_subcommand("ir-tree", "materialize an IR search tree");
    ir->add_option("--graph", i_graph, "graph file")->required();
    ir->add_option("--out", i_out, "output tree path");
    ir->add_option("--graph2", i_graph2, "second graph (shared color table)");
    ir->add_option("--out2", i_out2, "second output tree path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen(g);
        if (verify->parsed()) return run_verify(v_tree1, v_tree2, v_cap);
        if (run->parsed())
            return run_run(r_strategy, r_tree1, r_tree2, r_epsilon, r_walk_cap, r_seed);
        if (bench->parsed()) {
            auto fam = family_from_string(b_family);
            auto strat = strategy_from_string(b_strategy);
            if (!fam) throw CLI::ValidationError("unknown family: " + b_family);
            if (!strat) throw CLI::ValidationError("unknown strategy: " + b_strategy);
            b_cfg.family = *fam;
            b_cfg.strategy = *strat;
            b_cfg.name = b_experiment;
            return run_bench(b_experiment, b_cfg, b_heights);
        }
        if (ir->parsed()) return run_ir_tree(i_graph, i_out, i_graph2, i_out2);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_error;
    }
    return k_exit_error;
}
