#pragma once

// Seeded experiment runner. Each experiment maps a config to per-trial CSV
// records plus a summary with a pinned pass threshold; re-running a config
// reproduces bit-identical CSV output. Trial seeds derive arithmetically
// from the base seed, costs are read straight off the session counters.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symtree/generators.hpp"
#include "symtree/graph.hpp"
#include "symtree/strategies.hpp"

namespace symtree {

enum class family_kind {
    iso_complete_binary,  // complete binary tree and a child-order shuffle
    disjoint_colors,      // complete binary shapes, disjoint color ranges
    orbit_pair,           // orbit tree and a child-order shuffle
    pruned_noniso,        // independently pruned trees, globally distinct colors
    pruned_planted,       // pruned tree and a shuffle sharing all colors
};

enum class strategy_kind { mc, mc_budgeted, lv, det };

const char* to_string(family_kind f);
const char* to_string(strategy_kind s);
std::optional<family_kind> family_from_string(const std::string& name);
std::optional<strategy_kind> strategy_from_string(const std::string& name);

struct experiment_config {
    std::string name;
    family_kind family = family_kind::iso_complete_binary;
    strategy_kind strategy = strategy_kind::mc;
    unsigned height = 10;
    std::vector<unsigned> heights;  // scaling experiments
    double epsilon = 0.125;
    unsigned walk_cap_c = 4;
    double prune_prob = 0.25;
    orbit_tree_spec orbit;
    std::uint64_t trials = 100;
    std::uint64_t base_seed = 1;
    std::string out_path;  // empty: no CSV file written
};

struct trial_record {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    unsigned h = 0;
    std::uint64_t n = 0;  // smaller tree size
    std::uint64_t N = 0;  // larger tree size
    std::uint64_t d = 0;  // max degree over both trees
    verdict_kind verdict = verdict_kind::not_isomorphic;
    std::uint64_t cost1 = 0;
    std::uint64_t cost2 = 0;
    std::uint64_t restarts = 0;
    std::optional<bool> balanced;  // split experiments only
};

inline constexpr const char* k_trial_csv_header =
    "trial,seed,h,n,N,d,verdict,cost1,cost2,restarts,balanced";

std::string to_csv(const std::vector<trial_record>& records);

// Pinned acceptance thresholds.
inline constexpr double k_mc_exponent_lo = 0.45;
inline constexpr double k_mc_exponent_hi = 0.65;
inline constexpr double k_det_exponent_lo = 0.95;
inline constexpr double k_det_exponent_hi = 1.05;
inline constexpr double k_mc_median_coef = 40.0;       // median cost <= 40*sqrt(n_leaves)*h at h=12
inline constexpr double k_balanced_fraction_min = 0.70;
inline constexpr double k_rate_sigmas = 3.0;           // rate threshold: eps + 3 binomial sd

// Instance and strategy plumbing shared by the CLI `run` subcommand.
std::pair<search_tree, search_tree> make_instance(const experiment_config& cfg, unsigned height,
                                                  std::uint64_t seed);
verdict run_strategy(strategy_kind s, exploration_session& t1, exploration_session& t2,
                     std::uint64_t seed, double epsilon, unsigned walk_cap_c);
trial_record run_trial(const experiment_config& cfg, unsigned height, std::uint64_t trial,
                       const search_tree& t1, const search_tree& t2);

// -- experiments ---------------------------------------------------------------

struct error_rate_result {
    std::vector<trial_record> records;
    std::uint64_t failures = 0;
    double fraction = 0.0;
    double threshold = 0.0;  // epsilon + 3 binomial standard deviations
    double ci_low = 0.0;     // exact (Clopper-Pearson) 95% interval
    double ci_high = 1.0;
    bool pass = false;
};

// YES-instance family; failure = any verdict other than a found match.
error_rate_result error_rate_experiment(const experiment_config& cfg);

struct scaling_point {
    unsigned height = 0;
    std::uint64_t n = 0;
    double median_cost = 0.0;
    double mean_cost = 0.0;
};

struct scaling_result {
    std::vector<trial_record> records;
    std::vector<scaling_point> points;
    bool applicable = false;  // needs >= 2 heights
    double exponent = 0.0;    // least-squares slope of log cost over log n
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::optional<double> median_budget_h12;  // bound applied when h=12 is present
    bool pass = false;
};

scaling_result scaling_experiment(const experiment_config& cfg);

struct split_probability_result {
    std::vector<trial_record> records;
    std::uint64_t splits_returned = 0;
    std::uint64_t balanced_count = 0;
    std::uint64_t budget_violations = 0;  // split subtree cost above terminating budget
    double fraction = 0.0;
    double threshold = k_balanced_fraction_min;
    bool pass = false;
};

split_probability_result split_probability_experiment(const experiment_config& cfg);

struct ir_occurrence_row {
    std::string name;
    int vertices = 0;
    std::uint64_t aut_order = 0;
    std::uint64_t leaf_count = 0;
    std::uint64_t distinct_colors = 0;
    bool pass = false;  // every color's occurrence count equals |Aut|
};

struct ir_occurrence_result {
    std::vector<ir_occurrence_row> rows;
    bool pass = false;
};

ir_occurrence_result ir_occurrence_experiment(
    const std::vector<std::pair<std::string, graph>>& corpus);

// K2, P4, C4, C5, K3, the 3-leaf star, and a rigid 6-vertex graph.
std::vector<std::pair<std::string, graph>> standard_graph_corpus();

std::string to_csv(const ir_occurrence_result& r);

// -- statistics helpers ----------------------------------------------------------

// Exact binomial (Clopper-Pearson) confidence interval for x successes in n
// draws at the given two-sided confidence level.
std::pair<double, double> binomial_confidence(std::uint64_t n, std::uint64_t x,
                                              double level = 0.95);

// Least-squares slope of y over x.
double fitted_slope(const std::vector<std::pair<double, double>>& xy);

void write_file(const std::string& path, const std::string& content);

}  // namespace symtree
