#ifndef BFT_MONTECARLO_HPP
#define BFT_MONTECARLO_HPP

// Seeded sampling of the tree models and the statistical experiments built
// on them. Trial i always draws from RngStream(seed, i) and results are
// reduced in trial order, so output never depends on the thread count.

#include "bft/core_tree.hpp"
#include "bft/permutations.hpp"
#include "bft/rng.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bft {

/// Statistical acceptance settings; shipped in config/thresholds.json.
struct Thresholds {
  double se_multiplier = 3.0;
  double significance = 0.001;
  unsigned repeats_required = 19;
  unsigned repeats_total = 20;
  double min_expected = 5.0;  // chi-square bin merging

  /// Reads the JSON file, falling back to the defaults for absent keys.
  static Thresholds load(const std::string& path);
  /// $BFT_THRESHOLDS if set, else the installed config file, else defaults.
  static Thresholds load_default();
};

struct RunOptions {
  unsigned threads = 0;    // 0 = hardware concurrency
  bool test_mode = false;  // cross-check fast HS paths against the tree oracle
  bool force = false;      // lift size guards
};

enum class Model { kSimple, kNonsimple, kEbt, kBlock };

std::string to_string(Model m);
Model parse_model(const std::string& name);  // throws std::invalid_argument

struct SummaryStats {
  std::uint64_t count = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  double min = 0;
  double max = 0;
};

SummaryStats summarize(const std::vector<double>& values);

struct ExperimentResult {
  std::string model;
  std::uint64_t size = 0;  // n for butterfly models, m for ebt/block
  double p = 0.5;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t grid_points = 0;  // fclt only
  bool test_mode = false;
  Thresholds thresholds;

  std::vector<double> values;  // per-trial HS (or endpoint value)
  std::map<long, std::uint64_t> histogram;
  SummaryStats summary;

  // block only: per-trial max(HS_1, HS_2) and increment indicator.
  std::vector<std::uint32_t> max_input_hs;
  std::vector<std::uint8_t> increments;

  // fclt only: trials x (grid_points + 1), t = i / grid_points.
  std::vector<std::vector<double>> paths;
};

SimpleButterflyCode sample_simple_code(std::size_t n, double p, RngStream& rng);
ButterflyCode sample_butterfly_code(std::size_t n, RngStream& rng);
/// Uniform m-node shape by leaf grafting on full binary trees.
BinaryTree sample_uniform_ebt(std::size_t m, RngStream& rng);

/// Largest nonsimple n accepted without RunOptions::force.
inline constexpr std::size_t kNonsimpleCap = 24;

ExperimentResult run_hs_experiment(Model model, std::uint64_t size, double p, std::uint64_t trials,
                                   std::uint64_t seed, const RunOptions& options = {});
ExperimentResult block_experiment(std::uint64_t m, std::uint64_t trials, std::uint64_t seed,
                                  const RunOptions& options = {});
/// W(t) = sqrt(n) (S_{floor(tn)} / n - t mu_p), S_k the HS after k levels.
ExperimentResult fclt_paths(std::uint64_t n, double p, std::uint64_t trials, std::uint64_t grid_points,
                            std::uint64_t seed, const RunOptions& options = {});

/// (HS - mean_closed(n)) / sqrt(variance_closed(n)); zeros when the
/// variance vanishes.
std::vector<double> clt_standardize(const ExperimentResult& result, unsigned n);

struct ChiSquareResult {
  double statistic = 0;
  unsigned dof = 0;
  double p_value = 1;
  std::vector<std::pair<double, double>> bins;  // (observed, expected) after merging
};

/// Pearson test of `histogram` against probabilities `pmf[k]` for value k.
/// Adjacent bins are merged until each expects at least `min_expected`.
/// Throws std::invalid_argument on an empty histogram.
ChiSquareResult chi_square_gof(const std::map<long, std::uint64_t>& histogram, const std::vector<double>& pmf,
                               double min_expected = 5.0);

/// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body);

}  // namespace bft

#endif  // BFT_MONTECARLO_HPP
