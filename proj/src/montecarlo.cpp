#include "bft/montecarlo.hpp"

#include "bft/exact_dist.hpp"
#include "bft/hs_fast.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#ifndef BFT_DEFAULT_THRESHOLDS
#define BFT_DEFAULT_THRESHOLDS ""
#endif

namespace bft {

Thresholds Thresholds::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open thresholds file " + path);
  const auto j = nlohmann::json::parse(in);
  Thresholds t;
  t.se_multiplier = j.value("se_multiplier", t.se_multiplier);
  t.significance = j.value("significance", t.significance);
  t.repeats_required = j.value("repeats_required", t.repeats_required);
  t.repeats_total = j.value("repeats_total", t.repeats_total);
  t.min_expected = j.value("min_expected", t.min_expected);
  return t;
}

Thresholds Thresholds::load_default() {
  if (const char* env = std::getenv("BFT_THRESHOLDS"); env != nullptr && *env != '\0') return load(env);
  const std::string installed = BFT_DEFAULT_THRESHOLDS;
  if (!installed.empty() && std::ifstream(installed)) return load(installed);
  return {};
}

std::string to_string(Model m) {
  switch (m) {
    case Model::kSimple:
      return "simple";
    case Model::kNonsimple:
      return "nonsimple";
    case Model::kEbt:
      return "ebt";
    case Model::kBlock:
      return "block";
  }
  return "unknown";
}

Model parse_model(const std::string& name) {
  for (Model m : {Model::kSimple, Model::kNonsimple, Model::kEbt, Model::kBlock}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown model '" + name + "'");
}

SummaryStats summarize(const std::vector<double>& values) {
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) return s;
  // Two-pass in trial order: deterministic and numerically stable.
  double sum = 0;
  s.min = s.max = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(values.size() - 1);
  }
  return s;
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  constexpr std::uint64_t kChunk = 64;
  auto worker = [&] {
    while (true) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= count) return;
      const std::uint64_t end = std::min(count, begin + kChunk);
      try {
        for (std::uint64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SimpleButterflyCode sample_simple_code(std::size_t n, double p, RngStream& rng) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.bernoulli(p) ? 1 : 0;
  return SimpleButterflyCode(std::move(bits));
}

ButterflyCode sample_butterfly_code(std::size_t n, RngStream& rng) {
  if (n >= 40) throw invalid_code("butterfly code too long to sample");
  std::vector<std::uint8_t> bits((std::size_t{1} << n) - 1);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i % 64 == 0) word = rng.next();
    bits[i] = static_cast<std::uint8_t>(word & 1U);
    word >>= 1;
  }
  return ButterflyCode(std::move(bits));
}

BinaryTree sample_uniform_ebt(std::size_t m, RngStream& rng) {
  if (m == 0) throw std::invalid_argument("sample_uniform_ebt: m must be positive");
  // Full binary tree grown by grafting: pick any node x uniformly, replace
  // it by a new internal node whose children are x and a new leaf, in
  // random order. After m steps the shape is uniform over the C_m shapes.
  const std::size_t total = 2 * m + 1;
  std::vector<NodeId> left(total, kNoNode), right(total, kNoNode), parent(total, kNoNode);
  NodeId root = 0;
  std::size_t used = 1;
  for (std::size_t step = 0; step < m; ++step) {
    const auto x = static_cast<NodeId>(rng.below(used));
    const auto y = static_cast<NodeId>(used);
    const auto leaf = static_cast<NodeId>(used + 1);
    used += 2;
    const NodeId px = parent[x];
    if (px == kNoNode) {
      root = y;
    } else if (left[px] == x) {
      left[px] = y;
    } else {
      right[px] = y;
    }
    parent[y] = px;
    if (rng.next() & 1U) {
      left[y] = x;
      right[y] = leaf;
    } else {
      left[y] = leaf;
      right[y] = x;
    }
    parent[x] = parent[leaf] = y;
  }
  // Internal nodes (ids 1, 3, 5, ...) form the m-node tree.
  auto internal = [&](NodeId v) { return v != kNoNode && left[v] != kNoNode; };
  auto compact = [](NodeId v) { return static_cast<NodeId>((v - 1) / 2); };
  std::vector<NodeId> L(m, kNoNode), R(m, kNoNode);
  for (NodeId v = 1; v < total; v += 2) {
    if (internal(left[v])) L[compact(v)] = compact(left[v]);
    if (internal(right[v])) R[compact(v)] = compact(right[v]);
  }
  return BinaryTree::from_links(compact(root), L, R);
}

namespace {

ExperimentResult make_result(Model model, std::uint64_t size, double p, std::uint64_t trials, std::uint64_t seed,
                             const RunOptions& options) {
  ExperimentResult r;
  r.model = to_string(model);
  r.size = size;
  r.p = p;
  r.trials = trials;
  r.seed = seed;
  r.test_mode = options.test_mode;
  r.thresholds = Thresholds::load_default();
  r.values.assign(trials, 0.0);
  return r;
}

void finish(ExperimentResult& r) {
  for (double v : r.values) ++r.histogram[std::lround(v)];
  r.summary = summarize(r.values);
}

void check_p(double p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("bias p must lie in (0, 1)");
}

}  // namespace

ExperimentResult block_experiment(std::uint64_t m, std::uint64_t trials, std::uint64_t seed,
                                  const RunOptions& options) {
  if (m == 0) throw std::invalid_argument("block_experiment: m must be positive");
  ExperimentResult r = make_result(Model::kBlock, m, 0.5, trials, seed, options);
  r.max_input_hs.assign(trials, 0);
  r.increments.assign(trials, 0);
  parallel_for(trials, options.threads, [&](std::uint64_t i) {
    RngStream rng(seed, i);
    const BinaryTree t1 = sample_uniform_ebt(m, rng);
    const BinaryTree t2 = sample_uniform_ebt(m, rng);
    const std::uint32_t h = hs(glue_plus(t1, t2, GlueMode::kShapeOnly));
    const std::uint32_t in = std::max(hs(t1), hs(t2));
    r.values[i] = h;
    r.max_input_hs[i] = in;
    r.increments[i] = static_cast<std::uint8_t>(h - in);
  });
  finish(r);
  return r;
}

ExperimentResult run_hs_experiment(Model model, std::uint64_t size, double p, std::uint64_t trials,
                                   std::uint64_t seed, const RunOptions& options) {
  if (model == Model::kBlock) return block_experiment(size, trials, seed, options);
  if (model == Model::kSimple) check_p(p);
  if (model == Model::kNonsimple && size > kNonsimpleCap && !options.force) {
    throw std::invalid_argument("nonsimple n above " + std::to_string(kNonsimpleCap) + " requires --force");
  }
  if (model == Model::kEbt && size == 0) throw std::invalid_argument("ebt: m must be positive");
  ExperimentResult r = make_result(model, size, model == Model::kSimple ? p : 0.5, trials, seed, options);
  parallel_for(trials, options.threads, [&](std::uint64_t i) {
    RngStream rng(seed, i);
    std::uint32_t h = 0;
    switch (model) {
      case Model::kSimple: {
        const auto code = sample_simple_code(size, p, rng);
        h = hs_simple(code);
        if (options.test_mode && size <= 12 && h != hs(tree_from_simple_code(code))) {
          throw std::logic_error("hs_simple disagrees with the tree oracle on " + to_string(code));
        }
        break;
      }
      case Model::kNonsimple: {
        const auto code = sample_butterfly_code(size, rng);
        h = hs_nonsimple(code);
        if (options.test_mode && h != hs(tree_from_butterfly_code(code))) {
          throw std::logic_error("hs_nonsimple disagrees with the tree oracle");
        }
        break;
      }
      case Model::kEbt:
        h = hs(sample_uniform_ebt(size, rng));
        break;
      case Model::kBlock:
        break;
    }
    r.values[i] = h;
  });
  finish(r);
  return r;
}

ExperimentResult fclt_paths(std::uint64_t n, double p, std::uint64_t trials, std::uint64_t grid_points,
                            std::uint64_t seed, const RunOptions& options) {
  check_p(p);
  if (grid_points == 0 || grid_points > n) throw std::invalid_argument("fclt: need 1 <= grid_points <= n");
  ExperimentResult r = make_result(Model::kSimple, n, p, trials, seed, options);
  r.model = "fclt";
  r.grid_points = grid_points;
  r.paths.assign(trials, std::vector<double>(grid_points + 1, 0.0));
  const double pq = p * (1 - p);
  const double mu_p = pq / (1 - pq);
  const double nn = static_cast<double>(n);
  const double root_n = std::sqrt(nn);
  parallel_for(trials, options.threads, [&](std::uint64_t i) {
    RngStream rng(seed, i);
    const auto code = sample_simple_code(n, p, rng);
    const auto X = hs_increments(code);
    auto& path = r.paths[i];
    std::uint64_t partial = 0;
    std::uint64_t k = 0;  // levels consumed so far
    for (std::uint64_t g = 0; g <= grid_points; ++g) {
      const std::uint64_t upto = g * n / grid_points;
      while (k < upto) partial += X[k++];
      const double t = static_cast<double>(g) / static_cast<double>(grid_points);
      path[g] = root_n * (static_cast<double>(partial) / nn - t * mu_p);
    }
    r.values[i] = static_cast<double>(partial);
  });
  finish(r);
  return r;
}

std::vector<double> clt_standardize(const ExperimentResult& result, unsigned n) {
  const double mu = to_double(mean_closed(n));
  const double var = to_double(variance_closed(n));
  std::vector<double> z(result.values.size(), 0.0);
  if (var <= 0) return z;
  const double sigma = std::sqrt(var);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (result.values[i] - mu) / sigma;
  return z;
}

ChiSquareResult chi_square_gof(const std::map<long, std::uint64_t>& histogram, const std::vector<double>& pmf,
                               double min_expected) {
  double total = 0;
  for (const auto& [v, c] : histogram) total += static_cast<double>(c);
  if (total == 0) throw std::invalid_argument("chi_square_gof: empty histogram");
  if (pmf.empty()) throw std::invalid_argument("chi_square_gof: empty pmf");
  // Cells k = 0..K-1; observations outside the support go to the end cells.
  const long K = static_cast<long>(pmf.size());
  std::vector<double> observed(pmf.size(), 0.0);
  for (const auto& [v, c] : histogram) observed[static_cast<std::size_t>(std::clamp(v, 0L, K - 1))] += c;
  ChiSquareResult out;
  double obs = 0, expected = 0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    obs += observed[k];
    expected += total * pmf[k];
    if (expected >= min_expected) {
      out.bins.emplace_back(obs, expected);
      obs = expected = 0;
    }
  }
  if (obs > 0 || expected > 0) {
    if (out.bins.empty()) {
      out.bins.emplace_back(obs, expected);
    } else {
      out.bins.back().first += obs;
      out.bins.back().second += expected;
    }
  }
  for (const auto& [o, e] : out.bins) {
    if (e <= 0) {
      out.statistic = o > 0 ? INFINITY : out.statistic;
      continue;
    }
    out.statistic += (o - e) * (o - e) / e;
  }
  out.dof = out.bins.size() > 1 ? static_cast<unsigned>(out.bins.size() - 1) : 0;
  if (out.dof == 0 || std::isinf(out.statistic)) {
    out.p_value = std::isinf(out.statistic) ? 0.0 : 1.0;
  } else {
    boost::math::chi_squared dist(out.dof);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  }
  return out;
}

}  // namespace bft
