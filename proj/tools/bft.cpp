// bft: command-line front end for the butterfly-tree library.

#include "bft/core_tree.hpp"
#include "bft/exact_dist.hpp"
#include "bft/hs_fast.hpp"
#include "bft/markov.hpp"
#include "bft/montecarlo.hpp"
#include "bft/numeric.hpp"
#include "bft/permutations.hpp"
#include "bft/report.hpp"
#include "bft/verify.hpp"
#include "bft/version.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

using bft::CsvTable;
using bft::Json;
using bft::Rational;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr unsigned kPmfCap = 400;
constexpr unsigned kRootsCap = 80;
constexpr unsigned kMomentsCap = 100000;
constexpr std::uint64_t kExhaustiveMCap = 16;

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  unsigned digits = 20;
  bool test_mode = false;
  bool force = false;
};

struct Output {
  CsvTable table;
  Json json;  // null: derived from the table
  bool ok = true;
};

std::string fmt(double x) { return bft::format_double(x); }
std::string fmt(const Rational& q) { return bft::format_double(bft::to_double(q)); }

std::string render_table(const CsvTable& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream out;
  for (const auto& c : t.comments) out << "# " << c << '\n';
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "  " : "") << row[i];
      if (i + 1 < row.size()) out << std::string(width[i] - row[i].size(), ' ');
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

Json table_to_json(const CsvTable& t, const Json& config) {
  Json j;
  j["tool"] = "bft";
  j["version"] = bft::kVersion;
  j["config"] = config;
  Json notes = Json::array();
  for (std::size_t i = 1; i < t.comments.size(); ++i) notes.push_back(t.comments[i]);
  if (!notes.empty()) j["notes"] = notes;
  j["columns"] = t.header;
  j["rows"] = t.rows;
  return j;
}

void write_output(const Common& c, const Json& config, Output& o) {
  if (o.table.comments.empty() || o.table.comments.front().rfind("bft ", 0) != 0) {
    o.table.comments.insert(o.table.comments.begin(), bft::provenance_line(config));
  }
  std::string text;
  if (c.format == "csv") {
    text = bft::emit_csv(o.table);
  } else if (c.format == "json") {
    text = (o.json.is_null() ? table_to_json(o.table, config) : o.json).dump(2) + "\n";
  } else {
    text = render_table(o.table);
  }
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
  std::ofstream meta(c.out + ".meta.json", std::ios::binary);
  if (!meta) throw std::runtime_error("cannot write " + c.out + ".meta.json");
  Json m;
  m["tool"] = "bft";
  m["version"] = bft::kVersion;
  m["config"] = config;
  m["format"] = c.format;
  meta << m.dump(2) << "\n";
}

unsigned checked_cap(unsigned n, unsigned cap, bool force, const char* what) {
  if (n > cap && !force) {
    throw usage_error(std::string(what) + ": n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap) +
                      " (use --force)");
  }
  return n;
}

// ---------------------------------------------------------------- exact

Output exact_pmf(unsigned n, long k_only) {
  Output o;
  o.table.header = {"n", "k", "numerator", "denominator", "float_value"};
  for (long k = 0; 2 * k <= static_cast<long>(n); ++k) {
    if (k_only >= 0 && k != k_only) continue;
    const Rational q = bft::pmf(n, k);
    o.table.rows.push_back({std::to_string(n), std::to_string(k), q.get_num().get_str(), q.get_den().get_str(), fmt(q)});
  }
  return o;
}

Output exact_moments(unsigned n_min, unsigned n_max) {
  Output o;
  o.table.header = {"n", "mean", "mean_float", "variance", "variance_float"};
  for (unsigned n = n_min; n <= n_max; ++n) {
    const Rational m = bft::mean_closed(n);
    const Rational v = bft::variance_closed(n);
    o.table.rows.push_back({std::to_string(n), bft::to_string(m), fmt(m), bft::to_string(v), fmt(v)});
  }
  return o;
}

Output exact_roots(unsigned max_n) {
  const auto report = bft::check_interlacing(max_n);
  Output o;
  o.table.header = {"n", "root_lo", "root_hi", "multiplicity", "lo_float", "hi_float"};
  bool all_real = true;
  std::string failed;
  for (const auto& level : report.levels) {
    all_real = all_real && level.real_rooted;
    if (!level.pass()) failed += " " + std::to_string(level.n);
    for (const auto& iv : level.roots.intervals) {
      o.table.rows.push_back({std::to_string(level.n), bft::to_string(iv.lo), bft::to_string(iv.hi),
                              std::to_string(iv.multiplicity), fmt(iv.lo), fmt(iv.hi)});
    }
  }
  o.table.comments.push_back(std::string("all_real=") + (all_real ? "true" : "false") +
                             " interlacing=" + (report.all_pass() ? "pass" : "fail"));
  if (!failed.empty()) o.table.comments.push_back("failed at n =" + failed);
  o.ok = report.all_pass();
  return o;
}

Output exact_quasi(const std::string& x_text, unsigned digits, unsigned max_order) {
  bft::PrecisionScope scope(std::max(bft::kDefaultDigits, digits + 10));
  const bft::Real x(x_text == "e" ? bft::Real(exp(bft::Real(1))) : bft::to_real(bft::parse_rational(x_text)));
  const auto c = bft::quasi_power_eval(x);
  Output o;
  o.table.header = {"quantity", "value"};
  o.table.rows.push_back({"x", bft::to_string(x, digits)});
  o.table.rows.push_back({"A", bft::to_string(c.A, digits)});
  o.table.rows.push_back({"B", bft::to_string(c.B, digits)});
  o.table.rows.push_back({"f", bft::to_string(c.f, digits)});
  o.table.rows.push_back({"abs_f", bft::to_string(abs(c.f), digits)});
  const auto coeffs = bft::cgf_coefficients(max_order, std::max(bft::kDefaultDigits, digits + 10));
  for (unsigned r = 1; r <= max_order; ++r) {
    o.table.rows.push_back({"u_coeff_" + std::to_string(r), bft::to_string(coeffs[r - 1], digits)});
  }
  return o;
}

// ---------------------------------------------------------------- markov

Output markov_single(const Rational& p) {
  const auto chain = bft::build_chain(p);
  const auto a = bft::analyze_chain(p);
  const auto f = bft::observable_f();
  const auto Pg = bft::right_multiply(chain.transition, a.poisson_closed);
  bool poisson_ok = true;
  for (std::size_t i = 0; i < bft::kChainStates; ++i) {
    if (a.poisson_closed[i] - Pg[i] != Rational(f[i]) - a.mu) poisson_ok = false;
  }
  const bool stationary_ok = bft::left_multiply(a.stationary, chain.transition) == a.stationary;
  const bool char_ok = bft::char_poly_check(p);
  const bool routes_ok = a.sigma2 == a.sigma2_via_poisson;

  Output o;
  o.ok = poisson_ok && stationary_ok && char_ok && routes_ok;
  o.table.header = {"state", "a", "b", "c", "f", "stationary", "poisson_g", "poisson_closed"};
  for (int k = 1; k <= 8; ++k) o.table.header.push_back("P_" + std::to_string(k));
  for (std::size_t s = 0; s < bft::kChainStates; ++s) {
    std::vector<std::string> row{std::to_string(s + 1), std::to_string(s >> 2 & 1U), std::to_string(s >> 1 & 1U),
                                 std::to_string(s & 1U), std::to_string(f[s]), bft::to_string(a.stationary[s]),
                                 bft::to_string(a.poisson_g[s]), bft::to_string(a.poisson_closed[s])};
    for (const auto& x : chain.transition[s]) row.push_back(bft::to_string(x));
    o.table.rows.push_back(std::move(row));
  }
  auto b = [](bool v) { return v ? "true" : "false"; };
  o.table.comments.push_back("p=" + bft::to_string(p) + " mu=" + bft::to_string(a.mu) + " sigma2=" + bft::to_string(a.sigma2) +
                             " sigma2_via_poisson=" + bft::to_string(a.sigma2_via_poisson) +
                             " pi_dot_closed_g=" + bft::to_string(a.pi_dot_closed));
  o.table.comments.push_back(std::string("checks: stationary=") + b(stationary_ok) + " char_poly=" + b(char_ok) +
                             " poisson_identity=" + b(poisson_ok) + " sigma2_routes=" + b(routes_ok));

  Json j;
  auto vec = [](const bft::ChainVector<Rational>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(bft::to_string(x));
    return arr;
  };
  Json P = Json::array();
  for (const auto& row : chain.transition) P.push_back(vec(row));
  j["p"] = bft::to_string(p);
  j["transition"] = P;
  j["stationary"] = vec(a.stationary);
  j["observable_f"] = f;
  j["poisson_g"] = vec(a.poisson_g);
  j["poisson_closed"] = vec(a.poisson_closed);
  j["pi_dot_closed_g"] = bft::to_string(a.pi_dot_closed);
  j["mu"] = bft::to_string(a.mu);
  j["sigma2"] = bft::to_string(a.sigma2);
  j["sigma2_via_poisson"] = bft::to_string(a.sigma2_via_poisson);
  j["mu_float"] = bft::to_double(a.mu);
  j["sigma2_float"] = bft::to_double(a.sigma2);
  j["checks"] = Json{{"stationary", stationary_ok}, {"char_poly", char_ok}, {"poisson_identity", poisson_ok},
                     {"sigma2_routes", routes_ok}};
  o.json = j;
  return o;
}

Output markov_sweep(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = spec.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) throw usage_error("--sweep expects start:stop:step");
  const Rational start = bft::parse_rational(spec.substr(0, first));
  const Rational stop = bft::parse_rational(spec.substr(first + 1, second - first - 1));
  const Rational step = bft::parse_rational(spec.substr(second + 1));
  if (step <= 0 || start <= 0 || stop >= 1 || start > stop) throw usage_error("--sweep needs 0 < start <= stop < 1, step > 0");
  Output o;
  o.table.header = {"p", "mu", "sigma2", "ratio"};
  for (Rational p = start; p <= stop; p += step) {
    const Rational m = bft::mu(p);
    const Rational s = bft::sigma2(p);
    o.table.rows.push_back({fmt(p), fmt(m), fmt(s), fmt(Rational(s / m))});
  }
  return o;
}

// ---------------------------------------------------------------- sampling

Json common_config(const std::string& sub, const Common& c) {
  return Json{{"subcommand", sub}, {"seed", c.seed}, {"format", c.format}, {"test_mode", c.test_mode}, {"force", c.force}};
}

Output from_experiment(const bft::ExperimentResult& r, const Json& config, bool per_trial, bool with_z) {
  Output o;
  o.json = bft::result_to_json(r, config);
  if (!r.paths.empty()) {
    o.table = bft::paths_table(r, config);
  } else if (per_trial || !r.max_input_hs.empty()) {
    o.table = bft::trials_table(r, config);
  } else {
    o.table = bft::histogram_table(r, config);
    if (with_z) {
      const double mu = bft::to_double(bft::mean_closed(static_cast<unsigned>(r.size)));
      const double sd = std::sqrt(bft::to_double(bft::variance_closed(static_cast<unsigned>(r.size))));
      o.table.header.push_back("z");
      for (auto& row : o.table.rows) row.push_back(sd > 0 ? fmt((std::stod(row[0]) - mu) / sd) : "0");
    }
  }
  o.table.comments.push_back("mean=" + fmt(r.summary.mean) + " variance=" + fmt(r.summary.variance) +
                             " min=" + fmt(r.summary.min) + " max=" + fmt(r.summary.max));
  return o;
}

// ---------------------------------------------------------------- tree

Output tree_output(const bft::BinaryTree& t) {
  Output o;
  const std::string csv = bft::to_edge_csv(t);
  o.table = bft::parse_csv(csv);
  o.table.comments.push_back("nodes=" + std::to_string(t.size()) + " hs=" + std::to_string(bft::hs(t)) +
                             " height=" + std::to_string(bft::height(t)));
  return o;
}

std::uint64_t resolve_seed(std::uint64_t flag_value) {
  const char* env = std::getenv("BFT_SEED");
  if (env == nullptr || *env == '\0') return flag_value;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw usage_error(std::string("BFT_SEED is not an unsigned integer: ") + env);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Butterfly trees: HS numbers, exact laws and Monte Carlo experiments"};
  app.set_version_flag("--version", std::string(bft::kVersion));
  app.require_subcommand(1);

  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json", "table"}));
    sub->add_option("--out", c.out, "Write to a file (plus a .meta.json sidecar) instead of stdout");
    sub->add_option("--digits", c.digits, "Significant digits for high-precision values")->check(CLI::Range(5U, 500U));
  };
  auto add_sampling = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--seed", c.seed, "Random seed (BFT_SEED overrides)");
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores; output is identical for any value)");
    sub->add_flag("--test-mode", c.test_mode, "Cross-check fast HS paths against the tree oracle");
    sub->add_flag("--force", c.force, "Lift size guards");
  };

  // exact
  auto* exact = app.add_subcommand("exact", "Exact distribution of HS for uniform simple codes");
  exact->require_subcommand(1);
  unsigned n = 10, max_n = 42, min_n = 0, order = 5;
  long k_only = -1;
  std::string x_text = "e";
  auto* pmf_cmd = exact->add_subcommand("pmf", "Probability mass function");
  pmf_cmd->add_option("--n", n, "Level n (2^n nodes)")->required();
  pmf_cmd->add_option("--k", k_only, "Single k only");
  pmf_cmd->add_flag("--force", c.force, "Lift the size cap");
  add_common(pmf_cmd);
  auto* mom_cmd = exact->add_subcommand("moments", "Closed-form mean and variance");
  mom_cmd->add_option("--n", n, "Level n")->required();
  mom_cmd->add_option("--from", min_n, "First level of a range ending at --n");
  mom_cmd->add_flag("--force", c.force, "Lift the size cap");
  add_common(mom_cmd);
  auto* roots_cmd = exact->add_subcommand("roots", "Certified real roots and interlacing of the pgfs");
  roots_cmd->add_option("--max-n", max_n, "Largest level")->check(CLI::Range(2U, 100000U));
  roots_cmd->add_flag("--force", c.force, "Lift the size cap");
  add_common(roots_cmd);
  auto* quasi_cmd = exact->add_subcommand("quasi", "Quasi-power constants and cumulant series");
  quasi_cmd->add_option("--x", x_text, "Evaluation point (rational, decimal, or e)");
  quasi_cmd->add_option("--order", order, "Number of cumulant-series coefficients")->check(CLI::Range(1U, 8U));
  add_common(quasi_cmd);

  // markov
  auto* markov = app.add_subcommand("markov", "The 8-state increment chain");
  std::string p_text, sweep;
  auto* p_opt = markov->add_option("--p", p_text, "Bias p (probability of bit 1)");
  auto* sweep_opt = markov->add_option("--sweep", sweep, "start:stop:step grid of p values");
  p_opt->excludes(sweep_opt);
  add_common(markov);

  // sample
  auto* sample = app.add_subcommand("sample", "Monte Carlo HS experiment");
  std::string model = "simple";
  std::uint64_t size_n = 0, size_m = 0, trials = 1000, grid = 100;
  double p = 0.5;
  bool per_trial = false;
  sample->add_option("--model", model, "simple | nonsimple | ebt | block")
      ->check(CLI::IsMember({"simple", "nonsimple", "ebt", "block"}));
  sample->add_option("--n", size_n, "Levels for butterfly models");
  sample->add_option("--m", size_m, "Nodes per tree for ebt/block");
  sample->add_option("--p", p, "Bias (simple model)");
  sample->add_option("--trials", trials, "Number of trials");
  sample->add_flag("--per-trial", per_trial, "Emit one row per trial instead of a histogram");
  add_sampling(sample);

  auto* fclt = app.add_subcommand("fclt", "Rescaled partial-sum paths of the increments");
  fclt->add_option("--n", size_n, "Levels")->required();
  fclt->add_option("--p", p, "Bias");
  fclt->add_option("--trials", trials, "Number of paths");
  fclt->add_option("--grid", grid, "Grid points on [0, 1]");
  add_sampling(fclt);

  auto* block = app.add_subcommand("block", "Two uniform trees glued once");
  block->add_option("--m", size_m, "Nodes per tree")->required();
  block->add_option("--trials", trials, "Number of trials");
  bool exhaustive = false;
  block->add_flag("--exhaustive", exhaustive, "Enumerate all shape pairs instead of sampling");
  add_sampling(block);

  // tree
  auto* tree = app.add_subcommand("tree", "Serialize a tree with HS labels");
  std::string simple_code, butterfly_code, perm, shape;
  auto* o1 = tree->add_option("--simple-code", simple_code, "Simple code (0/1 string, may be empty)");
  auto* o2 = tree->add_option("--code", butterfly_code, "Butterfly code of length 2^n - 1 in heap order");
  auto* o3 = tree->add_option("--perm", perm, "Permutation, comma separated");
  auto* o4 = tree->add_option("--shape", shape, "Shape string such as ((.,.),.)");
  tree->require_option(1);
  (void)o1, (void)o2, (void)o3, (void)o4;
  bool shape_out = false;
  tree->add_flag("--shape-string", shape_out, "Print the shape string instead of the edge list");
  add_common(tree);

  // verify
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  bft::VerifyOptions vopt;
  verify->add_option("--suite", vopt.suite, "oracle | exact | markov | interlacing | all")
      ->check(CLI::IsMember({"oracle", "exact", "markov", "interlacing", "all"}));
  verify->add_option("--max-n", vopt.max_n, "Largest level (suite default if omitted)");
  verify->add_flag("--quick", vopt.quick, "Smaller sizes");
  verify->add_flag("--inject-failure", vopt.inject_failure, "Append a failing check")->group("");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Output o;
    Json config;
    if (exact->parsed()) {
      if (pmf_cmd->parsed()) {
        checked_cap(n, kPmfCap, c.force, "pmf");
        config = Json{{"subcommand", "exact pmf"}, {"n", n}, {"k", k_only}, {"format", c.format}};
        o = exact_pmf(n, k_only);
      } else if (mom_cmd->parsed()) {
        checked_cap(n, kMomentsCap, c.force, "moments");
        if (min_n > n) throw usage_error("--from must not exceed --n");
        const bool range = mom_cmd->count("--from") > 0;
        config = Json{{"subcommand", "exact moments"}, {"n", n}, {"from", range ? min_n : n}, {"format", c.format}};
        o = exact_moments(range ? min_n : n, n);
      } else if (roots_cmd->parsed()) {
        checked_cap(max_n, kRootsCap, c.force, "roots");
        config = Json{{"subcommand", "exact roots"}, {"max_n", max_n}, {"format", c.format}};
        o = exact_roots(max_n);
      } else {
        config = Json{{"subcommand", "exact quasi"}, {"x", x_text}, {"order", order}, {"digits", c.digits}, {"format", c.format}};
        o = exact_quasi(x_text, c.digits, order);
      }
    } else if (markov->parsed()) {
      if (!sweep.empty()) {
        config = Json{{"subcommand", "markov"}, {"sweep", sweep}, {"format", c.format}};
        o = markov_sweep(sweep);
      } else {
        if (p_text.empty()) throw usage_error("markov needs --p or --sweep");
        const Rational pr = bft::parse_rational(p_text);
        if (!(pr > 0 && pr < 1)) throw usage_error("--p must lie in (0, 1)");
        config = Json{{"subcommand", "markov"}, {"p", bft::to_string(pr)}, {"format", c.format}};
        o = markov_single(pr);
      }
    } else if (sample->parsed() || block->parsed() || fclt->parsed()) {
      c.seed = resolve_seed(c.seed);
      bft::RunOptions ro{c.threads, c.test_mode, c.force};
      if (fclt->parsed()) {
        config = common_config("fclt", c);
        config["n"] = size_n;
        config["p"] = p;
        config["trials"] = trials;
        config["grid"] = grid;
        o = from_experiment(bft::fclt_paths(size_n, p, trials, grid, c.seed, ro), config, false, false);
      } else if (block->parsed() && exhaustive) {
        if (size_m > kExhaustiveMCap && !c.force) throw usage_error("--exhaustive is capped at m = 16 (use --force)");
        config = Json{{"subcommand", "block --exhaustive"}, {"m", size_m}, {"format", c.format}};
        const auto shapes = bft::all_shapes(size_m);
        std::map<std::uint32_t, std::uint64_t> counts;
        std::uint64_t violations = 0;
        std::uint32_t best = 0;
        for (const auto& a : shapes) {
          const auto ha = bft::hs(a);
          for (const auto& b : shapes) {
            const auto in = std::max(ha, bft::hs(b));
            for (const auto& glued : {bft::glue_plus(a, b, bft::GlueMode::kShapeOnly),
                                      bft::glue_minus(a, b, bft::GlueMode::kShapeOnly)}) {
              const auto h = bft::hs(glued);
              if (h < in || h > in + 1) ++violations;
              best = std::max(best, h);
              ++counts[h];
            }
          }
        }
        o.table.header = {"hs", "pairs"};
        for (const auto& [h, cnt] : counts) o.table.rows.push_back({std::to_string(h), std::to_string(cnt)});
        o.table.comments.push_back("max_hs=" + std::to_string(best) + " merge_inequality_violations=" + std::to_string(violations));
        o.ok = violations == 0;
      } else {
        const bft::Model mdl = block->parsed() ? bft::Model::kBlock : bft::parse_model(model);
        const bool by_m = mdl == bft::Model::kEbt || mdl == bft::Model::kBlock;
        const std::uint64_t size = by_m ? size_m : size_n;
        if (by_m && size_m == 0) throw usage_error("--m is required for the " + bft::to_string(mdl) + " model");
        config = common_config(block->parsed() ? "block" : "sample", c);
        config["model"] = bft::to_string(mdl);
        config[by_m ? "m" : "n"] = size;
        if (mdl == bft::Model::kSimple) config["p"] = p;
        config["trials"] = trials;
        config["per_trial"] = per_trial;
        const auto r = bft::run_hs_experiment(mdl, size, p, trials, c.seed, ro);
        o = from_experiment(r, config, per_trial, mdl == bft::Model::kSimple);
      }
    } else if (tree->parsed()) {
      bft::BinaryTree t = bft::BinaryTree::single();
      if (tree->count("--simple-code")) {
        config = Json{{"subcommand", "tree"}, {"simple_code", simple_code}};
        t = bft::tree_from_simple_code(bft::SimpleButterflyCode::parse(simple_code));
      } else if (tree->count("--code")) {
        config = Json{{"subcommand", "tree"}, {"code", butterfly_code}};
        t = bft::tree_from_butterfly_code(bft::ButterflyCode::parse(butterfly_code));
      } else if (tree->count("--perm")) {
        config = Json{{"subcommand", "tree"}, {"perm", perm}};
        t = bft::bst_from_permutation(bft::parse_permutation(perm));
      } else {
        config = Json{{"subcommand", "tree"}, {"shape", shape}};
        t = bft::parse_shape_string(shape);
      }
      config["format"] = c.format;
      if (shape_out) {
        o.table.header = {"shape"};
        o.table.rows.push_back({bft::to_shape_string(t)});
      } else {
        o = tree_output(t);
      }
    } else if (verify->parsed()) {
      config = Json{{"subcommand", "verify"}, {"suite", vopt.suite}, {"max_n", vopt.max_n}, {"quick", vopt.quick}};
      const auto results = bft::run_verify(vopt);
      o.table.header = {"suite", "check", "passed", "detail"};
      Json checks = Json::array();
      for (const auto& r : results) {
        o.ok = o.ok && r.passed;
        o.table.rows.push_back({r.suite, r.name, r.passed ? "true" : "false", r.detail});
        checks.push_back(Json{{"suite", r.suite}, {"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      }
      o.json = Json{{"tool", "bft"}, {"version", bft::kVersion}, {"config", config}, {"passed", o.ok}, {"checks", checks}};
    }
    write_output(c, config, o);
    return o.ok ? kExitOk : kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
