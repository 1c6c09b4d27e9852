#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "kkp/combiner.hpp"
#include "kkp/generator.hpp"
#include "kkp/instance_io.hpp"
#include "kkp/oracles.hpp"
#include "kkp/preprocessing.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInputError = 1, kInfeasible = 2, kVerifyFailed = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::string output;
  std::string epsilon = "0.1";
  std::string internal_eps;
  std::string mode;
  std::string budget;
  std::int64_t cardinality = -1;
  int threads = 0;
  std::uint64_t seed = 1;
  bool dump_partition = false;
  std::string dump_tables;
  std::string oracle = "brute";

  // generate
  std::size_t n = 18;
  std::int64_t gen_k = 6;
  std::size_t count = 1;
  std::string distribution = "uniform";
  bool fractional = false;
  std::int64_t max_weight = 100;
  std::int64_t max_profit = 100;
  std::string budget_fraction = "1/2";

  // bench
  std::vector<std::size_t> bench_n{2000};
  std::vector<std::int64_t> bench_k{16, 64, 256, 1024};
  std::vector<std::string> bench_eps{"0.1"};
  int reps = 5;
};

kkp::Rational parse_epsilon(const std::string& text) {
  kkp::Rational e;
  try {
    e = kkp::parse_rational(text);
  } catch (const std::exception&) {
    throw InputError("bad epsilon: " + text);
  }
  if (!(e > 0 && e < 1)) throw InputError("epsilon must lie in (0, 1): " + text);
  return e;
}

bool has_extension(const std::string& path, const std::string& ext) {
  return fs::path(path).extension() == ext;
}

kkp::Instance load_instance(const std::string& path, const Config& cfg) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  kkp::Instance inst;
  try {
    if (has_extension(path, ".csv")) {
      if (cfg.budget.empty() || cfg.cardinality < 0) throw InputError("CSV input needs --budget and --cardinality");
      kkp::CardinalityMode mode = kkp::CardinalityMode::kAtMost;
      if (!cfg.mode.empty()) mode = *kkp::parse_mode(cfg.mode);
      inst = kkp::read_instance_csv(in, kkp::parse_rational(cfg.budget), cfg.cardinality, mode);
    } else {
      inst = kkp::read_instance_json(in);
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!cfg.mode.empty()) {
    auto mode = kkp::parse_mode(cfg.mode);
    if (!mode) throw InputError("unknown mode: " + cfg.mode);
    inst.mode = *mode;
  }
  kkp::ValidationReport report = kkp::validate_instance(inst);
  if (!report.ok()) throw InputError(path + ": " + report.errors.front());
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return inst;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void apply_threads(const Config& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
}

kkp::SolveOptions solve_options(const Config& cfg) {
  kkp::SolveOptions opt;
  if (!cfg.internal_eps.empty()) opt.internal_eps = parse_epsilon(cfg.internal_eps);
  opt.parallel = cfg.threads != 1;
  return opt;
}

// Instance the pipeline actually partitions: the shifted one in exact mode.
kkp::Instance pipeline_instance(const kkp::Instance& inst) {
  if (inst.mode == kkp::CardinalityMode::kExactly) return kkp::convert_exact_to_atmost(inst).instance;
  return inst;
}

json partition_json(const kkp::Partition& part) {
  json large = json::array(), small = json::array();
  for (const kkp::LargeClass& c : part.large_classes) {
    large.push_back({{"index", c.index}, {"size", c.members.size()}, {"rounded_profit", kkp::to_double(c.rounded_profit)}});
  }
  for (const kkp::SmallClass& c : part.small_classes) {
    small.push_back({{"index", c.index}, {"size", c.members.size()}, {"rounded_profit", kkp::to_double(c.rounded_profit)}});
  }
  return {{"opt_estimate", kkp::to_string(part.opt_estimate)},
          {"epsilon", kkp::to_string(part.epsilon)},
          {"z", part.z},
          {"large_classes", large},
          {"small_classes", small},
          {"discarded", part.discarded.size()}};
}

void dump_tables(const std::string& path, const kkp::Partition& part) {
  kkp::LargeTables tables = kkp::build_phi_L(part);
  std::ostringstream out;
  out << "x,profit";
  for (std::int64_t k = 0; k <= tables.table.z(); ++k) out << ",k" << k;
  out << "\n";
  for (std::int64_t x = 0; x < tables.table.rows(); ++x) {
    out << x << "," << kkp::to_string(tables.grid.point(x));
    for (std::int64_t k = 0; k <= tables.table.z(); ++k) {
      std::int64_t w = tables.table.at(x, k);
      out << ",";
      if (w != kkp::kInfWeight) out << w;
    }
    out << "\n";
  }
  write_text(path, out.str());
}

int cmd_solve(const Config& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required");
  kkp::Instance inst = load_instance(cfg.input, cfg);
  kkp::Rational eps = parse_epsilon(cfg.epsilon);
  apply_threads(cfg);
  kkp::SolveOptions opt = solve_options(cfg);
  kkp::SolveDiagnostics diag;
  auto t0 = std::chrono::steady_clock::now();
  kkp::Solution sol = kkp::solve(inst, eps, opt, &diag);
  auto t1 = std::chrono::steady_clock::now();

  json doc = kkp::solution_to_json(sol);
  doc["elapsed_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if ((cfg.dump_partition || !cfg.dump_tables.empty()) && sol.status == kkp::SolveStatus::kOptimalityCertified) {
    kkp::Partition part = kkp::build_partition(pipeline_instance(inst), diag.internal_eps);
    if (cfg.dump_partition) doc["partition"] = partition_json(part);
    if (!cfg.dump_tables.empty()) dump_tables(cfg.dump_tables, part);
  }
  write_text(cfg.output, doc.dump(2) + "\n");

  std::cerr << "value " << kkp::to_string(sol.total_profit) << "  count " << sol.count << "  weight "
            << kkp::to_string(sol.total_weight) << "  " << doc["elapsed_ms"].get<double>() << " ms\n";
  if (sol.status == kkp::SolveStatus::kInfeasible) {
    std::cerr << "infeasible: the " << inst.cardinality << " lightest items exceed the budget\n";
    return kInfeasible;
  }
  return kOk;
}

kkp::GeneratorParams generator_params(const Config& cfg) {
  kkp::GeneratorParams p;
  p.n = cfg.n;
  p.cardinality = cfg.gen_k;
  auto dist = kkp::parse_distribution(cfg.distribution);
  if (!dist) throw InputError("unknown distribution: " + cfg.distribution);
  p.distribution = *dist;
  p.integer_weights = !cfg.fractional;
  p.max_weight = cfg.max_weight;
  p.max_profit = cfg.max_profit;
  kkp::Rational frac = kkp::parse_rational(cfg.budget_fraction);
  p.budget_num = frac.get_num().get_si();
  p.budget_den = frac.get_den().get_si();
  if (!cfg.budget.empty()) p.budget = kkp::floor_to_int64(kkp::parse_rational(cfg.budget));
  if (!cfg.mode.empty()) {
    auto mode = kkp::parse_mode(cfg.mode);
    if (!mode) throw InputError("unknown mode: " + cfg.mode);
    p.mode = *mode;
  }
  return p;
}

int cmd_generate(const Config& cfg) {
  if (cfg.output.empty()) throw InputError("--output directory is required");
  kkp::GeneratorParams p = generator_params(cfg);
  fs::create_directories(cfg.output);
  json files = json::array();
  for (std::size_t i = 0; i < cfg.count; ++i) {
    std::uint64_t sub = kkp::derive_seed(cfg.seed, i);
    char name[32];
    std::snprintf(name, sizeof name, "inst_%05zu.json", i);
    std::ofstream out(fs::path(cfg.output) / name);
    kkp::write_instance_json(out, kkp::generate_instance(p, sub));
    files.push_back({{"file", name}, {"seed", sub}});
  }
  json manifest = {{"seed", cfg.seed},
                   {"n", p.n},
                   {"cardinality", p.cardinality},
                   {"distribution", kkp::distribution_name(p.distribution)},
                   {"integer_weights", p.integer_weights},
                   {"max_weight", p.max_weight},
                   {"max_profit", p.max_profit},
                   {"mode", kkp::mode_name(p.mode)},
                   {"instances", files}};
  std::ofstream(fs::path(cfg.output) / "manifest.json") << manifest.dump(2) << "\n";
  std::cerr << "wrote " << cfg.count << " instances to " << cfg.output << "\n";
  return kOk;
}

std::vector<fs::path> corpus_files(const std::string& input) {
  fs::path root(input);
  if (!fs::is_directory(root)) return {root};
  std::vector<fs::path> out;
  fs::path manifest = root / "manifest.json";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    json doc = json::parse(in);
    for (const json& entry : doc.at("instances")) out.push_back(root / entry.at("file").get<std::string>());
    return out;
  }
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_verify(const Config& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required");
  if (cfg.oracle != "brute" && cfg.oracle != "dp") throw InputError("--oracle must be brute or dp");
  kkp::Rational eps = parse_epsilon(cfg.epsilon);
  apply_threads(cfg);
  kkp::SolveOptions opt = solve_options(cfg);
  json rows = json::array();
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const fs::path& path : corpus_files(cfg.input)) {
    json row = {{"file", path.filename().string()}};
    kkp::Instance inst = load_instance(path.string(), cfg);
    kkp::OracleResult oracle;
    try {
      oracle = cfg.oracle == "brute" ? kkp::brute_force(inst) : kkp::exact_dp(inst);
    } catch (const std::exception& e) {
      row["error"] = e.what();
      rows.push_back(row);
      ++skipped;
      continue;
    }
    kkp::Solution sol = kkp::solve(inst, eps, opt);
    kkp::FeasibilityReport rep = kkp::evaluate_solution(inst, sol.selected);
    bool pass;
    if (!oracle.feasible) {
      pass = sol.status == kkp::SolveStatus::kInfeasible;
      row["opt"] = nullptr;
    } else {
      pass = rep.feasible && sol.total_profit >= (1 - eps) * oracle.value;
      row["opt"] = kkp::to_string(oracle.value);
      if (oracle.value > 0) row["ratio"] = kkp::to_double(sol.total_profit / oracle.value);
    }
    row["value"] = kkp::to_string(sol.total_profit);
    row["pass"] = pass;
    rows.push_back(row);
    pass ? ++passed : ++failed;
  }
  json doc = {{"oracle", cfg.oracle},
              {"epsilon_user", kkp::to_string(eps)},
              {"passed", passed},
              {"failed", failed},
              {"skipped", skipped},
              {"rows", rows}};
  write_text(cfg.output, doc.dump(2) + "\n");
  std::cerr << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  return failed > 0 ? kVerifyFailed : kOk;
}

int cmd_bench(const Config& cfg) {
  apply_threads(cfg);
  kkp::SolveOptions opt = solve_options(cfg);
  std::ostringstream out;
  out << "n,K,epsilon,wall_ms,peak_table_cells\n";
  for (std::size_t n : cfg.bench_n) {
    for (const std::string& eps_text : cfg.bench_eps) {
      kkp::Rational eps = parse_epsilon(eps_text);
      for (std::int64_t k : cfg.bench_k) {
        Config c = cfg;
        c.n = n;
        c.gen_k = k;
        // The seed depends on n only, so a K sweep reuses the same items.
        kkp::Instance inst = kkp::generate_instance(generator_params(c), kkp::derive_seed(cfg.seed, n));
        std::vector<double> times;
        std::int64_t cells = 0;
        for (int r = 0; r < cfg.reps; ++r) {
          kkp::SolveDiagnostics diag;
          auto t0 = std::chrono::steady_clock::now();
          kkp::solve(inst, eps, opt, &diag);
          auto t1 = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
          cells = diag.table_cells;
        }
        std::sort(times.begin(), times.end());
        out << n << "," << k << "," << eps_text << "," << times[times.size() / 2] << "," << cells << "\n";
        std::cerr << "n=" << n << " K=" << k << " eps=" << eps_text << " " << times[times.size() / 2] << " ms\n";
      }
    }
  }
  write_text(cfg.output, out.str());
  return kOk;
}

int cmd_convert(const Config& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required");
  kkp::Instance inst = load_instance(cfg.input, cfg);
  if (inst.mode != kkp::CardinalityMode::kExactly) throw InputError("convert expects an exact-mode instance");
  kkp::ConvertedInstance conv = kkp::convert_exact_to_atmost(inst);
  json doc = kkp::instance_to_json(conv.instance);
  doc["shift"] = kkp::to_string(conv.shift);
  write_text(cfg.output, doc.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate solver for the 0-1 knapsack problem with a cardinality bound"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", cfg.input, "Instance file (.json or .csv) or corpus directory");
    sub->add_option("-o,--output", cfg.output, "Output path; standard output when omitted");
    sub->add_option("-e,--epsilon", cfg.epsilon, "Accuracy in (0, 1), decimal or num/den");
    sub->add_option("--internal-eps", cfg.internal_eps, "Override the internal accuracy");
    sub->add_option("--mode", cfg.mode, "at_most or exact; overrides the instance")
        ->check(CLI::IsMember({"at_most", "exact"}));
    sub->add_option("--threads", cfg.threads, "OpenMP threads; 1 runs the serial path");
    sub->add_option("--budget", cfg.budget, "Budget for CSV input");
    sub->add_option("--cardinality", cfg.cardinality, "Cardinality bound for CSV input");
  };
  auto add_generator = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--distribution", cfg.distribution, "uniform, correlated or subset_sum");
    sub->add_option("--max-weight", cfg.max_weight);
    sub->add_option("--max-profit", cfg.max_profit);
    sub->add_option("--budget-fraction", cfg.budget_fraction, "Budget as a fraction of the total weight");
    sub->add_flag("--fractional", cfg.fractional, "Non-integer weights");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve one instance");
  add_common(solve);
  solve->add_flag("--dump-partition", cfg.dump_partition, "Add the item classes to the output");
  solve->add_option("--dump-tables", cfg.dump_tables, "Write the large-item weight table as CSV");

  CLI::App* generate = app.add_subcommand("generate", "Write a seeded corpus with a manifest");
  add_common(generate);
  add_generator(generate);
  generate->add_option("-n,--items", cfg.n);
  generate->add_option("-k,--k", cfg.gen_k, "Cardinality bound");
  generate->add_option("--count", cfg.count);

  CLI::App* verify = app.add_subcommand("verify", "Compare against an exact oracle");
  add_common(verify);
  verify->add_option("--oracle", cfg.oracle)->check(CLI::IsMember({"brute", "dp"}));

  CLI::App* bench = app.add_subcommand("bench", "Time a sweep over (n, K, epsilon)");
  add_common(bench);
  add_generator(bench);
  bench->add_option("--n", cfg.bench_n)->delimiter(',');
  bench->add_option("--k", cfg.bench_k)->delimiter(',');
  bench->add_option("--eps", cfg.bench_eps)->delimiter(',');
  bench->add_option("--reps", cfg.reps)->check(CLI::PositiveNumber);

  CLI::App* convert = app.add_subcommand("convert", "Exact-K instance to the equivalent at-most-K instance");
  add_common(convert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*generate) return cmd_generate(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*bench) return cmd_bench(cfg);
    if (*convert) return cmd_convert(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
