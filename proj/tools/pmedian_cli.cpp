#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmedian/harness.hpp"
#include "pmedian/instances.hpp"
#include "pmedian/oracle.hpp"

namespace {

using namespace pmedian;

struct RunFlags {
  std::size_t n = 100;
  std::string file;
  std::size_t p = 5;
  std::string algorithm = "RATIO";
  std::string start = "RAND";
  std::size_t reps = 10;
  std::uint64_t seed = 1;
  std::size_t transfer_limit = 20;
  std::string descent = "3b";
  std::size_t threads = 1;
  std::string out;

  RunConfig config() const {
    RunConfig c;
    c.generated_n = n;
    c.file = file;
    c.p = p;
    c.algorithm = parse_algorithm(algorithm);
    c.start = parse_start(start);
    c.replications = reps;
    c.seed = seed;
    c.transfer_limit = transfer_limit;
    c.descent = parse_descent(descent);
    c.threads = threads;
    return c;
  }
};

void add_experiment_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--alg", f.algorithm, "ALT, IALT or RATIO")->capture_default_str();
  cmd->add_option("--start", f.start, "RAND, CONS, DESC or COMB")->capture_default_str();
  cmd->add_option("--reps", f.reps, "replications")->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--L", f.transfer_limit, "transfer candidates per round")->capture_default_str();
  cmd->add_option("--descent", f.descent, "3a (best improvement) or 3b (first improvement)")
      ->capture_default_str();
  cmd->add_option("--threads", f.threads, "concurrent replications")->capture_default_str();
  cmd->add_option("--out", f.out, "CSV output file (default stdout)");
}

// Writes to --out when given, otherwise stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("pairs look like 100:5,200:10");
    pairs.emplace_back(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
  }
  return pairs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar p-median heuristics: Cooper ALT, IALT and RATIO with discrete starts"};
  app.require_subcommand(1);

  std::size_t gen_n = 1000;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write a generated benchmark instance");
  gen->add_option("--n", gen_n, "number of points (1..1000)")->capture_default_str();
  gen->add_option("--out", gen_out, "output file (default stdout)");

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "replicated experiment on one instance");
  auto* run_n = run->add_option("--n", run_flags.n, "generated instance size")->capture_default_str();
  run->add_option("--file", run_flags.file, "TSPLIB coordinate file")->excludes(run_n);
  run->add_option("--p", run_flags.p, "number of facilities")->capture_default_str();
  add_experiment_flags(run, run_flags);

  RunFlags bench_flags;
  std::string bench_pairs;
  auto* bench = app.add_subcommand("bench", "sweep generated (n, p) pairs");
  bench->add_option("--pairs", bench_pairs, "comma list n:p (default: all 50 reference pairs)");
  add_experiment_flags(bench, bench_flags);

  double verify_tolerance = 1e-6;
  auto* verify = app.add_subcommand("verify", "check the analytic examples");
  verify->add_option("--triangle-tol", verify_tolerance, "triangle objective tolerance")
      ->capture_default_str();

  std::size_t oracle_n = 8;
  std::string oracle_file;
  std::size_t oracle_p = 2;
  std::string oracle_metric = "euclidean";
  std::string oracle_mode = "partition";
  auto* oracle = app.add_subcommand("oracle", "brute-force a small instance");
  auto* oracle_n_opt = oracle->add_option("--n", oracle_n, "generated instance size")->capture_default_str();
  oracle->add_option("--file", oracle_file, "TSPLIB coordinate file")->excludes(oracle_n_opt);
  oracle->add_option("--p", oracle_p, "number of facilities")->capture_default_str();
  oracle->add_option("--metric", oracle_metric, "euclidean, manhattan or squared_euclidean")
      ->capture_default_str();
  oracle->add_option("--mode", oracle_mode, "discrete or partition")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Output out(gen_out);
      write_tsplib(out.stream(), generate_instance(gen_n));
    } else if (*run) {
      const RunConfig config = run_flags.config();
      const RunReport report = run_experiment(config);
      write_summary(std::cerr, report);
      Output out(run_flags.out);
      write_csv_header(out.stream());
      write_csv_row(out.stream(), report);
    } else if (*bench) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      if (bench_pairs.empty()) {
        for (const BestKnownEntry& e : best_known_table())
          if (e.n <= kMaxGeneratedPoints) pairs.emplace_back(e.n, e.p);
      } else {
        pairs = parse_pairs(bench_pairs);
      }
      Output out(bench_flags.out);
      write_csv_header(out.stream());
      for (const auto& [n, p] : pairs) {
        RunConfig config = bench_flags.config();
        config.generated_n = n;
        config.p = p;
        const RunReport report = run_experiment(config);
        write_summary(std::cerr, report);
        write_csv_row(out.stream(), report);
        out.stream().flush();
      }
    } else if (*verify) {
      int failures = 0;
      for (const CheckResult& check : verify_examples(verify_tolerance)) {
        const char* tag = check.informational ? "INFO" : (check.passed ? "PASS" : "FAIL");
        if (!check.informational && !check.passed) ++failures;
        std::cout << tag << "  " << check.name << "  (" << check.detail << ")\n";
      }
      std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
                << '\n';
      return failures == 0 ? 0 : 1;
    } else if (*oracle) {
      const Instance instance =
          oracle_file.empty() ? generate_instance(oracle_n) : load_tsplib(oracle_file);
      const Metric metric = parse_metric(oracle_metric);
      std::cout.precision(12);
      if (oracle_mode == "discrete") {
        const DiscreteSelection best = brute_discrete(instance, oracle_p, metric);
        std::cout << "objective " << best.objective << "\nsites";
        for (std::size_t k : best.indices) std::cout << ' ' << (k + 1);
        std::cout << '\n';
      } else if (oracle_mode == "partition") {
        const Solution best = brute_partition(instance, oracle_p, metric);
        std::cout << "objective " << best.objective << '\n';
        for (std::size_t i = 0; i < best.p(); ++i) {
          std::cout << "facility " << (i + 1) << " (" << best.facilities[i].x << ", "
                    << best.facilities[i].y << "):";
          for (std::size_t j = 0; j < instance.size(); ++j)
            if (best.assignment[j] == i) std::cout << ' ' << (j + 1);
          std::cout << '\n';
        }
      } else {
        throw std::invalid_argument("mode must be discrete or partition");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
