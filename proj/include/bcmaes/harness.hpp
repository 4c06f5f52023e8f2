#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcmaes/optimizer.hpp"

namespace bcmaes {

/// One experiment: a function, a configuration and one run per seed.
struct RunSpec {
  std::string function;
  Eigen::Index dim = 2;
  Strategy strategy = Strategy::S2;
  std::vector<std::uint64_t> seeds{0};
  std::size_t popsize = 0;
  std::size_t max_iter = 500;
  double sigma0 = 1.0;
  std::optional<Vec> x0;
  std::filesystem::path out_dir = ".";
  std::optional<std::size_t> strategy_switch_iter;
  std::size_t stall_limit = 60;
  double var_norm_tol = 1e-12;
  RestartLevels levels;
  RestartFactors factors;
  ExecutionMode eval_mode = ExecutionMode::Serial;
};

inline constexpr const char* kTraceCsvHeader =
    "iter,f_best_iter,f_min_so_far,error_vs_min,cov_norm,retrial,event";

/// Exit codes of the experiment CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;

/// Parses the run flags (argv[0] is skipped). Throws UsageError.
/// Returns std::nullopt after printing help to `out` when --help is given.
std::optional<RunSpec> parse_args(const std::vector<std::string>& args, std::ostream& out);

OptimizerConfig make_config(const RunSpec& spec, std::uint64_t seed);

/// `<function>_<strategy>_<seed>.csv`
std::string trace_file_name(const RunSpec& spec, std::uint64_t seed);

/// Writes the trace in the frozen CSV schema. error_vs_min is
/// f_min_so_far - global_min_value.
void write_trace_csv(std::ostream& os, const RunResult& result, double global_min_value);

/// Executes every seed, writing one CSV per seed and summary.json.
/// Throws IoError when the output cannot be written.
void run_experiment(const RunSpec& spec, std::ostream& log);

struct TraceCsv {
  std::filesystem::path source;
  std::vector<std::size_t> iter;
  std::vector<double> error_vs_min;
};

/// Throws SchemaError on a malformed file and IoError when unreadable.
TraceCsv read_trace_csv(const std::filesystem::path& path);

/// Legend label for a trace file: "B-CMA-ES S1" / "B-CMA-ES S2" for files
/// named like `<function>_<s1|s2>_<seed>.csv`, the file stem otherwise.
std::string trace_label(const std::filesystem::path& path);

struct PlotOutputs {
  std::filesystem::path data;
  std::filesystem::path svg;
};

/// Writes `<stem>.dat` (tab separated: iter, one error column per run, empty
/// past a run's end) and `<stem>.svg` (log10(error + 1e-16) against
/// iteration). Throws SchemaError for an empty list or malformed input.
PlotOutputs emit_plot_data(const std::vector<std::filesystem::path>& csv_paths,
                           const std::filesystem::path& out_dir,
                           const std::string& stem = "convergence");

/// Full CLI entry point; returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcmaes
