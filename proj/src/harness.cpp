#include "bcmaes/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace bcmaes {
namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_real_list(const std::string& s, const char* flag) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + s + "' is not a comma-separated list of reals");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

}  // namespace

std::optional<RunSpec> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Bayesian CMA-ES experiment runner", "bcmaes"};
  RunSpec spec;
  std::string strategy = "s2";
  std::string x0;
  std::string levels;
  std::string factors;
  std::string out_dir = ".";
  std::vector<std::uint64_t> seeds;
  std::size_t switch_iter = 0;
  bool parallel = false;
  long long dim = 2;

  app.add_option("--function", spec.function, "cone | schwefel2 | rastrigin | schwefel1")->required();
  app.add_option("--dim", dim, "search-space dimension")->capture_default_str();
  app.add_option("--strategy", strategy, "s1 | s2")->capture_default_str();
  app.add_option("--seed", seeds, "RNG seed (repeatable)");
  app.add_option("--popsize", spec.popsize, "candidates per iteration (0: 4 + floor(3 ln d))");
  app.add_option("--max-iter", spec.max_iter, "iteration cap")->capture_default_str();
  app.add_option("--sigma0", spec.sigma0, "initial standard deviation")->capture_default_str();
  app.add_option("--x0", x0, "initial point as a comma list");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--switch-iter", switch_iter, "use the other strategy from this iteration on");
  app.add_option("--stall-limit", spec.stall_limit, "stop after this many non-improving iterations")
      ->capture_default_str();
  app.add_option("--var-norm-tol", spec.var_norm_tol, "stop once ||E[Sigma]||_F drops below")
      ->capture_default_str();
  app.add_option("--levels", levels, "restart levels L1,L2,L3,L4,L5 (default 5,20,30,40,50)");
  app.add_option("--factors", factors, "scale factors k1,k2,k3,k4 (default 1.5,0.9,0.7,0.5)");
  app.add_flag("--parallel", parallel, "evaluate candidates with OpenMP");
  app.allow_extras(false);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("bcmaes");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto& names = benchmark_names();
  if (std::find(names.begin(), names.end(), spec.function) == names.end()) {
    throw UsageError("--function: unknown function '" + spec.function + "'");
  }
  if (dim < 1) throw UsageError("--dim must be >= 1");
  spec.dim = static_cast<Eigen::Index>(dim);
  if (strategy == "s1") {
    spec.strategy = Strategy::S1;
  } else if (strategy == "s2") {
    spec.strategy = Strategy::S2;
  } else {
    throw UsageError("--strategy must be s1 or s2");
  }
  if (!seeds.empty()) spec.seeds = seeds;
  if (spec.max_iter < 1) throw UsageError("--max-iter must be >= 1");
  if (spec.popsize == 1) throw UsageError("--popsize must be >= 2");
  if (!(spec.sigma0 > 0.0)) throw UsageError("--sigma0 must be > 0");
  if (!(spec.var_norm_tol > 0.0)) throw UsageError("--var-norm-tol must be > 0");
  if (!x0.empty()) {
    const auto v = parse_real_list(x0, "--x0");
    if (static_cast<Eigen::Index>(v.size()) != spec.dim) {
      throw UsageError("--x0 has " + std::to_string(v.size()) + " coordinates, expected --dim");
    }
    spec.x0 = Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  if (!levels.empty()) {
    const auto v = parse_real_list(levels, "--levels");
    if (v.size() != 5) throw UsageError("--levels needs five values");
    for (double x : v) {
      if (x < 0 || x != std::floor(x)) throw UsageError("--levels must be nonnegative integers");
    }
    spec.levels = {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]),
                   static_cast<std::size_t>(v[2]), static_cast<std::size_t>(v[3]),
                   static_cast<std::size_t>(v[4])};
  }
  if (!factors.empty()) {
    const auto v = parse_real_list(factors, "--factors");
    if (v.size() != 4) throw UsageError("--factors needs four values");
    spec.factors = {v[0], v[1], v[2], v[3]};
  }
  try {
    init_restart(spec.levels, spec.factors);
  } catch (const InvalidLevels& e) {
    throw UsageError(e.what());
  }
  if (switch_iter > 0) spec.strategy_switch_iter = switch_iter;
  spec.out_dir = out_dir;
  spec.eval_mode = parallel ? ExecutionMode::Parallel : ExecutionMode::Serial;
  return spec;
}

OptimizerConfig make_config(const RunSpec& spec, std::uint64_t seed) {
  const Benchmark bench = registry_lookup(spec.function, spec.dim);
  OptimizerConfig c;
  c.x0 = spec.x0 ? *spec.x0 : bench.spec.default_x0;
  c.sigma0 = spec.sigma0;
  c.popsize = spec.popsize;
  c.max_iter = spec.max_iter;
  c.stall_limit = spec.stall_limit;
  c.var_norm_tol = spec.var_norm_tol;
  c.strategy = spec.strategy;
  c.strategy_switch_iter = spec.strategy_switch_iter;
  c.levels = spec.levels;
  c.factors = spec.factors;
  c.seed = seed;
  c.eval_mode = spec.eval_mode;
  return c;
}

std::string trace_file_name(const RunSpec& spec, std::uint64_t seed) {
  return spec.function + "_" + to_string(spec.strategy) + "_" + std::to_string(seed) + ".csv";
}

void write_trace_csv(std::ostream& os, const RunResult& result, double global_min_value) {
  os << kTraceCsvHeader << '\n';
  for (const auto& row : result.trace) {
    os << row.iter << ',' << format_double(row.f_best_iter) << ',' << format_double(row.f_min_so_far)
       << ',' << format_double(row.f_min_so_far - global_min_value) << ','
       << format_double(row.cov_frobenius_norm) << ',' << row.retrial << ',' << to_string(row.event)
       << '\n';
  }
}

void run_experiment(const RunSpec& spec, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + spec.out_dir.string() + ": " + ec.message());

  const Benchmark bench = registry_lookup(spec.function, spec.dim);
  auto summary = nlohmann::json::array();
  for (const auto seed : spec.seeds) {
    const OptimizerConfig config = make_config(spec, seed);
    RunResult result;
    try {
      result = run(config, bench.evaluate);
    } catch (const PriorDegeneracy& e) {
      log << "seed " << seed << ": " << e.what() << '\n';
      result = e.partial();
    }

    const auto path = spec.out_dir / trace_file_name(spec, seed);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    write_trace_csv(os, result, bench.spec.global_min_value);
    os.close();
    if (!os) throw IoError("failed writing " + path.string());

    nlohmann::json entry;
    entry["function"] = spec.function;
    entry["strategy"] = to_string(spec.strategy);
    entry["seed"] = seed;
    entry["f_best"] = result.f_best;
    entry["iterations"] = result.iterations;
    entry["stop_reason"] = to_string(result.stop_reason);
    summary.push_back(entry);
    log << path.string() << ": f_best=" << format_double(result.f_best)
        << " iterations=" << result.iterations << " stop=" << to_string(result.stop_reason) << '\n';
  }

  const auto summary_path = spec.out_dir / "summary.json";
  std::ofstream os(summary_path, std::ios::binary);
  if (!os) throw IoError("cannot open " + summary_path.string() + " for writing");
  os << summary.dump(2) << '\n';
  os.close();
  if (!os) throw IoError("failed writing " + summary_path.string());
}

TraceCsv read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  TraceCsv out;
  out.source = path;
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw SchemaError(path.string() + ": missing or unexpected header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 7) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno) + ": expected 7 columns");
    }
    try {
      std::size_t used = 0;
      const unsigned long long it = std::stoull(cols[0], &used);
      if (used != cols[0].size()) throw std::invalid_argument(cols[0]);
      const double err = std::stod(cols[3], &used);
      if (used != cols[3].size()) throw std::invalid_argument(cols[3]);
      out.iter.push_back(static_cast<std::size_t>(it));
      out.error_vs_min.push_back(err);
    } catch (const std::exception&) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return out;
}

std::string trace_label(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  const auto last = stem.rfind('_');
  if (last != std::string::npos && last > 0) {
    const auto prev = stem.rfind('_', last - 1);
    const std::string seed = stem.substr(last + 1);
    const std::string strat = prev == std::string::npos ? "" : stem.substr(prev + 1, last - prev - 1);
    const bool numeric = !seed.empty() && std::all_of(seed.begin(), seed.end(), ::isdigit);
    if (numeric && strat == "s1") return "B-CMA-ES S1";
    if (numeric && strat == "s2") return "B-CMA-ES S2";
  }
  return stem;
}

namespace {

constexpr double kLogFloor = 1e-16;

std::string color_for(const std::string& label, std::size_t index) {
  static const char* palette[] = {"#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  if (label.rfind("B-CMA-ES S1", 0) == 0) return "#ff7f0e";
  if (label.rfind("B-CMA-ES S2", 0) == 0) return "#1f77b4";
  return palette[index % (sizeof palette / sizeof *palette)];
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_svg(std::ostream& os, const std::vector<TraceCsv>& runs, const std::vector<std::string>& labels) {
  constexpr double width = 800, height = 500;
  constexpr double left = 70, right = 200, top = 30, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t max_iter = 1;
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    for (std::size_t i = 0; i < r.iter.size(); ++i) {
      max_iter = std::max(max_iter, r.iter[i]);
      const double y = std::log10(std::max(r.error_vs_min[i], 0.0) + kLogFloor);
      if (std::isfinite(y)) {
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (!std::isfinite(y_lo)) y_lo = -16, y_hi = 0;
  y_lo = std::floor(y_lo);
  y_hi = std::ceil(y_hi);
  if (y_hi <= y_lo) y_hi = y_lo + 1;

  auto px = [&](double it) { return left + plot_w * (it - 1.0) / std::max<double>(1.0, max_iter - 1.0); };
  auto py = [&](double y) { return top + plot_h * (y_hi - y) / (y_hi - y_lo); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double step = std::max(1.0, std::ceil((y_hi - y_lo) / 10.0));
  for (double y = y_lo; y <= y_hi + 1e-9; y += step) {
    os << "<line x1=\"" << left << "\" x2=\"" << left + plot_w << "\" y1=\"" << py(y) << "\" y2=\"" << py(y)
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">1e" << y
       << "</text>\n";
  }
  for (int t = 0; t <= 5; ++t) {
    const double it = 1.0 + (max_iter - 1.0) * t / 5.0;
    os << "<text x=\"" << px(it) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
       << static_cast<long long>(std::llround(it)) << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">iteration</text>\n";
  os << "<text transform=\"translate(18," << top + plot_h / 2
     << ") rotate(-90)\" text-anchor=\"middle\">error vs minimum (log10)</text>\n";

  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto color = color_for(labels[r], r);
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < runs[r].iter.size(); ++i) {
      const double y = std::log10(std::max(runs[r].error_vs_min[i], 0.0) + kLogFloor);
      if (!std::isfinite(y)) continue;
      os << px(static_cast<double>(runs[r].iter[i])) << ',' << py(y) << ' ';
    }
    os << "\"/>\n";
    const double ly = top + 16.0 + 18.0 * r;
    os << "<line x1=\"" << left + plot_w + 12 << "\" x2=\"" << left + plot_w + 36 << "\" y1=\"" << ly - 4
       << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + plot_w + 42 << "\" y=\"" << ly << "\">" << xml_escape(labels[r]) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace

PlotOutputs emit_plot_data(const std::vector<std::filesystem::path>& csv_paths,
                           const std::filesystem::path& out_dir, const std::string& stem) {
  if (csv_paths.empty()) throw SchemaError("emit_plot_data: no trace files given");
  std::vector<TraceCsv> runs;
  for (const auto& p : csv_paths) runs.push_back(read_trace_csv(p));

  std::vector<std::string> labels;
  std::map<std::string, int> counts;
  for (const auto& p : csv_paths) ++counts[trace_label(p)];
  for (const auto& p : csv_paths) {
    auto label = trace_label(p);
    if (counts[label] > 1) label += " (" + p.stem().string() + ")";
    labels.push_back(label);
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  PlotOutputs outputs{out_dir / (stem + ".dat"), out_dir / (stem + ".svg")};

  std::size_t rows = 0;
  for (const auto& r : runs) rows = std::max(rows, r.iter.size());
  {
    std::ofstream os(outputs.data, std::ios::binary);
    if (!os) throw IoError("cannot open " + outputs.data.string());
    os << "iter";
    for (const auto& l : labels) os << '\t' << l;
    os << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
      os << (i + 1);
      for (const auto& r : runs) {
        os << '\t';
        if (i < r.error_vs_min.size()) os << format_double(r.error_vs_min[i]);
      }
      os << '\n';
    }
    if (!os) throw IoError("failed writing " + outputs.data.string());
  }
  {
    std::ofstream os(outputs.svg, std::ios::binary);
    if (!os) throw IoError("cannot open " + outputs.svg.string());
    write_svg(os, runs, labels);
    if (!os) throw IoError("failed writing " + outputs.svg.string());
  }
  return outputs;
}

namespace {

int plot_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convert trace CSVs into a plot data file and an SVG chart", "bcmaes plot"};
  std::vector<std::string> files;
  std::string out_dir = ".";
  std::string stem = "convergence";
  app.add_option("csv", files, "trace CSV files");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--name", stem, "output file stem")->capture_default_str();
  std::vector<const char*> argv{"bcmaes plot"};
  for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    std::vector<std::filesystem::path> paths(files.begin(), files.end());
    const auto written = emit_plot_data(paths, out_dir, stem);
    out << written.data.string() << '\n' << written.svg.string() << '\n';
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() > 1 && args[1] == "plot") {
    std::vector<std::string> rest(args.begin() + 1, args.end());
    return plot_main(rest, out, err);
  }
  try {
    const auto spec = parse_args(args, out);
    if (!spec) return kExitOk;
    run_experiment(*spec, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace bcmaes
