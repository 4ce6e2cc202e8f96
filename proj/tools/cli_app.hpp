#pragma once

// The `sslud` command-line tool. Kept in a header so tests can drive it
// in-process with captured streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sslud/sslud.hpp"

namespace sslud::cli {

enum ExitCode : int { kOk = 0, kModelError = 1, kInputError = 2 };

namespace detail {

inline SeriesInput read_input(const std::string& path) {
  if (path == "-") return read_series(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open input file '" + path + "'");
  return read_series(in);
}

inline Sample load_sample(const std::string& path, const std::string& kind) {
  auto input = read_input(path);
  if (kind == "prices") return pct_change(PriceSeries{std::move(input.dates), std::move(input.values)});
  return Sample(std::move(input.values));
}

inline GridSpec read_grid_spec(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open grid spec '" + path + "'");
  GridSpec spec;
  try {
    const auto j = nlohmann::json::parse(in);
    spec.mus = j.at("mus").get<std::vector<double>>();
    spec.ns = j.at("ns").get<std::vector<std::size_t>>();
    spec.reps = j.value("reps", std::size_t{2000});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("grid spec: ") + e.what());
  }
  spec.seed = seed;
  return spec;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skew-symmetric-Laplace-uniform distribution toolkit", "sslud"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  bool csv = false;
  app.add_option("--out", out_path, "Write the table to this file instead of stdout");
  app.add_flag("--csv", csv, "Comma-separated output (default: tab)");

  std::string input = "-";
  std::string kind = "returns";
  double shift_by = 0.0;
  std::string overlay_path;
  std::size_t overlay_grid = 200;
  auto* fit_cmd = app.add_subcommand("fit-compare", "Fit SSLUD, SL, Laplace and Normal; rank by AIC/BIC");
  fit_cmd->add_option("--input", input, "Delimited data file ('-' for stdin)")->required();
  fit_cmd->add_option("--kind", kind, "Input holds prices or returns")->check(CLI::IsMember({"prices", "returns"}));
  fit_cmd->add_option("--shift", shift_by, "Subtract this constant from every return");
  fit_cmd->add_option("--overlay", overlay_path, "Also write the observed/fitted density table here");
  fit_cmd->add_option("--grid", overlay_grid, "Points in the density overlay grid")->check(CLI::Range(16, 1000000));

  std::string threshold = "mean";
  auto* runs_cmd = app.add_subcommand("runs-test", "Wald-Wolfowitz runs test and descriptive statistics");
  runs_cmd->add_option("--input", input, "Delimited data file ('-' for stdin)")->required();
  runs_cmd->add_option("--kind", kind, "Input holds prices or returns")->check(CLI::IsMember({"prices", "returns"}));
  runs_cmd->add_option("--shift", shift_by, "Subtract this constant from every return");
  runs_cmd->add_option("--threshold", threshold, "Dichotomize about the mean or the median")
      ->check(CLI::IsMember({"mean", "median"}));

  double mu = 1.0;
  std::size_t n = 100;
  std::size_t reps = 2000;
  std::uint64_t seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Bias and MSE of both estimators for one (mu, n) cell");
  sim_cmd->add_option("--mu", mu)->required();
  sim_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed)->required();

  std::string spec_path;
  unsigned threads = 1;
  auto* grid_cmd = app.add_subcommand("sim-grid", "Bias/MSE study over a JSON grid {mus, ns, reps}");
  grid_cmd->add_option("--spec", spec_path)->required();
  grid_cmd->add_option("--seed", seed)->required();
  grid_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::size_t bins = 40;
  auto* density_cmd = app.add_subcommand("sampling-density", "Histogram of MLE and moment estimates");
  density_cmd->add_option("--mu", mu)->required();
  density_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  density_cmd->add_option("--reps", reps)->check(CLI::Range(100, 100000000));
  density_cmd->add_option("--seed", seed)->required();
  density_cmd->add_option("--bins", bins)->check(CLI::PositiveNumber);

  auto* sample_cmd = app.add_subcommand("sample", "Draw a random sample from SSLUD(mu)");
  sample_cmd->add_option("--mu", mu)->required();
  sample_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", seed)->required();

  double step = 0.1;
  double limit = 0.0;
  auto* median_cmd = app.add_subcommand("median-table", "Median of SSLUD(mu) for mu = 0.25, 0.5, ..., 1.5");
  auto* measures_cmd = app.add_subcommand("measures-curve", "Mean, variance, skewness, kurtosis over mu");
  measures_cmd->add_option("--step", step)->check(CLI::PositiveNumber);
  measures_cmd->add_option("--limit", limit, "Largest |mu| (default 10)");
  auto* entropy_cmd = app.add_subcommand("entropy-curve", "Shannon entropy over mu > 0");
  entropy_cmd->add_option("--step", step)->check(CLI::PositiveNumber);
  entropy_cmd->add_option("--limit", limit, "Largest mu (default 30)");

  std::vector<std::string> argv_store{"sslud"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error\tinput\tcannot open output file '" << out_path << "'\n";
      return kInputError;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;
  const char sep = csv ? ',' : '\t';
  auto emit = [&](const Table& t) { write_table(sink, t, sep); };

  try {
    if (*fit_cmd) {
      const Sample data = shift(detail::load_sample(input, kind), shift_by);
      const auto cmp = fit_compare(data);
      emit(comparison_table(cmp));
      if (cmp.best_aic) err << "best_aic\t" << to_string(*cmp.best_aic) << '\n';
      if (cmp.best_bic) err << "best_bic\t" << to_string(*cmp.best_bic) << '\n';
      if (!overlay_path.empty()) {
        std::ofstream overlay(overlay_path);
        if (!overlay) throw Error(ErrorCode::InvalidInput, "cannot open overlay file '" + overlay_path + "'");
        write_table(overlay, density_overlay(data, cmp, overlay_grid).to_table(), sep);
      }
      for (const auto& f : cmp.failures) err << "error\t" << to_string(f.model) << '\t' << f.message << '\n';
      return cmp.ok() ? kOk : kModelError;
    }
    if (*runs_cmd) {
      const Sample data = shift(detail::load_sample(input, kind), shift_by);
      const auto d = describe(data);
      const auto r = runs_test(data, threshold == "median" ? RunsThreshold::Median : RunsThreshold::Mean);
      Table t{{"n", "mean", "variance", "skewness", "threshold", "runs", "above", "below", "z", "p_value"}, {}};
      t.add_row({std::to_string(d.n), format_number(d.mean), format_number(d.variance), format_number(d.skewness),
                 format_number(r.threshold), std::to_string(r.runs), std::to_string(r.above),
                 std::to_string(r.below), format_number(r.z), format_number(r.p_value)});
      emit(t);
      return kOk;
    }
    if (*sim_cmd) {
      RngStream stream(seed, 0);
      SimGrid grid{{mu}, {n}, reps, seed, {}};
      try {
        grid.cells.push_back(run_cell(mu, n, reps, stream));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DomainError) throw;
        err << "error\tcell\t" << e.what() << '\n';
        return kModelError;
      }
      emit(grid_table(grid));
      return kOk;
    }
    if (*grid_cmd) {
      const auto grid = run_grid(detail::read_grid_spec(spec_path, seed), threads);
      emit(grid_table(grid));
      for (const auto& c : grid.cells) {
        if (!c.ok()) err << "error\tcell\t" << c.diagnostic << '\n';
      }
      return grid.ok() ? kOk : kModelError;
    }
    if (*density_cmd) {
      RngStream stream(seed, 0);
      const auto d = sampling_density(mu, n, reps, stream, bins);
      Table t{{"estimator", "bin_lo", "bin_hi", "density"}, {}};
      auto add = [&t](const char* name, const Histogram& h) {
        for (std::size_t i = 0; i < h.density.size(); ++i) {
          t.add_row({name, format_number(h.edges[i]), format_number(h.edges[i + 1]), format_number(h.density[i])});
        }
      };
      add("mle", d.mle_histogram);
      add("mom", d.mom_histogram);
      emit(t);
      err << "mle_shape\tskewness=" << format_number(d.mle_shape.skewness)
          << "\texcess_kurtosis=" << format_number(d.mle_shape.excess_kurtosis) << '\n';
      err << "mom_shape\tskewness=" << format_number(d.mom_shape.skewness)
          << "\texcess_kurtosis=" << format_number(d.mom_shape.excess_kurtosis) << '\n';
      return kOk;
    }
    if (*sample_cmd) {
      RngStream stream(seed, 0);
      Table t{{"x"}, {}};
      for (double x : sample(SsludParams(mu), n, stream)) t.add_numeric_row({x});
      emit(t);
      return kOk;
    }
    if (*median_cmd) {
      emit(median_table());
      return kOk;
    }
    if (*measures_cmd) {
      emit(measures_curve(step, limit > 0.0 ? limit : 10.0));
      return kOk;
    }
    if (*entropy_cmd) {
      emit(entropy_curve(step, limit > 0.0 ? limit : 30.0));
      return kOk;
    }
  } catch (const Error& e) {
    err << "error\t" << to_string(e.code()) << '\t' << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error\tinternal\t" << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace sslud::cli
