#include "app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "recsel/datasets.hpp"
#include "recsel/errors.hpp"
#include "recsel/estimators.hpp"
#include "recsel/io.hpp"
#include "recsel/montecarlo.hpp"
#include "recsel/records.hpp"
#include "recsel/serialize.hpp"
#include "recsel/stationarity.hpp"

#ifndef RECSEL_VERSION
#define RECSEL_VERSION "0.0.0"
#endif

namespace recsel::cli {

namespace {

constexpr std::string_view kBundledPrefix = "bundled:";

struct Input {
  std::vector<double> values;
  InputDigest digest;
  std::optional<FamilySpec> bundled_family;
};

struct CommonOptions {
  std::string input;
  std::string column;
  std::string family;
  std::string model = "nonstationary";
  std::string direction = "upper";
  std::string config;
  std::string table;
  std::string out;
  std::string manifest;
  std::string json_out;
  double alpha = 0.05;
  double reps = 1e5;
  bool reps_set = false;
  std::uint64_t seed = kDefaultSeed;
  bool seed_set = false;
  unsigned threads = 0;
  double band_factor = kDefaultBandFactor;
  int n_min = 2;
  int n_max = 10;
  std::vector<double> alphas{0.01, 0.025, 0.05, 0.1};
};

Input load_input(const CommonOptions& opt) {
  if (opt.input.empty()) throw UsageError("--input is required");
  Input in;
  if (opt.input.rfind(kBundledPrefix, 0) == 0) {
    BundledDataset data = bundled_dataset(opt.input.substr(kBundledPrefix.size()));
    std::ostringstream text;
    for (double v : data.values) text << format_number(v) << '\n';
    in.values = data.values;
    in.digest = {opt.input, sha256_hex(text.str())};
    in.bundled_family = data.family;
    return in;
  }
  const std::string text = read_file(opt.input);
  in.values = opt.column.empty() ? parse_sequence(text) : parse_csv_column(text, opt.column);
  in.digest = {opt.input, sha256_hex(text)};
  return in;
}

// Inline JSON when the argument starts with '{', a file path otherwise.
FamilySpec load_family(const std::string& arg, RunManifest& manifest) {
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    text = read_file(arg);
    manifest.inputs.push_back({arg, sha256_hex(text)});
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("family JSON: ") + e.what());
  }
  return family_from_json(j);
}

FamilySpec resolve_family(const CommonOptions& opt, const Input& in, RunManifest& manifest) {
  if (!opt.family.empty()) return load_family(opt.family, manifest);
  if (in.bundled_family) return *in.bundled_family;
  throw UsageError("--family is required");
}

std::size_t replications_from(double reps) {
  if (!(reps >= 1.0) || reps != std::floor(reps) || reps > 1e12) {
    throw UsageError("--reps must be a positive integer");
  }
  return static_cast<std::size_t>(reps);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
  if (!file) throw UsageError("write to '" + path + "' failed");
}

// Sends `text` to --out or to the output stream and records the path.
void emit(const CommonOptions& opt, const std::string& text, std::ostream& out,
          RunManifest& manifest) {
  if (opt.out.empty()) {
    out << text;
  } else {
    write_text(opt.out, text);
    manifest.outputs.push_back(opt.out);
  }
}

void finish_manifest(const CommonOptions& opt, RunManifest& manifest) {
  std::string path = opt.manifest;
  if (path.empty() && !opt.out.empty()) path = opt.out + ".manifest.json";
  if (path.empty()) return;
  write_text(path, manifest.to_json().dump(2) + "\n");
}

std::vector<double> record_keys(const std::vector<double>& values, const FamilySpec& family) {
  return key_records(values, family).values;
}

std::string test_rows(int n, double statistic, double alpha,
                      const std::vector<std::pair<std::string, const CriticalValueTable*>>& tables) {
  std::ostringstream rows;
  rows << "n,statistic,alpha,table,critical_value,decision\n";
  for (const auto& [label, table] : tables) {
    if (!table->contains(n, alpha)) continue;
    rows << n << ',' << format_number(statistic) << ',' << format_number(alpha) << ',' << label
         << ',' << format_number(table->at(n, alpha)) << ','
         << to_string(decide(statistic, n, alpha, *table)) << '\n';
  }
  return rows.str();
}

int cmd_records(const CommonOptions& opt, std::ostream& out, RunManifest& manifest) {
  const Input in = load_input(opt);
  manifest.inputs.push_back(in.digest);
  manifest.config = {{"input", opt.input}, {"direction", opt.direction}};
  if (!opt.column.empty()) manifest.config["column"] = opt.column;
  if (opt.family.empty()) {
    Direction dir = Direction::Upper;
    if (opt.direction == "lower") {
      dir = Direction::Lower;
    } else if (opt.direction != "upper") {
      throw UsageError("--direction must be 'upper' or 'lower'");
    }
    emit(opt, records_to_csv(extract_records(in.values, dir)), out, manifest);
    return kOk;
  }
  const FamilySpec family = load_family(opt.family, manifest);
  manifest.config["family"] = family_to_json(family);
  const RecordSet keys = key_records(in.values, family);
  std::ostringstream csv;
  csv << "index,time,value,key\n";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    csv << i + 1 << ',' << keys.times[i] << ',' << format_number(in.values[keys.times[i] - 1])
        << ',' << format_number(keys.values[i]) << '\n';
  }
  emit(opt, csv.str(), out, manifest);
  return kOk;
}

int cmd_estimate(const CommonOptions& opt, std::ostream& out, RunManifest& manifest) {
  const Input in = load_input(opt);
  manifest.inputs.push_back(in.digest);
  const FamilySpec family = resolve_family(opt, in, manifest);
  const Hypothesis hypothesis = parse_hypothesis(opt.model);
  manifest.config = {{"input", opt.input},
                     {"family", family_to_json(family)},
                     {"model", std::string(to_string(hypothesis))},
                     {"band_factor", opt.band_factor}};
  const auto keys = record_keys(in.values, family);
  if (keys.size() < 2) {
    throw DataError("fewer than 2 records in the input (found " + std::to_string(keys.size()) +
                    ")");
  }
  emit(opt, estimates_to_csv(estimate_path(keys, family, hypothesis, opt.band_factor)), out,
       manifest);
  return kOk;
}

int cmd_simulate(const CommonOptions& opt, std::ostream& out, std::ostream& err,
                 RunManifest& manifest) {
  if (opt.config.empty()) throw UsageError("--config is required");
  const std::string text = read_file(opt.config);
  manifest.inputs.push_back({opt.config, sha256_hex(text)});
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("simulation config: ") + e.what());
  }
  SimulationRequest req = simulation_request_from_json(j);
  if (opt.reps_set) req.config.replications = replications_from(opt.reps);
  if (opt.seed_set) req.config.master_seed = opt.seed;
  req.config.threads = opt.threads;
  req.config.validate();
  manifest.config = simulation_request_to_json(req);
  manifest.master_seed = req.config.master_seed;

  const SimulationSummary summary = bias_risk_table(req.config, req.estimators);
  summary.validate();
  if (summary.replications - summary.truncated < 2) {
    err << "warning: fewer than 2 usable replicates; standard errors are undefined (NA)\n";
  }
  emit(opt, summary_to_csv(summary), out, manifest);
  if (!opt.json_out.empty()) {
    write_text(opt.json_out, summary_to_json(summary).dump(2) + "\n");
    manifest.outputs.push_back(opt.json_out);
  }
  return kOk;
}

int cmd_critvals(const CommonOptions& opt, std::ostream& out, std::ostream& err,
                 RunManifest& manifest) {
  if (opt.n_min < 2 || opt.n_max < opt.n_min) throw UsageError("need 2 <= --n-min <= --n-max");
  const std::size_t reps = replications_from(opt.reps);
  std::vector<int> ns;
  for (int n = opt.n_min; n <= opt.n_max; ++n) ns.push_back(n);
  manifest.config = {{"n_min", opt.n_min}, {"n_max", opt.n_max}, {"alphas", opt.alphas},
                     {"replications", reps}};
  manifest.master_seed = opt.seed;
  if (reps < 10000) {
    err << "warning: " << reps
        << " replications; small-alpha quantiles carry wide Monte Carlo error\n";
  }
  const CriticalValueTable table = critical_values(ns, opt.alphas, reps, opt.seed, opt.threads);
  emit(opt, critical_values_to_csv(table), out, manifest);
  if (!opt.json_out.empty()) {
    write_text(opt.json_out, table_to_json(table).dump(2) + "\n");
    manifest.outputs.push_back(opt.json_out);
  }
  return kOk;
}

int cmd_test(const CommonOptions& opt, std::ostream& out, RunManifest& manifest) {
  const Input in = load_input(opt);
  manifest.inputs.push_back(in.digest);
  const FamilySpec family = resolve_family(opt, in, manifest);
  const auto keys = record_keys(in.values, family);
  if (keys.size() < 2) throw DataError("fewer than 2 records in the input");
  const int n = static_cast<int>(keys.size());
  const double statistic = test_statistic(umvue_path(keys, family));

  manifest.config = {{"input", opt.input}, {"family", family_to_json(family)}, {"alpha", opt.alpha}};
  CriticalValueTable table;
  std::string label;
  if (!opt.table.empty()) {
    const std::string text = read_file(opt.table);
    manifest.inputs.push_back({opt.table, sha256_hex(text)});
    table = critical_values_from_csv(text);
    label = "file";
  } else {
    const std::size_t reps = replications_from(opt.reps);
    const int ns[] = {n};
    const double alphas[] = {opt.alpha};
    table = critical_values(ns, alphas, reps, opt.seed, opt.threads);
    manifest.config["replications"] = reps;
    manifest.master_seed = opt.seed;
    label = "regenerated";
  }
  if (!table.contains(n, opt.alpha)) {
    throw UsageError("critical value table has no cell for n = " + std::to_string(n) +
                     ", alpha = " + format_number(opt.alpha));
  }
  const CriticalValueTable reference = bundled_reference_table();
  emit(opt, test_rows(n, statistic, opt.alpha, {{label, &table}, {"reference", &reference}}),
       out, manifest);
  return kOk;
}

int cmd_demo_rainfall(const CommonOptions& opt, std::ostream& out, RunManifest& manifest) {
  const BundledDataset data = bundled_dataset("lacc-rainfall-records");
  const std::size_t reps = replications_from(opt.reps);
  manifest.config = {{"dataset", data.name},
                     {"family", family_to_json(data.family)},
                     {"alpha", opt.alpha},
                     {"band_factor", opt.band_factor},
                     {"replications", reps}};
  manifest.master_seed = opt.seed;

  const RecordSet records = extract_records(data.values, Direction::Upper);
  const auto keys = record_keys(data.values, data.family);
  const int n = static_cast<int>(keys.size());

  std::ostringstream estimates;
  estimates << "model," << estimate_csv_header() << '\n';
  for (Hypothesis h : {Hypothesis::Stationary, Hypothesis::Nonstationary}) {
    for (const auto& r : estimate_path(keys, data.family, h, opt.band_factor)) {
      estimates << to_string(h) << ',' << estimate_csv_row(r) << '\n';
    }
  }
  const double statistic = test_statistic(umvue_path(keys, data.family));
  const int ns[] = {n};
  const double alphas[] = {opt.alpha};
  const CriticalValueTable regenerated = critical_values(ns, alphas, reps, opt.seed, opt.threads);
  const CriticalValueTable reference = bundled_reference_table();
  const std::string test = test_rows(n, statistic, opt.alpha,
                                     {{"regenerated", &regenerated}, {"reference", &reference}});
  const std::string note =
      "The goodness-of-fit check of the base distribution needs the raw 100-year series, "
      "which is not bundled; only the record values are available.\n";

  if (opt.out.empty()) {
    out << "# records\n" << records_to_csv(records) << "\n# estimates\n" << estimates.str()
        << "\n# stationarity test\n" << test << "\n# note\n" << note;
    return kOk;
  }
  const std::filesystem::path dir(opt.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create directory '" + opt.out + "'");
  const std::pair<std::string, std::string> files[] = {{"records.csv", records_to_csv(records)},
                                                       {"estimates.csv", estimates.str()},
                                                       {"test.csv", test},
                                                       {"NOTE.txt", note}};
  for (const auto& [name, text] : files) {
    const std::string path = (dir / name).string();
    write_text(path, text);
    manifest.outputs.push_back(path);
  }
  return kOk;
}

void add_seed(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--seed", opt.seed, "Master seed")->each([&opt](const std::string&) {
    opt.seed_set = true;
  });
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
}

void add_reps(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--reps", opt.reps, "Monte Carlo replications")->each([&opt](const std::string&) {
    opt.reps_set = true;
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimation for dynamically selected populations from record values", "recsel"};
  app.set_version_flag("--version", std::string(RECSEL_VERSION));
  app.require_subcommand(1);
  CommonOptions opt;

  auto* records = app.add_subcommand("records", "Extract record values from a sequence");
  auto* estimate = app.add_subcommand("estimate", "Estimate the selected parameters");
  auto* simulate = app.add_subcommand("simulate", "Simulate bias and risk tables");
  auto* critvals = app.add_subcommand("critvals", "Simulate critical values of the test");
  auto* test = app.add_subcommand("test", "Test stationarity of a record sequence");
  auto* demo = app.add_subcommand("demo-rainfall", "Run the bundled rainfall example");

  for (auto* cmd : {records, estimate, test}) {
    cmd->add_option("--input", opt.input, "Sequence file, or bundled:<name>")->required();
    cmd->add_option("--column", opt.column, "CSV column name or 1-based index");
  }
  records->add_option("--direction", opt.direction, "upper or lower");
  for (auto* cmd : {records, estimate, test}) {
    cmd->add_option("--family", opt.family, "Family JSON text or path");
  }
  estimate->add_option("--model", opt.model, "stationary or nonstationary");
  for (auto* cmd : {estimate, demo}) {
    cmd->add_option("--band-factor", opt.band_factor, "Band half-width in risk SDs");
  }
  simulate->add_option("--config", opt.config, "Simulation config JSON")->required();
  critvals->add_option("--n-min", opt.n_min, "Smallest record count");
  critvals->add_option("--n-max", opt.n_max, "Largest record count");
  critvals->add_option("--alphas", opt.alphas, "Levels")->delimiter(',');
  for (auto* cmd : {test, demo}) cmd->add_option("--alpha", opt.alpha, "Test level");
  test->add_option("--table", opt.table, "Critical value CSV (regenerated when absent)");
  for (auto* cmd : {simulate, critvals, test, demo}) {
    add_reps(cmd, opt);
    add_seed(cmd, opt);
  }
  for (auto* cmd : {simulate, critvals}) {
    cmd->add_option("--json", opt.json_out, "Also write full-precision JSON here");
  }
  for (auto* cmd : {records, estimate, simulate, critvals, test, demo}) {
    cmd->add_option("--out", opt.out, cmd == demo ? "Output directory" : "Output file");
    cmd->add_option("--manifest", opt.manifest, "Run manifest path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  RunManifest manifest;
  manifest.tool_version = RECSEL_VERSION;
  try {
    int rc = kOk;
    if (*records) {
      manifest.subcommand = "records";
      rc = cmd_records(opt, out, manifest);
    } else if (*estimate) {
      manifest.subcommand = "estimate";
      rc = cmd_estimate(opt, out, manifest);
    } else if (*simulate) {
      manifest.subcommand = "simulate";
      rc = cmd_simulate(opt, out, err, manifest);
    } else if (*critvals) {
      manifest.subcommand = "critvals";
      rc = cmd_critvals(opt, out, err, manifest);
    } else if (*test) {
      manifest.subcommand = "test";
      rc = cmd_test(opt, out, manifest);
    } else if (*demo) {
      manifest.subcommand = "demo-rainfall";
      rc = cmd_demo_rainfall(opt, out, manifest);
      if (!opt.out.empty() && opt.manifest.empty()) {
        CommonOptions o = opt;
        o.manifest = (std::filesystem::path(opt.out) / "manifest.json").string();
        finish_manifest(o, manifest);
        return rc;
      }
    }
    finish_manifest(opt, manifest);
    return rc;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Json::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace recsel::cli
