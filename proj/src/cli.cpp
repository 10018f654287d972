#include "hexperc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hexperc/exact.hpp"
#include "hexperc/format.hpp"
#include "hexperc/lattice.hpp"
#include "hexperc/montecarlo.hpp"
#include "hexperc/pathsum.hpp"
#include "hexperc/rng.hpp"
#include "hexperc/stats.hpp"

#ifndef HEXPERC_VERSION
#define HEXPERC_VERSION "0.1.0"
#endif

namespace hexperc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string version_string() { return HEXPERC_VERSION; }

int default_workers() {
  if (const char* env = std::getenv("HEXPERC_WORKERS"); env != nullptr && *env != '\0') {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("HEXPERC_WORKERS must be a positive integer, got '") + env + "'");
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

std::uint64_t derive_seed(std::uint64_t seed, int s, int n) {
  return mix64(seed ^ mix64((static_cast<std::uint64_t>(s) << 32) | static_cast<std::uint32_t>(n)));
}

namespace {

int parse_int(const std::string& token, const std::string& context) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) throw UsageError("invalid integer '" + token + "' in " + context);
  return value;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw UsageError("empty list");
  std::vector<int> out;
  const auto range = text.find("..");
  if (range == std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(trim(item), "list '" + text + "'"));
    return out;
  }
  const int lo = parse_int(trim(text.substr(0, range)), "range '" + text + "'");
  std::string rest = trim(text.substr(range + 2));
  int step = 1;
  std::string hi_text = rest;
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    hi_text = trim(rest.substr(0, colon));
    step = parse_int(trim(rest.substr(colon + 1)), "range '" + text + "'");
  } else if (const auto word = rest.find("step"); word != std::string::npos) {
    hi_text = trim(rest.substr(0, word));
    step = parse_int(trim(rest.substr(word + 4)), "range '" + text + "'");
  }
  const int hi = parse_int(hi_text, "range '" + text + "'");
  if (step < 1) throw UsageError("range step must be >= 1 in '" + text + "'");
  if (hi < lo) throw UsageError("range end below start in '" + text + "'");
  for (int v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

Command parse_invocation(const std::vector<std::string>& argv) {
  Command cmd;
  cmd.argv = argv;
  cmd.workers = default_workers();

  CLI::App app{"Percolation laboratory for parity-constrained multi-fluid colorings of the hexagonal lattice",
               "hexperc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  std::string format = "csv";
  std::string s_list_text;
  std::string n_list_text;
  std::vector<std::string> s_list_tokens;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cmd.seed, "Base seed (default 0)");
    sub->add_option("--workers", cmd.workers, "Worker threads (default: HEXPERC_WORKERS or hardware threads)");
    sub->add_option("--out", cmd.out_dir, "Output directory (default .)");
    sub->add_option("--format", format, "csv, json or both (default csv)");
    sub->add_flag("!--no-timestamp", cmd.timestamp, "Omit the timestamp field from outputs");
  };

  auto* sample = app.add_subcommand("sample", "Monte Carlo tally for one (s, n)");
  sample->add_option("--s", cmd.s, "Lattice side")->required();
  sample->add_option("--n", cmd.n, "Number of fluids")->required();
  sample->add_option("--samples", cmd.samples, "Number of colorings (default 100000)");
  add_common(sample);

  auto* exact = app.add_subcommand("exact", "Exact enumeration report for a tiny (s, n)");
  exact->add_option("--s", cmd.s, "Lattice side")->required();
  exact->add_option("--n", cmd.n, "Number of fluids")->required();
  exact->add_option("--budget", cmd.budget, "Maximum free bits (n-1)*m (default 30)");
  add_common(exact);

  auto* clt = app.add_subcommand("clt", "Standardized CDFs and distances to the normal law");
  clt->add_option("--s", cmd.s, "Lattice side")->required();
  clt->add_option("--n-list", n_list_text, "Fluid counts, e.g. 4,9,16,25")->required();
  clt->add_option("--samples", cmd.samples, "Colorings per n (default 200000)");
  clt->add_option("--calibration-samples", cmd.calibration_samples,
                  "Colorings in the independent run estimating p (default: --samples)");
  add_common(clt);

  auto* figure2 = app.add_subcommand("figure2", "P(exactly k of n percolate) over a grid of s");
  figure2->add_option("--n", cmd.n, "Number of fluids (default 3)");
  figure2->add_option("--s-list", s_list_tokens, "Sides, e.g. 10..60 step 10")->expected(1, 3);
  figure2->add_option("--samples", cmd.samples, "Colorings per s (default 100000)");
  add_common(figure2);

  auto* figure4 = app.add_subcommand("figure4", "Joint-to-product ratio P(all)/p^n over a grid of s");
  figure4->add_option("--n", cmd.n, "Number of fluids (default 3)");
  figure4->add_option("--s-list", s_list_tokens, "Sides, e.g. 2,5,10,20")->expected(1, 3);
  figure4->add_option("--samples", cmd.samples, "Colorings per s (default 1000000)");
  add_common(figure4);

  auto* pathsum = app.add_subcommand("pathsum", "Inclusion-exclusion path-family sums with brute-force checks");
  pathsum->add_option("--graph", cmd.graph, "Builtin graph name or CellGraph JSON file")->required();
  pathsum->add_option("--subset-cap", cmd.subset_cap, "Maximum number of family terms (default 2^24)");
  pathsum->add_option("--budget", cmd.budget, "Brute-force budget in free bits (default 30)");
  add_common(pathsum);

  auto* paths = app.add_subcommand("paths", "Enumerate simple source-to-target paths");
  paths->add_option("--graph", cmd.graph, "Builtin graph name or CellGraph JSON file")->required();
  paths->add_option("--cap", cmd.path_cap, "Maximum number of paths (default 1000000)");
  add_common(paths);

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested(version_string());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  // Help on a subcommand is raised above; the selected one is the only parsed.
  const auto selected = app.get_subcommands().front();
  const std::string name = selected->get_name();
  if (name == "sample") cmd.kind = CommandKind::Sample;
  else if (name == "exact") cmd.kind = CommandKind::Exact;
  else if (name == "clt") cmd.kind = CommandKind::Clt;
  else if (name == "figure2") cmd.kind = CommandKind::Figure2;
  else if (name == "figure4") cmd.kind = CommandKind::Figure4;
  else if (name == "pathsum") cmd.kind = CommandKind::Pathsum;
  else cmd.kind = CommandKind::Paths;

  if (format == "csv") cmd.format = Format::Csv;
  else if (format == "json") cmd.format = Format::Json;
  else if (format == "both") cmd.format = Format::Both;
  else throw UsageError("--format must be csv, json or both, got '" + format + "'");

  if (cmd.workers < 1) throw UsageError("--workers must be >= 1");

  std::string s_list_joined;
  for (const auto& t : s_list_tokens) s_list_joined += (s_list_joined.empty() ? "" : " ") + t;

  const auto need_s = [](int s) {
    if (s < 2) throw UsageError("--s must be >= 2, got " + std::to_string(s));
  };
  const auto need_n = [](int n) {
    if (n < 2 || n > 64) throw UsageError("--n must be in [2, 64], got " + std::to_string(n));
  };
  const auto need_samples = [&](std::uint64_t fallback) {
    if (selected->count("--samples") == 0) cmd.samples = fallback;
    if (cmd.samples < 1) throw UsageError("--samples must be >= 1");
  };

  switch (cmd.kind) {
    case CommandKind::Sample:
      need_s(cmd.s);
      need_n(cmd.n);
      need_samples(100000);
      break;
    case CommandKind::Exact:
      need_s(cmd.s);
      need_n(cmd.n);
      if (cmd.budget < 1 || cmd.budget > 40) throw UsageError("--budget must be in [1, 40]");
      break;
    case CommandKind::Clt:
      need_s(cmd.s);
      cmd.n_list = parse_int_list(n_list_text);
      for (int n : cmd.n_list) need_n(n);
      need_samples(200000);
      if (cmd.calibration_samples == 0) cmd.calibration_samples = cmd.samples;
      break;
    case CommandKind::Figure2:
    case CommandKind::Figure4:
      if (selected->count("--n") == 0) cmd.n = 3;
      need_n(cmd.n);
      cmd.s_list = parse_int_list(s_list_joined.empty()
                                      ? (cmd.kind == CommandKind::Figure2 ? "10..60 step 10" : "2,5,10,20")
                                      : s_list_joined);
      for (int s : cmd.s_list) need_s(s);
      need_samples(cmd.kind == CommandKind::Figure2 ? 100000 : 1000000);
      break;
    case CommandKind::Pathsum:
      if (cmd.subset_cap == 0) cmd.subset_cap = kDefaultSubsetCap;
      if (cmd.budget < 1 || cmd.budget > 40) throw UsageError("--budget must be in [1, 40]");
      break;
    case CommandKind::Paths:
      if (cmd.path_cap == 0) cmd.path_cap = kDefaultPathCap;
      break;
  }
  return cmd;
}

namespace {

std::string join_argv(const std::vector<std::string>& argv) {
  std::string out = "hexperc";
  for (const auto& a : argv) out += " " + a;
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json metadata(const Command& cmd, json params) {
  json meta = {{"command_line", join_argv(cmd.argv)}, {"version", version_string()}, {"seed", cmd.seed}};
  meta["parameters"] = std::move(params);
  if (cmd.timestamp) meta["timestamp"] = utc_timestamp();
  return meta;
}

class Writer {
public:
  Writer(const Command& cmd, CommandResult& result) : cmd_(cmd), result_(result) {
    fs::create_directories(cmd.out_dir);
  }

  void json_file(const std::string& name, const json& meta, json body) {
    body["meta"] = meta;
    write(name, body.dump(2) + "\n");
  }

  void csv_file(const std::string& name, const json& meta, const std::string& table) {
    std::ostringstream out;
    out << "# command: " << meta.at("command_line").get<std::string>() << '\n';
    out << "# version: " << meta.at("version").get<std::string>() << '\n';
    out << "# seed: " << meta.at("seed").get<std::uint64_t>() << '\n';
    out << "# parameters: " << meta.at("parameters").dump() << '\n';
    if (meta.contains("timestamp")) out << "# timestamp: " << meta.at("timestamp").get<std::string>() << '\n';
    out << table;
    write(name, out.str());
  }

  bool want_csv() const { return cmd_.format != Format::Json; }
  bool want_json() const { return cmd_.format != Format::Csv; }

private:
  void write(const std::string& name, const std::string& text) {
    const auto path = fs::path(cmd_.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    result_.files.push_back(path.string());
  }

  const Command& cmd_;
  CommandResult& result_;
};

json estimates_json(const Estimates& e) {
  json b = json::array();
  for (std::size_t k = 0; k < e.b_hat.size(); ++k) {
    b.push_back({{"k", k}, {"p", e.b_hat[k]}, {"lo", e.b_ci[k].lo}, {"hi", e.b_ci[k].hi}});
  }
  json out = {{"p_hat", e.p_hat},   {"p_se", e.p_se},       {"p_lo", e.p_ci.lo},
              {"p_hi", e.p_ci.hi},  {"B", b},               {"all_hat", e.all_hat},
              {"ratio", nullptr},   {"ratio_lo", nullptr},  {"ratio_hi", nullptr}};
  if (e.ratio) {
    out["ratio"] = *e.ratio;
    out["ratio_lo"] = e.ratio_ci.lo;
    out["ratio_hi"] = e.ratio_ci.hi;
  } else {
    out["ratio_note"] = "undefined: p_hat is 0 or 1";
  }
  return out;
}

CommandResult run_sample(const Command& cmd) {
  CommandResult result;
  Writer writer(cmd, result);
  const auto lat = build_lattice(cmd.s);
  const RunConfig cfg{cmd.s, cmd.n, cmd.samples, cmd.seed, cmd.workers};
  const auto tally = run(lat, cfg);
  tally.check_invariants();
  const auto est = estimate(tally);

  const json meta = metadata(cmd, {{"s", cmd.s}, {"n", cmd.n}, {"m", lat.m()}, {"samples", cmd.samples}});
  const std::string stem = "sample_s" + std::to_string(cmd.s) + "_n" + std::to_string(cmd.n);
  writer.json_file(stem + ".json", meta, {{"tally", tally_to_json(tally)}, {"estimates", estimates_json(est)}});
  if (writer.want_csv()) {
    writer.csv_file(stem + ".csv", meta, estimates_csv_header(cmd.n) + "\n" + estimates_csv_row(est) + "\n");
  }
  result.summary = {{"command", "sample"}, {"tally", tally_to_json(tally)}, {"estimates", estimates_json(est)}};
  return result;
}

CommandResult run_exact(const Command& cmd) {
  CommandResult result;
  Writer writer(cmd, result);
  const auto lat = build_lattice(cmd.s);
  const auto dist = exact_distribution(lat, cmd.n, cmd.budget);
  json report = exact_report_json(dist);

  const bool ok = report["independence"]["proper_subsets_factorize"].get<bool>() &&
                  report["moments"]["matches_closed_forms"].get<bool>() &&
                  report["fraction_identity_holds"].get<bool>() && report["embedding_bounds_hold"].get<bool>();
  const json meta = metadata(cmd, {{"s", cmd.s}, {"n", cmd.n}, {"m", lat.m()}, {"budget", cmd.budget}});
  writer.json_file("exact_s" + std::to_string(cmd.s) + "_n" + std::to_string(cmd.n) + ".json", meta, report);
  result.summary = report;
  result.summary["command"] = "exact";
  result.summary["assertions_hold"] = ok;
  result.exit_code = ok ? 0 : 1;
  return result;
}

CommandResult run_clt(const Command& cmd) {
  CommandResult result;
  Writer writer(cmd, result);
  const auto lat = build_lattice(cmd.s);

  // p comes from an independent calibration run so no curve is centered on itself.
  const int calibration_n = *std::max_element(cmd.n_list.begin(), cmd.n_list.end());
  const std::uint64_t calibration_seed = derive_seed(cmd.seed, cmd.s, 0);
  const auto calibration =
      run(lat, RunConfig{cmd.s, calibration_n, cmd.calibration_samples, calibration_seed, cmd.workers});
  const auto cal = estimate(calibration);
  const double p = cal.p_hat;
  if (!(p > 0 && p < 1)) throw Refusal("calibration estimate of p is degenerate (" + format_double(p) + ")");

  const json meta_base = {{"s", cmd.s},
                          {"m", lat.m()},
                          {"samples", cmd.samples},
                          {"calibration_samples", cmd.calibration_samples},
                          {"calibration_seed", calibration_seed},
                          {"calibration_n", calibration_n},
                          {"p_calibrated", p},
                          {"p_calibrated_se", cal.p_se}};

  std::ostringstream summary_csv;
  summary_csv << "n,samples,seed,p,ks_empirical,ks_binomial,ks_difference,berry_esseen,gap_sup,gap_bound,"
                 "gap_tolerance,gap_holds\n";
  json rows = json::array();
  bool gaps_hold = true;
  for (int n : cmd.n_list) {
    const std::uint64_t seed = derive_seed(cmd.seed, cmd.s, n);
    const auto tally = run(lat, RunConfig{cmd.s, n, cmd.samples, seed, cmd.workers});
    tally.check_invariants();
    const auto ks = ksample_from_tally(tally);
    const auto zs = zsample_from_tally(tally);
    const auto step = standardized_cdf(ks, p);
    const auto binom = binomial_pmf(n, p);
    const auto binom_step = standardized_cdf_from_pmf(n, binom, p);
    const double ks_emp = ks_distance(step);
    const double ks_ref = ks_distance(binom_step);
    const double be = berry_esseen_bound(p, n);
    const auto gap = fraction_gap(ks, zs, p);
    gaps_hold = gaps_hold && gap.holds;

    std::ostringstream cdf;
    cdf << "k,x,pmf,cdf,normal_cdf,binomial_pmf,binomial_cdf\n";
    for (int k = 0; k <= n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double x = step.points[i];
      cdf << k << ',' << format_double(x) << ','
          << format_double(static_cast<double>(ks.counts[i]) / static_cast<double>(ks.samples)) << ','
          << format_double(step.levels[i]) << ',' << format_double(normal_cdf(x)) << ',' << format_double(binom[i])
          << ',' << format_double(binom_step.levels[i]) << '\n';
    }
    json params = meta_base;
    params["n"] = n;
    params["run_seed"] = seed;
    const auto meta = metadata(cmd, params);
    const std::string stem = "clt_s" + std::to_string(cmd.s) + "_n" + std::to_string(n);
    if (writer.want_csv()) writer.csv_file(stem + ".csv", meta, cdf.str());
    if (writer.want_json()) writer.json_file(stem + ".json", meta, {{"tally", tally_to_json(tally)}});

    summary_csv << n << ',' << cmd.samples << ',' << seed << ',' << format_double(p) << ',' << format_double(ks_emp)
                << ',' << format_double(ks_ref) << ',' << format_double(std::abs(ks_emp - ks_ref)) << ','
                << format_double(be) << ',' << format_double(gap.sup_gap) << ',' << format_double(gap.bound) << ','
                << format_double(gap.tolerance) << ',' << gap.holds << '\n';
    rows.push_back({{"n", n},
                    {"seed", seed},
                    {"ks_empirical", ks_emp},
                    {"ks_binomial", ks_ref},
                    {"berry_esseen", be},
                    {"gap_sup", gap.sup_gap},
                    {"gap_bound", gap.bound},
                    {"gap_tolerance", gap.tolerance},
                    {"gap_holds", gap.holds},
                    {"tally", tally_to_json(tally)}});
  }
  const auto meta = metadata(cmd, meta_base);
  const std::string stem = "clt_s" + std::to_string(cmd.s) + "_summary";
  if (writer.want_csv()) writer.csv_file(stem + ".csv", meta, summary_csv.str());
  result.summary = {{"command", "clt"}, {"p_calibrated", p}, {"p_calibrated_se", cal.p_se}, {"rows", rows},
                    {"gaps_hold", gaps_hold}};
  writer.json_file(stem + ".json", meta, result.summary);
  result.exit_code = gaps_hold ? 0 : 1;
  return result;
}

std::vector<Tally> run_grid(const Command& cmd, json& seeds) {
  std::vector<Tally> tallies;
  for (int s : cmd.s_list) {
    const auto lat = build_lattice(s);
    const std::uint64_t seed = derive_seed(cmd.seed, s, cmd.n);
    seeds.push_back({{"s", s}, {"seed", seed}});
    auto tally = run(lat, RunConfig{s, cmd.n, cmd.samples, seed, cmd.workers});
    tally.check_invariants();
    tallies.push_back(std::move(tally));
  }
  return tallies;
}

CommandResult run_figure2(const Command& cmd) {
  CommandResult result;
  Writer writer(cmd, result);
  json seeds = json::array();
  const auto tallies = run_grid(cmd, seeds);
  const auto report = ordering_check(tallies);

  json entries = json::array();
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    json b = json::array();
    for (std::size_t k = 0; k < e.b_hat.size(); ++k) {
      b.push_back({{"k", k}, {"p", e.b_hat[k]}, {"lo", e.b_ci[k].lo}, {"hi", e.b_ci[k].hi}});
    }
    entries.push_back({{"s", e.s},
                       {"B", b},
                       {"determined", e.determined},
                       {"strictly_decreasing", e.strictly_decreasing},
                       {"separated", e.separated},
                       {"tally", tally_to_json(tallies[i])}});
  }
  const auto meta = metadata(cmd, {{"n", cmd.n}, {"s_list", cmd.s_list}, {"samples", cmd.samples}, {"seeds", seeds}});
  const std::string stem = "figure2_n" + std::to_string(cmd.n);
  if (writer.want_csv()) writer.csv_file(stem + ".csv", meta, ordering_csv(report));
  result.summary = {{"command", "figure2"}, {"entries", entries}};
  if (writer.want_json()) writer.json_file(stem + ".json", meta, result.summary);
  return result;
}

CommandResult run_figure4(const Command& cmd) {
  CommandResult result;
  Writer writer(cmd, result);
  json seeds = json::array();
  const auto tallies = run_grid(cmd, seeds);

  std::ostringstream csv;
  csv << "s,n,samples,seed,p_hat,all_hat,ratio,ratio_lo,ratio_hi,deviation,exact_ratio\n";
  json rows = json::array();
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    const auto e = estimate(tallies[i]);
    const int s = cmd.s_list[i];
    std::optional<Rational> exact_ratio;
    const auto lat = build_lattice(s);
    if (static_cast<long long>(cmd.n - 1) * lat.m() <= kDefaultEnumerationBudget) {
      exact_ratio = verify_independence(exact_distribution(lat, cmd.n)).ratio;
    }
    const double ratio = e.ratio.value_or(std::nan(""));
    csv << s << ',' << cmd.n << ',' << e.samples << ',' << e.seed << ',' << format_double(e.p_hat) << ','
        << format_double(e.all_hat) << ',' << format_double(ratio) << ',' << format_double(e.ratio_ci.lo) << ','
        << format_double(e.ratio_ci.hi) << ',' << format_double(std::abs(ratio - 1.0)) << ','
        << (exact_ratio ? format_double(to_double(*exact_ratio)) : std::string()) << '\n';
    json row = {{"s", s},
                {"seed", e.seed},
                {"estimates", estimates_json(e)},
                {"deviation", std::abs(ratio - 1.0)},
                {"tally", tally_to_json(tallies[i])}};
    if (exact_ratio) row["exact_ratio"] = rational_to_json(*exact_ratio);
    rows.push_back(row);
  }
  const auto meta = metadata(cmd, {{"n", cmd.n}, {"s_list", cmd.s_list}, {"samples", cmd.samples}, {"seeds", seeds}});
  const std::string stem = "figure4_n" + std::to_string(cmd.n);
  if (writer.want_csv()) writer.csv_file(stem + ".csv", meta, csv.str());
  result.summary = {{"command", "figure4"}, {"rows", rows}};
  if (writer.want_json()) writer.json_file(stem + ".json", meta, result.summary);
  return result;
}

CellGraph load_graph(const std::string& arg) {
  const auto names = builtin_graph_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return builtin_graph(arg);
  std::ifstream in(arg);
  if (!in) throw UsageError("--graph '" + arg + "' is neither a builtin graph nor a readable file");
  try {
    return json::parse(in).get<CellGraph>();
  } catch (const json::exception& e) {
    throw UsageError("malformed CellGraph JSON in '" + arg + "': " + e.what());
  }
}

std::string graph_stem(const std::string& arg) { return fs::path(arg).stem().string(); }

CommandResult run_pathsum(const Command& cmd) {
  CommandResult result;
  Writer writer(cmd, result);
  const auto g = load_graph(cmd.graph);
  json report = {{"graph", cmd.graph}, {"cells", g.cell_count()}, {"subset_cap", cmd.subset_cap}};
  std::vector<std::string> refusals;

  try {
    report["paths"] = count_paths(g);
  } catch (const Refusal& e) {
    refusals.emplace_back(e.what());
  }
  const auto attempt = [&](const char* key, auto&& fn) {
    try {
      report[key] = rational_to_json(fn());
    } catch (const Refusal& e) {
      report[key] = nullptr;
      refusals.emplace_back(e.what());
    }
  };
  attempt("single_fluid_sum", [&] { return single_fluid_sum(g, cmd.subset_cap); });
  attempt("single_fluid_brute_force", [&] { return brute_force_prob(g, 2, FluidEvent::OneFluid, cmd.budget); });
  attempt("triple_fluid_sum", [&] { return triple_fluid_sum(g, cmd.subset_cap); });
  attempt("triple_fluid_brute_force", [&] { return brute_force_prob(g, 3, FluidEvent::AllFluids, cmd.budget); });

  bool agree = true;
  for (const auto& [sum, brute] : {std::pair{"single_fluid_sum", "single_fluid_brute_force"},
                                   std::pair{"triple_fluid_sum", "triple_fluid_brute_force"}}) {
    if (!report[sum].is_null() && !report[brute].is_null()) {
      const bool eq = rational_from_json(report[sum]) == rational_from_json(report[brute]);
      report[std::string(sum) + "_matches_brute_force"] = eq;
      agree = agree && eq;
    }
  }
  report["refusals"] = refusals;
  const auto meta = metadata(cmd, {{"graph", cmd.graph}, {"subset_cap", cmd.subset_cap}, {"budget", cmd.budget}});
  writer.json_file("pathsum_" + graph_stem(cmd.graph) + ".json", meta, report);
  result.summary = report;
  result.summary["command"] = "pathsum";
  result.exit_code = !agree ? 1 : (refusals.empty() ? 0 : 3);
  return result;
}

CommandResult run_paths(const Command& cmd) {
  CommandResult result;
  Writer writer(cmd, result);
  const auto g = load_graph(cmd.graph);
  const auto list = enumerate_paths(g, cmd.path_cap);
  json paths = json::array();
  for (const auto& p : list) paths.push_back(p.cells);
  json report = {{"graph", cmd.graph}, {"cells", g.cell_count()}, {"count", list.size()}, {"paths", paths},
                 {"graph_json", g}};
  const auto meta = metadata(cmd, {{"graph", cmd.graph}, {"cap", cmd.path_cap}});
  writer.json_file("paths_" + graph_stem(cmd.graph) + ".json", meta, report);
  result.summary = {{"command", "paths"}, {"graph", cmd.graph}, {"count", list.size()}};
  return result;
}

}  // namespace

CommandResult execute(const Command& cmd) {
  try {
    switch (cmd.kind) {
      case CommandKind::Sample: return run_sample(cmd);
      case CommandKind::Exact: return run_exact(cmd);
      case CommandKind::Clt: return run_clt(cmd);
      case CommandKind::Figure2: return run_figure2(cmd);
      case CommandKind::Figure4: return run_figure4(cmd);
      case CommandKind::Pathsum: return run_pathsum(cmd);
      case CommandKind::Paths: return run_paths(cmd);
    }
  } catch (const Refusal& e) {
    CommandResult refused;
    refused.exit_code = 3;
    refused.summary = {{"refusal", e.what()}};
    return refused;
  }
  throw std::logic_error("unhandled command kind");
}

}  // namespace hexperc::cli
