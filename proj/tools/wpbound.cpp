// wpbound: enumerate cells, evaluate volume bounds, estimate cell volumes and
// run the invariant suites. JSON goes to stdout; every run is also appended
// to <cache-dir>/runs.jsonl with content hashes of its inputs and output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "wpvol/bounds.hpp"
#include "wpvol/mc_engine.hpp"
#include "wpvol/serialize.hpp"
#include "wpvol/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wpvol;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

/// Hash of a blob the way git names objects: sha1("blob <len>\0" + content).
std::string git_blob_hash(const std::string& content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
  EVP_DigestUpdate(ctx, header.data(), header.size());
  EVP_DigestUpdate(ctx, content.data(), content.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

fs::path resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("WPBOUND_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "wpbound";
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "wpbound";
  return ".wpbound-cache";
}

/// Infinite bounds (large genus) are emitted as null; ln values stay finite.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json bound_json(const BoundValue& b) {
  return {{"value", number(b.value)}, {"ln", b.ln_value}, {"formula", b.formula}};
}

void record_run(const fs::path& cache, const std::string& command, const json& params,
                const json& output) {
  const std::string out_text = output.dump();
  json record = {{"command", command},
                 {"parameters", params},
                 {"input_hash", git_blob_hash(json{{"command", command}, {"parameters", params}}.dump())},
                 {"output_hash", git_blob_hash(out_text)},
                 {"output", output},
                 {"timestamp", utc_now()}};
  std::error_code ec;
  fs::create_directories(cache, ec);
  std::ofstream log(cache / "runs.jsonl", std::ios::app);
  if (log) log << record.dump() << '\n';
}

void write_csv(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("cannot write CSV to " + path);
  out << text;
}

struct Args {
  int genus = 1;
  int punctures = 1;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  int shards = 0;
  std::string variant = "assembled";
  std::string suite = "all";
  std::string csv;
  std::string cache_dir;
  int gmax = 500;
};

void check_surface_args(const Args& a) {
  if (a.punctures < 1) throw CLI::ValidationError("--punctures", "must be at least 1");
  if (a.genus < 0) throw CLI::ValidationError("--genus", "must be non-negative");
  if (2 * a.genus + a.punctures < 3)
    throw CLI::ValidationError("--genus/--punctures", "need 2g + n >= 3");
}

// --------------------------------------------------------------------------

int cmd_enumerate(const Args& a, const fs::path& cache, json& out) {
  check_surface_args(a);
  const auto classes = enumerate_trivalent(a.genus, a.punctures);
  write_catalog(cache, a.genus, a.punctures, classes);
  json entries = json::array();
  double weighted = 0;
  std::ostringstream csv;
  csv << "index,aut_order,file\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto file = catalog_entry_path(cache, a.genus, a.punctures, static_cast<int>(i));
    entries.push_back({{"index", i}, {"aut_order", classes[i].aut_order}, {"file", file.string()}});
    csv << i << ',' << classes[i].aut_order << ',' << file.string() << '\n';
    weighted += 1.0 / classes[i].aut_order;
  }
  out = {{"genus", a.genus},
         {"punctures", a.punctures},
         {"count", classes.size()},
         {"aut_weighted_count", weighted},
         {"canonical_form_version", kCanonicalFormVersion},
         {"index", catalog_index_path(cache, a.genus, a.punctures).string()},
         {"entries", entries}};
  write_csv(a.csv, csv.str());
  return kExitOk;
}

int cmd_bound(const Args& a, json& out) {
  check_surface_args(a);
  if (a.genus < 1) throw CLI::ValidationError("--genus", "bounds need genus >= 1");
  const BoundVariant variant = parse_variant(a.variant);
  const bool exact = trivalent_vertex_count(a.genus, a.punctures) <= 6;
  const BoundReport r = bound_report(a.genus, a.punctures, variant, exact);
  out = {{"genus", r.genus},
         {"punctures", r.punctures},
         {"edges", trivalent_edge_count(r.genus, r.punctures)},
         {"vertices", trivalent_vertex_count(r.genus, r.punctures)},
         {"per_graph_bound", bound_json(r.per_graph)},
         {"cell_count_asymptotic", bound_json(r.cell_count_asymptotic)},
         {"triangulation_bound", bound_json(r.triangulation)},
         {"variant", variant_name(r.variant)},
         {"total_upper", bound_json(r.total_upper)},
         {"limit_ratio", number(r.limit_ratio)}};
  if (r.per_graph_n1) out["per_graph_bound_n1"] = bound_json(*r.per_graph_n1);
  if (r.penner_lower) out["penner_lower"] = bound_json(*r.penner_lower);
  if (r.cell_count_exact) out["cell_count_exact"] = *r.cell_count_exact;
  if (r.aut_weighted_count) out["aut_weighted_count"] = *r.aut_weighted_count;
  if (a.punctures == 1) {
    json variants;
    for (BoundVariant v :
         {BoundVariant::Assembled, BoundVariant::ConclusionN1, BoundVariant::GeneralN})
      variants[variant_name(v)] = bound_json(total_upper_bound(a.genus, 1, v));
    out["total_upper_by_variant"] = variants;
  }
  std::ostringstream csv;
  csv << std::setprecision(17) << "field,value,ln\n";
  for (const char* key : {"per_graph_bound", "per_graph_bound_n1", "cell_count_asymptotic",
                          "triangulation_bound", "total_upper", "penner_lower"}) {
    if (!out.contains(key)) continue;
    const auto& v = out[key];
    csv << key << ',' << (v["value"].is_null() ? std::string("inf") : v["value"].dump()) << ','
        << v["ln"].get<double>() << '\n';
  }
  write_csv(a.csv, csv.str());
  return kExitOk;
}

int cmd_volume(const Args& a, const fs::path& cache, json& out) {
  check_surface_args(a);
  if (a.punctures != 1)
    throw CLI::ValidationError("--punctures", "volume estimation supports n = 1 only");
  if (a.samples <= 0) throw CLI::ValidationError("--samples", "must be positive");
  const auto classes = load_or_enumerate(a.genus, 1, cache);
  SamplerConfig cfg;
  cfg.seed = a.seed;
  cfg.samples = a.samples;
  cfg.shards = a.shards;
  const double bound = per_graph_bound_n1(a.genus).value;
  json cells = json::array();
  double total = 0, total_var = 0;
  bool within = true;
  std::ostringstream csv;
  csv << std::setprecision(17) << "index,aut_order,mean,std_error,accept_rate,tail_fraction\n";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    cfg.seed = a.seed + i;
    const McEstimate e = estimate_cell_volume_n1(classes[i].canonical, cfg);
    const double w = 1.0 / classes[i].aut_order;
    total += w * e.mean;
    total_var += w * w * e.std_error * e.std_error;
    const bool ok = e.mean - 3 * e.std_error > 0 && e.mean + 3 * e.std_error < bound;
    within = within && ok;
    cells.push_back({{"index", i},
                     {"aut_order", classes[i].aut_order},
                     {"mean", e.mean},
                     {"std_error", e.std_error},
                     {"samples", e.samples},
                     {"seed", e.seed},
                     {"accept_rate", e.accept_rate},
                     {"tail_fraction", e.tail_fraction},
                     {"mean_without_tail", e.mean_without_tail},
                     {"within_per_graph_bound", ok}});
    csv << i << ',' << classes[i].aut_order << ',' << e.mean << ',' << e.std_error << ','
        << e.accept_rate << ',' << e.tail_fraction << '\n';
  }
  out = {{"genus", a.genus},
         {"punctures", 1},
         {"form", "omega^k/k!"},
         {"cells", cells},
         {"aut_weighted_volume", total},
         {"aut_weighted_std_error", std::sqrt(total_var)},
         {"per_graph_bound_n1", bound},
         {"all_cells_within_bound", within}};
  // Known orbifold WP volumes at L = 0, for a labeled comparison only.
  constexpr double pi = 3.14159265358979323846;
  if (a.genus == 1)
    out["reference_volume"] = {{"label", "pi^2/12"}, {"value", pi * pi / 12}};
  else if (a.genus == 2)
    out["reference_volume"] = {{"label", "29 pi^8/192"}, {"value", 29 * std::pow(pi, 8) / 192}};
  write_csv(a.csv, csv.str());
  return within ? kExitOk : kExitAssertion;
}

int cmd_verify(const Args& a, const fs::path& cache, json& out) {
  check_surface_args(a);
  if (a.samples <= 0) throw CLI::ValidationError("--samples", "must be positive");
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = suite_names();
  } else {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), a.suite) == known.end())
      throw CLI::ValidationError("--suite", "unknown suite '" + a.suite + "'");
    suites = {a.suite};
  }
  VerifyOptions o;
  o.genus = a.genus;
  o.punctures = a.punctures;
  o.samples = a.samples;
  o.seed = a.seed;
  o.cache_dir = cache;
  json reports = json::array(), failures = json::array();
  std::ostringstream csv;
  csv << "suite,check,property,pass\n";
  for (const auto& s : suites) {
    // The triangle suite lives on the one-puncture slice.
    if (s == "triangle" && a.punctures != 1 && a.suite == "all") continue;
    const SuiteReport r = run_suite(s, o);
    reports.push_back(r.to_json());
    for (const auto& c : r.checks) {
      csv << s << ',' << c.name << ',' << c.property << ',' << (c.pass ? 1 : 0) << '\n';
      if (!c.pass) failures.push_back({{"suite", s}, {"check", c.name}, {"property", c.property}});
    }
  }
  out = {{"genus", a.genus},
         {"punctures", a.punctures},
         {"pass", failures.empty()},
         {"failures", failures},
         {"suites", reports}};
  write_csv(a.csv, csv.str());
  return failures.empty() ? kExitOk : kExitAssertion;
}

int cmd_limits(const Args& a, json& out) {
  if (a.punctures < 1) throw CLI::ValidationError("--punctures", "must be at least 1");
  if (a.gmax < 2) throw CLI::ValidationError("--gmax", "must be at least 2");
  const BoundVariant variant = parse_variant(a.variant);
  const auto rows = limit_report(a.gmax, a.punctures, variant);
  std::ostringstream csv;
  csv << std::setprecision(12) << "genus,ln_total_upper,ratio\n";
  json table = json::array();
  for (const auto& r : rows) {
    csv << r.genus << ',' << r.ln_total << ',' << r.ratio << '\n';
    table.push_back({r.genus, r.ln_total, r.ratio});
  }
  out = {{"punctures", a.punctures}, {"variant", variant_name(variant)}, {"rows", table}};
  std::cout << csv.str();
  write_csv(a.csv, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil-Petersson volume bounds from trivalent ribbon graphs"};
  app.require_subcommand(1);
  Args a;

  auto surface = [&](CLI::App* sub) {
    sub->add_option("-g,--genus", a.genus, "genus g")->capture_default_str();
    sub->add_option("-n,--punctures", a.punctures, "number of punctures n")->capture_default_str();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--csv", a.csv, "also write a CSV view to this file");
    sub->add_option("--cache-dir", a.cache_dir,
                    "catalog and run-log directory (default: $WPBOUND_CACHE_DIR)");
  };

  auto* enumerate = app.add_subcommand("enumerate", "write the catalog of trivalent graphs");
  surface(enumerate);
  common(enumerate);

  auto* bound = app.add_subcommand("bound", "evaluate the bound formulas");
  surface(bound);
  common(bound);
  bound->add_option("--variant", a.variant, "assembled | conclusion-n1 | general-n")
      ->capture_default_str();

  auto* volume = app.add_subcommand("volume", "Monte Carlo cell volumes for one puncture");
  surface(volume);
  common(volume);
  volume->add_option("--samples", a.samples, "samples per cell")->capture_default_str();
  volume->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
  volume->add_option("--shards", a.shards, "worker threads (0 = OpenMP default)")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  surface(verify);
  common(verify);
  verify->add_option("--suite", a.suite,
                     "triangle | lemmas | forms | stokes | decomposition | counting | all")
      ->capture_default_str();
  verify->add_option("--samples", a.samples, "sample budget per suite")->capture_default_str();
  verify->add_option("--seed", a.seed, "RNG seed")->capture_default_str();

  auto* limits = app.add_subcommand("limits", "ln(bound)/(g ln g) table as CSV");
  limits->add_option("--gmax", a.gmax, "largest genus")->capture_default_str();
  limits->add_option("-n,--punctures", a.punctures, "number of punctures")->capture_default_str();
  limits->add_option("--variant", a.variant, "assembled | conclusion-n1 | general-n")
      ->capture_default_str();
  common(limits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const fs::path cache = resolve_cache_dir(a.cache_dir);
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  json params = {{"genus", a.genus}, {"punctures", a.punctures}};
  if (command == "volume" || command == "verify") {
    params["samples"] = a.samples;
    params["seed"] = a.seed;
  }
  if (command == "volume") params["shards"] = a.shards;
  if (command == "verify") params["suite"] = a.suite;
  if (command == "bound" || command == "limits") params["variant"] = a.variant;
  if (command == "limits") params = {{"gmax", a.gmax}, {"punctures", a.punctures},
                                     {"variant", a.variant}};

  json out;
  int code = kExitOk;
  try {
    if (command == "enumerate") code = cmd_enumerate(a, cache, out);
    else if (command == "bound") code = cmd_bound(a, out);
    else if (command == "volume") code = cmd_volume(a, cache, out);
    else if (command == "verify") code = cmd_verify(a, cache, out);
    else code = cmd_limits(a, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "wpbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "wpbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "wpbound: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "wpbound: " << e.what() << '\n';
    return kExitAssertion;
  }

  if (command != "limits") std::cout << std::setw(2) << out << '\n';
  record_run(cache, command, params, out);
  return code;
}
