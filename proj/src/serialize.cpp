#include "wpvol/serialize.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wpvol {

namespace fs = std::filesystem;
using nlohmann::json;

json graph_to_json(const RibbonGraph& g) {
  return {{"half_edges", g.num_half_edges()}, {"sigma", g.sigma()}, {"alpha", g.alpha()}};
}

RibbonGraph graph_from_json(const json& j) {
  try {
    const int n = j.at("half_edges").get<int>();
    auto sigma = j.at("sigma").get<std::vector<int>>();
    auto alpha = j.at("alpha").get<std::vector<int>>();
    if (static_cast<int>(sigma.size()) != n || static_cast<int>(alpha.size()) != n)
      throw StructureError("half_edges does not match permutation lengths");
    return RibbonGraph(std::move(sigma), std::move(alpha));
  } catch (const json::exception& e) {
    throw StructureError(std::string("malformed graph JSON: ") + e.what());
  }
}

json lambda_to_json(std::span<const double> lambda) {
  return json(std::vector<double>(lambda.begin(), lambda.end()));
}

LambdaAssignment lambda_from_json(const json& j) {
  try {
    return LambdaAssignment(j.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed lambda JSON: ") + e.what());
  }
}

namespace {

std::string prefix(int g, int n) { return "g" + std::to_string(g) + "_n" + std::to_string(n); }

void write_if_changed(const fs::path& path, const std::string& text) {
  {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::ostringstream old;
      old << in.rdbuf();
      if (old.str() == text) return;
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

fs::path catalog_entry_path(const fs::path& dir, int g, int n, int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d", index);
  return dir / (prefix(g, n) + "_" + buf + ".json");
}

fs::path catalog_index_path(const fs::path& dir, int g, int n) {
  return dir / (prefix(g, n) + "_index.json");
}

void write_catalog(const fs::path& dir, int g, int n, const std::vector<IsoClass>& classes) {
  fs::create_directories(dir);
  json entries = json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const int index = static_cast<int>(i);
    const fs::path file = catalog_entry_path(dir, g, n, index);
    json entry = {{"genus", g},
                  {"punctures", n},
                  {"index", index},
                  {"aut_order", classes[i].aut_order},
                  {"graph", graph_to_json(classes[i].canonical)}};
    write_if_changed(file, entry.dump(2) + "\n");
    entries.push_back({{"file", file.filename().string()}, {"aut_order", classes[i].aut_order}});
  }
  const std::string stem = prefix(g, n) + "_";
  for (const auto& f : fs::directory_iterator(dir)) {
    const std::string name = f.path().filename().string();
    if (name.rfind(stem, 0) != 0 || name == catalog_index_path(dir, g, n).filename()) continue;
    const std::string digits = name.substr(stem.size(), 4);
    if (digits.size() == 4 && std::isdigit(static_cast<unsigned char>(digits[0])) &&
        std::stoi(digits) >= static_cast<int>(classes.size()))
      fs::remove(f.path());
  }
  json index = {{"canonical_form_version", kCanonicalFormVersion},
                {"genus", g},
                {"punctures", n},
                {"count", classes.size()},
                {"entries", entries}};
  write_if_changed(catalog_index_path(dir, g, n), index.dump(2) + "\n");
}

std::optional<std::vector<IsoClass>> read_catalog(const fs::path& dir, int g, int n) {
  std::ifstream in(catalog_index_path(dir, g, n));
  if (!in) return std::nullopt;
  try {
    const json index = json::parse(in);
    if (index.at("canonical_form_version").get<int>() != kCanonicalFormVersion) return std::nullopt;
    std::vector<IsoClass> out;
    for (const auto& e : index.at("entries")) {
      std::ifstream fin(dir / e.at("file").get<std::string>());
      if (!fin) return std::nullopt;
      const json entry = json::parse(fin);
      out.push_back({graph_from_json(entry.at("graph")), entry.at("aut_order").get<int>()});
    }
    if (out.size() != index.at("count").get<std::size_t>()) return std::nullopt;
    return out;
  } catch (const json::exception&) {
    return std::nullopt;
  } catch (const StructureError&) {
    return std::nullopt;
  }
}

std::vector<IsoClass> load_or_enumerate(int g, int n, const std::optional<fs::path>& cache_dir) {
  if (cache_dir) {
    if (auto cached = read_catalog(*cache_dir, g, n)) return *cached;
  }
  auto classes = enumerate_trivalent(g, n);
  if (cache_dir) write_catalog(*cache_dir, g, n, classes);
  return classes;
}

}  // namespace wpvol
