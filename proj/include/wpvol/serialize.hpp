#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "wpvol/penner_coords.hpp"
#include "wpvol/ribbon_graph.hpp"

namespace wpvol {

/// {"half_edges": 2E, "sigma": [...], "alpha": [...]}, 0-based.
nlohmann::json graph_to_json(const RibbonGraph& g);
/// Throws StructureError on missing fields or an inconsistent pair.
RibbonGraph graph_from_json(const nlohmann::json& j);

nlohmann::json lambda_to_json(std::span<const double> lambda);
LambdaAssignment lambda_from_json(const nlohmann::json& j);

/// Catalog layout under a cache directory:
///   g{g}_n{n}_index.json        version stamp, count, per-entry aut orders
///   g{g}_n{n}_{index:04}.json   one canonical graph per file
std::filesystem::path catalog_entry_path(const std::filesystem::path& dir, int genus,
                                         int punctures, int index);
std::filesystem::path catalog_index_path(const std::filesystem::path& dir, int genus,
                                         int punctures);

/// Writes the catalog; rewriting the same classes leaves the files
/// byte-identical. Stale entry files beyond the new count are removed.
void write_catalog(const std::filesystem::path& dir, int genus, int punctures,
                   const std::vector<IsoClass>& classes);
/// The cached catalog, or nothing when absent, unreadable, or stamped with a
/// different canonical-form version.
std::optional<std::vector<IsoClass>> read_catalog(const std::filesystem::path& dir, int genus,
                                                  int punctures);

/// Cached catalog if present and current, else enumerate (and store the
/// result when a directory is given).
std::vector<IsoClass> load_or_enumerate(int genus, int punctures,
                                        const std::optional<std::filesystem::path>& cache_dir);

}  // namespace wpvol
