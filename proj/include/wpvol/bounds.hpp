#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpvol/errors.hpp"

namespace wpvol {

/// A bound evaluated in extended precision. `value` overflows to infinity for
/// large genus; `ln_value` stays finite.
struct BoundValue {
  double value = 0;
  double ln_value = 0;
  std::string formula;
};

/// 2^N 3^V N^n (8/3)^{(N-1)/2} (2V)^n with N = 6g-6+3n, V = 4g-4+2n.
BoundValue per_graph_bound(int genus, int punctures);
/// 2^{4g-2} 3^V (8/3)^{(N-1)/2} N for one puncture.
BoundValue per_graph_bound_n1(int genus);
/// (2g)!/N (6/e)^{2g}, N = 6g-3: asymptotic count of one-puncture cells.
BoundValue cell_count_asymptotic(int genus);
/// (2g)! N^{2n-3} / 2^{n-1} (6/e)^{2g}.
BoundValue triangulation_bound(int genus, int punctures);
/// (8e^2/9)^{2g} (2g)! / (2 (6g-3)^2), one puncture.
BoundValue penner_lower_bound(int genus);

enum class BoundVariant {
  Assembled,     // triangulation_bound x per-graph bound (n = 1 uses the n = 1 pieces)
  ConclusionN1,  // (2g)! 2^{4g-2} 3^{4g-2} (ln 4)^{6g-3} (6/e)^{2g}
  GeneralN,      // (2g)! N^{2n-3}/2^{n-1} (6/e)^{2g} 2^N 3^V N^n (8/3)^{N/2} (2V)^n
};

const char* variant_name(BoundVariant v);
/// Parses "assembled", "conclusion-n1" or "general-n".
BoundVariant parse_variant(const std::string& name);

BoundValue total_upper_bound(int genus, int punctures, BoundVariant variant);

/// ln(conclusion-n1 / assembled) in closed form: (6g-3) ln ln 4 - (3g-2) ln(8/3).
double conclusion_over_assembled_ln(int genus);

/// 2^17 3^3 / e^2.
double stated_growth_constant();
/// (general-n bound / (2g)!)^{1/g}.
double effective_growth_constant(int genus, int punctures);

struct LimitRow {
  int genus = 0;
  double ln_total = 0;
  double ratio = 0;  // ln(total) / (g ln g)
};
/// Rows for g = 2..g_max (g = 1 has ln g = 0).
std::vector<LimitRow> limit_report(int g_max, int punctures, BoundVariant variant);

struct RatioTrend {
  double ratio_low = 0;   // at g = 50
  double ratio_high = 0;  // at g = 500
  bool below_three = false;
  bool decreasing = false;
  bool pass() const noexcept { return below_three && decreasing; }
};
RatioTrend ratio_trend(BoundVariant variant, int g_low = 50, int g_high = 500);

struct BoundReport {
  int genus = 0;
  int punctures = 0;
  BoundValue per_graph;
  std::optional<BoundValue> per_graph_n1;
  std::optional<std::int64_t> cell_count_exact;
  std::optional<double> aut_weighted_count;  // sum of 1/|Aut| over classes
  BoundValue cell_count_asymptotic;
  BoundValue triangulation;
  BoundValue total_upper;
  BoundVariant variant = BoundVariant::Assembled;
  std::optional<BoundValue> penner_lower;
  double limit_ratio = 0;  // NaN at g = 1
};

/// Assemble every applicable field. Exact counts are filled in when
/// `include_exact` is set and the enumeration is within its cap.
BoundReport bound_report(int genus, int punctures, BoundVariant variant, bool include_exact);

// ---------------------------------------------------------------------------
// exact triangulation counts

std::int64_t count_triangulations_exact(int genus, int punctures);

struct CountingCheck {
  std::int64_t count = 0;           // |T(g, n)|
  std::int64_t count_previous = 0;  // |T(g, n-1)|
  double limit = 0;                 // N^2/2 |T(g, n-1)|
  bool inequality = false;
  std::int64_t contractions = 0;
  std::int64_t contractions_in_catalog = 0;
  bool every_graph_has_non_loop = true;
  bool pass() const noexcept {
    return inequality && contractions == contractions_in_catalog && every_graph_has_non_loop;
  }
};
/// Enumerates both sides and contracts every non-loop edge of every
/// triangulation of (g, n); requires n >= 2.
CountingCheck verify_counting_recursion(int genus, int punctures);

}  // namespace wpvol
