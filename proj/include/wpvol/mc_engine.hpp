#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wpvol/penner_coords.hpp"
#include "wpvol/ribbon_graph.hpp"
#include "wpvol/rng.hpp"
#include "wpvol/wp_form.hpp"

namespace wpvol {

enum class Proposal {
  SimplexUniform,  // directions uniform on the open simplex, mapped radially to rho = 1
  LogUniform,      // log-lambda uniform in [ln 4, ln cutoff]^N, shell 1/e <= rho <= 1
};

/// Which cross-section of the positive cone the directions are drawn from.
enum class Gauge {
  Simplex,  // sum of lambda = 1
  MaxNorm,  // max lambda = 1
};

enum class JacobianMode { Analytic, FiniteDifference };

struct SamplerConfig {
  std::uint64_t seed = 1;
  std::int64_t samples = 100000;
  Proposal proposal = Proposal::SimplexUniform;
  double cutoff = 1e4;
  Gauge gauge = Gauge::Simplex;
  JacobianMode jacobian = JacobianMode::Analytic;
  /// Worker count; 0 uses the OpenMP default. Never changes the result.
  int shards = 0;
  /// Accepted directions with a coordinate below this are counted as
  /// boundary tail mass.
  double tail_epsilon = 1e-3;
};

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::int64_t accepted = 0;
  double accept_rate = 0;
  double tail_fraction = 0;        // share of accepted samples near the boundary
  double mean_without_tail = 0;    // estimate with those samples zeroed
};

/// Samples are processed in fixed-size blocks; each block is summed serially
/// and blocks are merged in index order, so the result does not depend on
/// how blocks are spread over threads.
inline constexpr std::int64_t kSampleBlock = 4096;

/// Monte Carlo estimate of the integral of |omega^{^k}/k!| over the top cell
/// D(G) of a one-puncture graph.
McEstimate estimate_cell_volume_n1(const RibbonGraph& g, const SamplerConfig& config);
/// Single-threaded reference; bit-identical to the parallel kernel.
McEstimate estimate_cell_volume_n1_serial(const RibbonGraph& g, const SamplerConfig& config);

/// Per-sample integrand of the estimator, exposed for testing: the weight
/// contributed by sample `index`, and whether it was accepted.
struct SampleWeight {
  double weight = 0;
  bool accepted = false;
  bool near_boundary = false;
};
SampleWeight sample_weight(const RibbonGraph& g, const TwoFormMatrix& b,
                           const SamplerConfig& config, std::int64_t index);

/// Draws slice points of D(G) (one puncture) by rejection on simplex
/// directions. Deterministic in (seed, draw index).
class DomainSampler {
public:
  DomainSampler(const RibbonGraph& g, std::uint64_t seed);

  /// Next accepted point; gives up after `max_attempts` rejections.
  std::optional<LambdaAssignment> next(std::int64_t max_attempts = 1'000'000);
  std::int64_t attempts() const noexcept { return index_; }

  /// Direction drawn for a given index (uniform on the open simplex).
  static std::vector<double> direction(std::uint64_t seed, std::int64_t index, int edges);

private:
  const RibbonGraph* graph_;
  std::uint64_t seed_;
  std::int64_t index_ = 0;
};

/// `count` accepted points in draw order, generated in parallel.
std::vector<LambdaAssignment> sample_domain_points(const RibbonGraph& g, std::uint64_t seed,
                                                   std::int64_t count);

/// Radial map from a simplex direction to the rho = 1 slice and its Jacobian
/// with respect to the first N-1 coordinates (the last is 1 - sum).
struct SliceMap {
  std::vector<double> lambda;
  Eigen::MatrixXd jacobian;
};
SliceMap slice_map_simplex(const RibbonGraph& g, std::span<const double> direction,
                           JacobianMode mode);

}  // namespace wpvol
