#include "wpvol/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wpvol {

namespace {

double log_factorial(int m) { return std::lgamma(m + 1.0); }

/// Whether every simplicial coordinate is positive, stopping at the first
/// edge that fails. This is the hot path of every rejection sampler.
bool x_positive(const RibbonGraph& g, std::span<const double> lambda) {
  const auto& s = g.sigma();
  auto end = [&](int h) {
    const double e = lambda[g.edge_of(h)], f = lambda[g.edge_of(s[h])],
                 k = lambda[g.edge_of(s[s[h]])];
    return f / (e * k) + k / (e * f) - e / (f * k);
  };
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.half_edges_of(e);
    if (!(end(a) + end(b) > 0)) return false;
  }
  return true;
}

/// Uniform point of the open simplex: normalized standard exponentials.
void fill_direction(std::uint64_t seed, std::int64_t index, std::span<double> u) {
  CounterRng rng(seed, static_cast<std::uint64_t>(index));
  double total = 0;
  for (double& x : u) {
    x = -std::log(rng.uniform());
    total += x;
  }
  for (double& x : u) x /= total;
}

void check_one_puncture(const RibbonGraph& g) {
  if (g.num_faces() != 1)
    throw PreconditionError("cell volume estimation needs n = 1, graph has " +
                            std::to_string(g.num_faces()) + " punctures");
}

/// Radial map lambda = rho(u) u from a cross-section point u, with Jacobian
/// against the free coordinates `free` of the cross-section. `dependent`
/// describes how the constrained coordinate moves: -1 per free coordinate on
/// the simplex, 0 on a face of the max-norm cube.
SliceMap radial_map(const RibbonGraph& g, std::span<const double> u, std::span<const int> free,
                    int constrained, double dependent, JacobianMode mode) {
  const int n = g.num_edges();
  const int d = static_cast<int>(free.size());
  SliceMap out;
  const double rho = rho_total(g, u);
  out.lambda.resize(n);
  for (int j = 0; j < n; ++j) out.lambda[j] = rho * u[j];
  out.jacobian.resize(n, d);

  if (mode == JacobianMode::Analytic) {
    std::vector<double> grad(n);
    rho_total_gradient(g, u, grad);
    for (int a = 0; a < d; ++a) {
      const int c = free[a];
      const double drho = grad[c] + dependent * grad[constrained];
      for (int j = 0; j < n; ++j) out.jacobian(j, a) = u[j] * drho;
      out.jacobian(c, a) += rho;
      out.jacobian(constrained, a) += rho * dependent;
    }
  } else {
    std::vector<double> plus(u.begin(), u.end()), minus(u.begin(), u.end());
    for (int a = 0; a < d; ++a) {
      const int c = free[a];
      const double step = 1e-6 * std::max(u[c], 1e-3);
      plus[c] += step;
      minus[c] -= step;
      plus[constrained] += dependent * step;
      minus[constrained] -= dependent * step;
      const double rp = rho_total(g, plus), rm = rho_total(g, minus);
      for (int j = 0; j < n; ++j)
        out.jacobian(j, a) = (rp * plus[j] - rm * minus[j]) / (2 * step);
      std::copy(u.begin(), u.end(), plus.begin());
      std::copy(u.begin(), u.end(), minus.begin());
    }
  }
  return out;
}

struct BlockSum {
  double sum = 0, sum_sq = 0, tail_sum = 0;
  std::int64_t accepted = 0, tail = 0;
};

BlockSum run_block(const RibbonGraph& g, const TwoFormMatrix& b, const SamplerConfig& config,
                   std::int64_t block) {
  BlockSum s;
  const std::int64_t first = block * kSampleBlock;
  const std::int64_t last = std::min(config.samples, first + kSampleBlock);
  for (std::int64_t i = first; i < last; ++i) {
    const SampleWeight w = sample_weight(g, b, config, i);
    s.sum += w.weight;
    s.sum_sq += w.weight * w.weight;
    if (w.accepted) ++s.accepted;
    if (w.near_boundary) {
      ++s.tail;
      s.tail_sum += w.weight;
    }
  }
  return s;
}

McEstimate combine(const std::vector<BlockSum>& blocks, const SamplerConfig& config) {
  BlockSum total;
  for (const auto& s : blocks) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
    total.tail_sum += s.tail_sum;
    total.accepted += s.accepted;
    total.tail += s.tail;
  }
  const double m = static_cast<double>(config.samples);
  McEstimate est;
  est.samples = config.samples;
  est.seed = config.seed;
  est.accepted = total.accepted;
  est.mean = total.sum / m;
  const double var = std::max(0.0, total.sum_sq / m - est.mean * est.mean);
  est.std_error = config.samples > 1 ? std::sqrt(var * m / (m - 1) / m) : 0.0;
  est.accept_rate = total.accepted / m;
  est.tail_fraction = total.accepted > 0 ? static_cast<double>(total.tail) / total.accepted : 0;
  est.mean_without_tail = (total.sum - total.tail_sum) / m;
  if (total.accepted == 0)
    throw Error("no sample landed in the cell after " + std::to_string(config.samples) +
                " proposals");
  return est;
}

void check_config(const SamplerConfig& config) {
  if (config.samples <= 0) throw PreconditionError("sample count must be positive");
  if (config.proposal == Proposal::LogUniform && !(config.cutoff > 4.0))
    throw PreconditionError("log-uniform cutoff must exceed 4");
}

}  // namespace

std::vector<double> DomainSampler::direction(std::uint64_t seed, std::int64_t index, int edges) {
  std::vector<double> u(edges);
  fill_direction(seed, index, u);
  return u;
}

SliceMap slice_map_simplex(const RibbonGraph& g, std::span<const double> direction,
                           JacobianMode mode) {
  const int n = g.num_edges();
  std::vector<int> free(n - 1);
  std::iota(free.begin(), free.end(), 0);
  return radial_map(g, direction, free, n - 1, -1.0, mode);
}

SampleWeight sample_weight(const RibbonGraph& g, const TwoFormMatrix& b,
                           const SamplerConfig& config, std::int64_t index) {
  const int n = g.num_edges();
  SampleWeight w;

  if (config.proposal == Proposal::LogUniform) {
    // Uniform box in log-lambda; the shell between the rho = 1 and rho = 1/e
    // slices has log-volume equal to the slice integral of the contraction of
    // the log-volume form with the scaling field.
    CounterRng rng(config.seed, static_cast<std::uint64_t>(index));
    const double lo = std::log(4.0), hi = std::log(config.cutoff);
    std::vector<double> lambda(n);
    for (double& l : lambda) l = std::exp(lo + (hi - lo) * rng.uniform());
    if (!x_positive(g, lambda)) return w;
    const double rho = rho_total(g, lambda);
    if (rho > 1.0 || rho < std::exp(-1.0)) return w;
    Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(n, n - 1);
    for (int j = 0; j < n - 1; ++j) frame(j, j) = lambda[j];
    w.accepted = true;
    w.weight = std::abs(density_at(b, lambda, frame)) * std::pow(hi - lo, n);
    return w;
  }

  std::vector<double> u;
  std::vector<int> free;
  int constrained;
  double dependent, measure;
  if (config.gauge == Gauge::Simplex) {
    u = DomainSampler::direction(config.seed, index, n);
    free.resize(n - 1);
    std::iota(free.begin(), free.end(), 0);
    constrained = n - 1;
    dependent = -1.0;
    // uniform density on the simplex is (N-1)! in the free coordinates
    measure = std::exp(-log_factorial(n - 1));
  } else {
    CounterRng rng(config.seed, static_cast<std::uint64_t>(index));
    constrained = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
    u.resize(n);
    for (int j = 0; j < n; ++j) {
      if (j == constrained) {
        u[j] = 1.0;
      } else {
        u[j] = rng.uniform();
        free.push_back(j);
      }
    }
    dependent = 0.0;
    // n unit faces, each picked with probability 1/n
    measure = n;
  }

  if (!x_positive(g, u)) return w;
  w.accepted = true;
  const double umin = *std::min_element(u.begin(), u.end());
  w.near_boundary = umin < config.tail_epsilon;
  const SliceMap map = radial_map(g, u, free, constrained, dependent, config.jacobian);
  w.weight = std::abs(density_at(b, map.lambda, map.jacobian)) * measure;
  return w;
}

McEstimate estimate_cell_volume_n1_serial(const RibbonGraph& g, const SamplerConfig& config) {
  check_one_puncture(g);
  check_config(config);
  const TwoFormMatrix b = two_form_matrix(g);
  const std::int64_t blocks = (config.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<BlockSum> sums(blocks);
  for (std::int64_t k = 0; k < blocks; ++k) sums[k] = run_block(g, b, config, k);
  return combine(sums, config);
}

McEstimate estimate_cell_volume_n1(const RibbonGraph& g, const SamplerConfig& config) {
  check_one_puncture(g);
  check_config(config);
  const TwoFormMatrix b = two_form_matrix(g);
  const std::int64_t blocks = (config.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<BlockSum> sums(blocks);
#ifdef _OPENMP
  const int threads = config.shards > 0 ? config.shards : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (std::int64_t k = 0; k < blocks; ++k) sums[k] = run_block(g, b, config, k);
  return combine(sums, config);
}

// ---------------------------------------------------------------------------

DomainSampler::DomainSampler(const RibbonGraph& g, std::uint64_t seed) : graph_(&g), seed_(seed) {
  check_one_puncture(g);
}

std::optional<LambdaAssignment> DomainSampler::next(std::int64_t max_attempts) {
  for (std::int64_t tries = 0; tries < max_attempts; ++tries) {
    auto u = direction(seed_, index_++, graph_->num_edges());
    if (!x_positive(*graph_, u)) continue;
    const double rho = rho_total(*graph_, u);
    for (double& x : u) x *= rho;
    return LambdaAssignment(std::move(u));
  }
  return std::nullopt;
}

std::vector<LambdaAssignment> sample_domain_points(const RibbonGraph& g, std::uint64_t seed,
                                                   std::int64_t count) {
  check_one_puncture(g);
  const int n = g.num_edges();
  std::vector<LambdaAssignment> out;
  out.reserve(count);
  // Rounds of blocks drawn in parallel; each block keeps its accepted points
  // in index order and blocks are merged in order, so the stream is the same
  // as a serial scan over draw indices.
  constexpr std::int64_t kBlocksPerRound = 64;
  std::int64_t next_block = 0;
  while (static_cast<std::int64_t>(out.size()) < count) {
    std::vector<std::vector<std::vector<double>>> found(kBlocksPerRound);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < kBlocksPerRound; ++b) {
      std::vector<double> u(n);
      const std::int64_t first = (next_block + b) * kSampleBlock;
      for (std::int64_t i = first; i < first + kSampleBlock; ++i) {
        fill_direction(seed, i, u);
        if (!x_positive(g, u)) continue;
        const double rho = rho_total(g, u);
        std::vector<double> lambda(u);
        for (double& x : lambda) x *= rho;
        found[b].push_back(std::move(lambda));
      }
    }
    for (auto& block : found)
      for (auto& lambda : block) {
        if (static_cast<std::int64_t>(out.size()) == count) break;
        out.emplace_back(std::move(lambda));
      }
    next_block += kBlocksPerRound;
  }
  return out;
}

}  // namespace wpvol
