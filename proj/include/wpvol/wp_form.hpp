#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wpvol/ribbon_graph.hpp"

namespace wpvol {

/// The Weil-Petersson two-form in logarithmic coordinates,
///   omega = sum_{j<k} b(j,k) dln(lambda_j) ^ dln(lambda_k),
/// stored as an antisymmetric integer matrix. Each vertex with cyclic edge
/// order (e, f, g) adds -2 to the (e,f), (f,g) and (g,e) coefficients.
class TwoFormMatrix {
public:
  explicit TwoFormMatrix(int size) : size_(size), b_(static_cast<std::size_t>(size) * size, 0) {}

  int size() const noexcept { return size_; }
  int operator()(int j, int k) const { return b_[static_cast<std::size_t>(j) * size_ + k]; }
  /// Adds c to the coefficient of dl_j ^ dl_k (and -c to dl_k ^ dl_j).
  void add(int j, int k, int c);

  Eigen::MatrixXd to_dense() const;

private:
  int size_;
  std::vector<int> b_;
};

TwoFormMatrix two_form_matrix(const RibbonGraph& g);

/// A constant-coefficient form in the exterior algebra over dl_0..dl_{N-1},
/// keyed by the bitmask of the basis wedge (indices in increasing order).
/// N is limited to 32.
class ExteriorForm {
public:
  using Mask = std::uint32_t;

  ExteriorForm() = default;
  static ExteriorForm from_two_form(const TwoFormMatrix& b);
  /// The constant 0-form 1.
  static ExteriorForm unit();

  const std::map<Mask, std::int64_t>& terms() const noexcept { return terms_; }
  std::int64_t coefficient(Mask m) const;

  friend ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b);

private:
  std::map<Mask, std::int64_t> terms_;
};

/// k-fold wedge power by repeated multiplication (no normalization).
ExteriorForm wedge_power(const ExteriorForm& form, int k);

/// Coefficients a_I of the volume form omega^{^k}/k!, k = (N - n)/2, keyed by
/// the sorted list I of n omitted edges. The divided power is what matches
/// the integer coefficients 2^{4g-2} of the one-puncture formula and the
/// 2^N coefficient bound; the literal wedge power is k! times larger.
struct VolumeFormExpansion {
  int power = 0;  // k
  std::map<std::vector<int>, std::int64_t> coefficients;
};

inline constexpr int kMaxExactExpansionEdges = 12;

VolumeFormExpansion volume_form_coeffs(const RibbonGraph& g);

/// Pfaffian of a real antisymmetric matrix by Parlett-Reid style elimination
/// with pivoting. Odd dimension gives 0.
double pfaffian(Eigen::MatrixXd a);

/// Value of omega^{^k}/k! on the 2k columns of `frame` (tangent vectors in
/// lambda coordinates): Pf(F^T M F) with M_jk = b_jk / (lambda_j lambda_k).
double density_at(const RibbonGraph& g, std::span<const double> lambda,
                  const Eigen::MatrixXd& frame);
double density_at(const TwoFormMatrix& b, std::span<const double> lambda,
                  const Eigen::MatrixXd& frame);

/// The explicit one-puncture volume form
///   2^{4g-2} sum_i (-1)^i dl_1 ^ ... ^ (omit dl_i) ^ ... ^ dl_N
/// evaluated on N-1 frame vectors (indices i counted from 1).
double explicit_density_n1(const RibbonGraph& g, std::span<const double> lambda,
                           const Eigen::MatrixXd& frame);

}  // namespace wpvol
