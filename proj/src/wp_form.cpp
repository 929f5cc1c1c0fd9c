#include "wpvol/wp_form.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace wpvol {

void TwoFormMatrix::add(int j, int k, int c) {
  if (j == k) return;  // dl ^ dl = 0
  b_[static_cast<std::size_t>(j) * size_ + k] += c;
  b_[static_cast<std::size_t>(k) * size_ + j] -= c;
}

Eigen::MatrixXd TwoFormMatrix::to_dense() const {
  Eigen::MatrixXd m(size_, size_);
  for (int j = 0; j < size_; ++j)
    for (int k = 0; k < size_; ++k) m(j, k) = (*this)(j, k);
  return m;
}

TwoFormMatrix two_form_matrix(const RibbonGraph& g) {
  if (!g.is_trivalent()) throw PreconditionError("two-form needs a trivalent graph");
  TwoFormMatrix b(g.num_edges());
  for (const auto& cycle : g.vertex_cycles()) {
    const int e = g.edge_of(cycle[0]), f = g.edge_of(cycle[1]), h = g.edge_of(cycle[2]);
    b.add(e, f, -2);
    b.add(f, h, -2);
    b.add(h, e, -2);
  }
  return b;
}

// ---------------------------------------------------------------------------

ExteriorForm ExteriorForm::from_two_form(const TwoFormMatrix& b) {
  if (b.size() > 32) throw CapExceeded("exterior algebra is limited to 32 generators", 32);
  ExteriorForm form;
  for (int j = 0; j < b.size(); ++j)
    for (int k = j + 1; k < b.size(); ++k)
      if (b(j, k) != 0) form.terms_[(Mask{1} << j) | (Mask{1} << k)] = b(j, k);
  return form;
}

std::int64_t ExteriorForm::coefficient(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

namespace {

/// Sign of reordering dl_A ^ dl_B into increasing index order.
int merge_sign(ExteriorForm::Mask a, ExteriorForm::Mask b) {
  int inversions = 0;
  for (ExteriorForm::Mask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const ExteriorForm::Mask above = j >= 31 ? 0 : (~ExteriorForm::Mask{0} << (j + 1));
    inversions += std::popcount(a & above);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
  ExteriorForm out;
  for (auto [ma, ca] : a.terms_)
    for (auto [mb, cb] : b.terms_) {
      if (ma & mb) continue;
      out.terms_[ma | mb] += merge_sign(ma, mb) * ca * cb;
    }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

ExteriorForm ExteriorForm::unit() {
  ExteriorForm one;
  one.terms_[0] = 1;
  return one;
}

ExteriorForm wedge_power(const ExteriorForm& form, int k) {
  if (k < 0) throw PreconditionError("negative wedge power");
  ExteriorForm out = ExteriorForm::unit();
  for (int i = 0; i < k; ++i) out = wedge(out, form);
  return out;
}

VolumeFormExpansion volume_form_coeffs(const RibbonGraph& g) {
  const int n_edges = g.num_edges();
  if (n_edges > kMaxExactExpansionEdges)
    throw CapExceeded("exact volume-form expansion for " + std::to_string(n_edges) + " edges",
                      kMaxExactExpansionEdges);
  const int omitted = g.num_faces();
  if ((n_edges - omitted) % 2 != 0) throw StructureError("N - n must be even");
  VolumeFormExpansion out;
  out.power = (n_edges - omitted) / 2;

  std::int64_t factorial = 1;
  for (int i = 2; i <= out.power; ++i) factorial *= i;

  const ExteriorForm top = wedge_power(ExteriorForm::from_two_form(two_form_matrix(g)), out.power);
  for (auto [mask, c] : top.terms()) {
    if (c % factorial != 0) throw Error("wedge power coefficient not divisible by k!");
    std::vector<int> missing;
    for (int j = 0; j < n_edges; ++j)
      if (!(mask & (ExteriorForm::Mask{1} << j))) missing.push_back(j);
    out.coefficients[missing] = c / factorial;
  }
  return out;
}

// ---------------------------------------------------------------------------

double pfaffian(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw PreconditionError("pfaffian needs a square matrix");
  if (n == 0) return 1.0;
  if (n % 2 != 0) return 0.0;
  // pivots at rounding level mean the matrix is singular
  const double tiny = 64 * std::numeric_limits<double>::epsilon() * n * a.cwiseAbs().maxCoeff();
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index offset;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&offset);
    const Eigen::Index kp = k + 1 + offset;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (std::abs(a(k + 1, k)) <= tiny) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const Eigen::VectorXd tau = a.row(k).tail(rest).transpose() / a(k, k + 1);
      const Eigen::VectorXd pivot_col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) +=
          tau * pivot_col.transpose() - pivot_col * tau.transpose();
    }
  }
  return pf;
}

double density_at(const TwoFormMatrix& b, std::span<const double> lambda,
                  const Eigen::MatrixXd& frame) {
  const int n = b.size();
  if (static_cast<int>(lambda.size()) != n || frame.rows() != n)
    throw PreconditionError("frame and lambda must have one row per edge");
  if (frame.cols() % 2 != 0) throw PreconditionError("frame dimension must be even");
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = b(j, k) / (lambda[j] * lambda[k]);
  return pfaffian(frame.transpose() * m * frame);
}

double density_at(const RibbonGraph& g, std::span<const double> lambda,
                  const Eigen::MatrixXd& frame) {
  return density_at(two_form_matrix(g), lambda, frame);
}

double explicit_density_n1(const RibbonGraph& g, std::span<const double> lambda,
                           const Eigen::MatrixXd& frame) {
  if (g.num_faces() != 1)
    throw PreconditionError("explicit form is only defined for one puncture");
  const int n = g.num_edges();
  if (static_cast<int>(lambda.size()) != n || frame.rows() != n || frame.cols() != n - 1)
    throw PreconditionError("explicit form needs " + std::to_string(n - 1) + " frame vectors");
  Eigen::MatrixXd rows(n, n - 1);
  for (int j = 0; j < n; ++j) rows.row(j) = frame.row(j) / lambda[j];

  double sum = 0;
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0, r = 0; j < n; ++j)
      if (j != i) minor.row(r++) = rows.row(j);
    // (-1)^i with i counted from 1
    sum += ((i + 1) % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
  }
  return std::ldexp(sum, 4 * g.genus() - 2);
}

}  // namespace wpvol
