#pragma once

#include <span>
#include <vector>

#include "wpvol/ribbon_graph.hpp"

namespace wpvol {

/// Positive lambda-length per edge, indexed by edge number.
class LambdaAssignment {
public:
  LambdaAssignment() = default;
  explicit LambdaAssignment(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t e) const { return values_[e]; }
  std::span<const double> values() const noexcept { return values_; }

private:
  std::vector<double> values_;
};

// All coordinate functions take the lambda values as a plain span so hot
// loops can reuse buffers; LambdaAssignment converts implicitly via values().

/// X_e: sum over both ends of e of f/(e g) + g/(e f) - e/(f g), where f and g
/// are the edges of the two other half-edges at that end.
double simplicial_coordinate(const RibbonGraph& g, std::span<const double> lambda, int e);
std::vector<double> simplicial_coordinates(const RibbonGraph& g, std::span<const double> lambda);

/// alpha-length at half-edge h: lambda(h) / (lambda(sigma h) lambda(sigma^2 h)).
double alpha_length(const RibbonGraph& g, std::span<const double> lambda, int half_edge);
/// alpha-length of edge e at vertex v. A loop at v gives the same value in
/// both of its slots.
double alpha_length(const RibbonGraph& g, std::span<const double> lambda, int e, int v);

struct FaceSum {
  double path = 0;    // X_e summed along the face boundary
  double sector = 0;  // twice the alpha-lengths of the corners the face turns
  double value() const noexcept { return sector; }
};

FaceSum rho_face(const RibbonGraph& g, std::span<const double> lambda, int face);
std::vector<double> rho_faces(const RibbonGraph& g, std::span<const double> lambda);
double rho_total(const RibbonGraph& g, std::span<const double> lambda);

/// d rho_face / d lambda_e, exact for loops and repeated edges.
double drho_dlambda(const RibbonGraph& g, std::span<const double> lambda, int face, int e);
/// Gradient of the total rho, written into `out` (one entry per edge).
void rho_total_gradient(const RibbonGraph& g, std::span<const double> lambda,
                        std::span<double> out);

struct DomainDiagnostics {
  std::vector<double> x;
  std::vector<double> rho;
  double rho_total = 0;
  double min_lambda = 0;
  bool x_positive = false;
  bool triangle_ok = false;
  bool in_domain = false;
  bool lambda_above_four = false;  // min lambda > 4
  bool rho_below_8v_over_mu = false;
};

DomainDiagnostics diagnostics(const RibbonGraph& g, std::span<const double> lambda, double tol);

/// Whether every vertex satisfies the triangle inequality among its edges.
bool triangle_inequalities_hold(const RibbonGraph& g, std::span<const double> lambda);

LambdaAssignment scale(const LambdaAssignment& lambda, double t);
/// Rescale so that rho == 1; requires a single face. Since rho has degree -1,
/// the rescaling factor is rho itself.
LambdaAssignment normalize_to_slice(const RibbonGraph& g, const LambdaAssignment& lambda);

}  // namespace wpvol
