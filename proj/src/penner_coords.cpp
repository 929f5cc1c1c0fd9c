#include "wpvol/penner_coords.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wpvol {

LambdaAssignment::LambdaAssignment(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t e = 0; e < values_.size(); ++e)
    if (!(values_[e] > 0) || !std::isfinite(values_[e]))
      throw PreconditionError("lambda-length of edge " + std::to_string(e) +
                              " must be positive and finite");
}

namespace {

void check_size(const RibbonGraph& g, std::span<const double> lambda) {
  if (static_cast<int>(lambda.size()) != g.num_edges())
    throw PreconditionError("expected " + std::to_string(g.num_edges()) +
                            " lambda-lengths, got " + std::to_string(lambda.size()));
}

/// Contribution of the end of edge(h) at h's vertex.
inline double end_term(const RibbonGraph& g, std::span<const double> lambda, int h) {
  const auto& s = g.sigma();
  const double e = lambda[g.edge_of(h)];
  const double f = lambda[g.edge_of(s[h])];
  const double k = lambda[g.edge_of(s[s[h]])];
  return f / (e * k) + k / (e * f) - e / (f * k);
}

/// Same term in extended precision. The path form of rho sums terms that
/// cancel heavily, so it is accumulated this way to stay comparable with the
/// all-positive sector form.
inline long double end_term_wide(const RibbonGraph& g, std::span<const double> lambda, int h) {
  const auto& s = g.sigma();
  const long double e = lambda[g.edge_of(h)];
  const long double f = lambda[g.edge_of(s[h])];
  const long double k = lambda[g.edge_of(s[s[h]])];
  return f / (e * k) + k / (e * f) - e / (f * k);
}

}  // namespace

double simplicial_coordinate(const RibbonGraph& g, std::span<const double> lambda, int e) {
  check_size(g, lambda);
  auto [h, k] = g.half_edges_of(e);
  return end_term(g, lambda, h) + end_term(g, lambda, k);
}

std::vector<double> simplicial_coordinates(const RibbonGraph& g, std::span<const double> lambda) {
  check_size(g, lambda);
  std::vector<double> x(g.num_edges(), 0.0);
  for (int h = 0; h < g.num_half_edges(); ++h) x[g.edge_of(h)] += end_term(g, lambda, h);
  return x;
}

double alpha_length(const RibbonGraph& g, std::span<const double> lambda, int half_edge) {
  const auto& s = g.sigma();
  return lambda[g.edge_of(half_edge)] /
         (lambda[g.edge_of(s[half_edge])] * lambda[g.edge_of(s[s[half_edge]])]);
}

double alpha_length(const RibbonGraph& g, std::span<const double> lambda, int e, int v) {
  check_size(g, lambda);
  for (int h : g.vertex_cycle(v))
    if (g.edge_of(h) == e) return alpha_length(g, lambda, h);
  throw PreconditionError("edge " + std::to_string(e) + " is not incident to vertex " +
                          std::to_string(v));
}

FaceSum rho_face(const RibbonGraph& g, std::span<const double> lambda, int face) {
  check_size(g, lambda);
  const auto& s = g.sigma();
  FaceSum sum;
  long double path = 0;
  for (int h : g.faces().at(face)) {
    path += end_term_wide(g, lambda, h) + end_term_wide(g, lambda, g.alpha()[h]);
    // the face enters the next vertex at alpha(h) and leaves at sigma(alpha(h));
    // the corner between them sits opposite sigma^2(alpha(h)).
    sum.sector += 2.0 * alpha_length(g, lambda, s[s[g.alpha()[h]]]);
  }
  sum.path = static_cast<double>(path);
  return sum;
}

std::vector<double> rho_faces(const RibbonGraph& g, std::span<const double> lambda) {
  check_size(g, lambda);
  const auto& s = g.sigma();
  std::vector<double> rho(g.num_faces(), 0.0);
  for (int h = 0; h < g.num_half_edges(); ++h)
    rho[g.face_of(h)] += 2.0 * alpha_length(g, lambda, s[s[g.alpha()[h]]]);
  return rho;
}

double rho_total(const RibbonGraph& g, std::span<const double> lambda) {
  check_size(g, lambda);
  double total = 0;
  for (int h = 0; h < g.num_half_edges(); ++h) total += alpha_length(g, lambda, h);
  return 2.0 * total;
}

double drho_dlambda(const RibbonGraph& g, std::span<const double> lambda, int face, int e) {
  check_size(g, lambda);
  const auto& s = g.sigma();
  double d = 0;
  for (int h : g.faces().at(face)) {
    const int corner = s[s[g.alpha()[h]]];
    // alpha = lambda_z / (lambda_x lambda_y): its log-derivative in lambda_e
    // counts e once per numerator slot and minus once per denominator slot.
    const int mult = (g.edge_of(corner) == e) - (g.edge_of(s[corner]) == e) -
                     (g.edge_of(s[s[corner]]) == e);
    d += 2.0 * alpha_length(g, lambda, corner) * mult;
  }
  return d / lambda[e];
}

void rho_total_gradient(const RibbonGraph& g, std::span<const double> lambda,
                        std::span<double> out) {
  check_size(g, lambda);
  const auto& s = g.sigma();
  std::fill(out.begin(), out.end(), 0.0);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const double a = 2.0 * alpha_length(g, lambda, h);
    out[g.edge_of(h)] += a;
    out[g.edge_of(s[h])] -= a;
    out[g.edge_of(s[s[h]])] -= a;
  }
  for (std::size_t e = 0; e < out.size(); ++e) out[e] /= lambda[e];
}

bool triangle_inequalities_hold(const RibbonGraph& g, std::span<const double> lambda) {
  check_size(g, lambda);
  for (const auto& cycle : g.vertex_cycles()) {
    double total = 0, largest = 0;
    for (int h : cycle) {
      const double l = lambda[g.edge_of(h)];
      total += l;
      largest = std::max(largest, l);
    }
    if (largest > total - largest) return false;
  }
  return true;
}

DomainDiagnostics diagnostics(const RibbonGraph& g, std::span<const double> lambda, double tol) {
  check_size(g, lambda);
  if (tol < 0) throw PreconditionError("slice tolerance must be non-negative");
  DomainDiagnostics d;
  d.x = simplicial_coordinates(g, lambda);
  d.rho = rho_faces(g, lambda);
  for (double r : d.rho) d.rho_total += r;
  d.min_lambda = *std::min_element(lambda.begin(), lambda.end());
  d.x_positive = std::all_of(d.x.begin(), d.x.end(), [](double x) { return x > 0; });
  d.triangle_ok = triangle_inequalities_hold(g, lambda);
  d.in_domain = d.x_positive && std::all_of(d.rho.begin(), d.rho.end(), [tol](double r) {
                  return std::abs(r - 1.0) <= tol;
                });
  d.lambda_above_four = d.min_lambda > 4.0;
  d.rho_below_8v_over_mu = d.rho_total < 8.0 * g.num_vertices() / d.min_lambda;
  return d;
}

LambdaAssignment scale(const LambdaAssignment& lambda, double t) {
  if (!(t > 0)) throw PreconditionError("scale factor must be positive");
  std::vector<double> v(lambda.values().begin(), lambda.values().end());
  for (double& x : v) x *= t;
  return LambdaAssignment(std::move(v));
}

LambdaAssignment normalize_to_slice(const RibbonGraph& g, const LambdaAssignment& lambda) {
  if (g.num_faces() != 1)
    throw PreconditionError("slice normalization needs a single puncture, graph has " +
                            std::to_string(g.num_faces()));
  return scale(lambda, rho_total(g, lambda.values()));
}

}  // namespace wpvol
