#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wpvol/errors.hpp"

namespace wpvol {

/// A ribbon graph stored as a pair of permutations on half-edges 0..2E-1.
///
/// `sigma` rotates half-edges around their vertex (cyclic order of the
/// embedding), `alpha` is the fixed-point-free involution pairing half-edges
/// into edges. Faces (punctures) are the orbits of phi = sigma o alpha, i.e.
/// phi(h) = sigma[alpha[h]]: cross the edge, then turn to the next half-edge
/// at the far vertex.
///
/// Edges are numbered by increasing smallest half-edge; vertices and faces by
/// increasing smallest member. Construction validates the pair and rejects
/// disconnected inputs.
class RibbonGraph {
public:
  RibbonGraph(std::vector<int> sigma, std::vector<int> alpha);

  int num_half_edges() const noexcept { return static_cast<int>(sigma_.size()); }
  int num_edges() const noexcept { return num_half_edges() / 2; }
  int num_vertices() const noexcept { return static_cast<int>(vertex_cycles_.size()); }
  int num_faces() const noexcept { return static_cast<int>(face_cycles_.size()); }

  const std::vector<int>& sigma() const noexcept { return sigma_; }
  const std::vector<int>& alpha() const noexcept { return alpha_; }
  int phi(int h) const { return sigma_[alpha_[h]]; }

  int edge_of(int h) const { return edge_of_[h]; }
  int vertex_of(int h) const { return vertex_of_[h]; }
  int face_of(int h) const { return face_of_[h]; }
  /// Both half-edges of edge e, smaller first.
  std::pair<int, int> half_edges_of(int e) const { return edge_half_edges_[e]; }

  /// Cycle of sigma starting at its smallest half-edge.
  const std::vector<int>& vertex_cycle(int v) const { return vertex_cycles_[v]; }
  const std::vector<std::vector<int>>& vertex_cycles() const noexcept { return vertex_cycles_; }
  /// Face cycles (orbits of phi), each starting at its smallest half-edge.
  const std::vector<std::vector<int>>& faces() const noexcept { return face_cycles_; }

  /// g from V - E + F = 2 - 2g.
  int genus() const;
  bool is_trivalent() const;
  bool has_loop() const;

  friend bool operator==(const RibbonGraph& a, const RibbonGraph& b) {
    return a.sigma_ == b.sigma_ && a.alpha_ == b.alpha_;
  }

private:
  std::vector<int> sigma_;
  std::vector<int> alpha_;
  std::vector<int> edge_of_;
  std::vector<int> vertex_of_;
  std::vector<int> face_of_;
  std::vector<std::pair<int, int>> edge_half_edges_;
  std::vector<std::vector<int>> vertex_cycles_;
  std::vector<std::vector<int>> face_cycles_;
};

struct GraphInvariants {
  int genus = 0;
  int punctures = 0;  // face count
  int edges = 0;
  int vertices = 0;
};

GraphInvariants invariants(const RibbonGraph& g);

/// Edge count 6g-6+3n and vertex count 4g-4+2n of a trivalent graph with
/// genus g and n faces.
int trivalent_edge_count(int genus, int punctures);
int trivalent_vertex_count(int genus, int punctures);

/// Build a graph from a cycle list for sigma and a list of edge pairs.
RibbonGraph from_cycles(int num_half_edges, const std::vector<std::vector<int>>& sigma_cycles,
                        const std::vector<std::pair<int, int>>& edge_pairs);

/// Relabel half-edges: h becomes perm[h].
RibbonGraph relabel(const RibbonGraph& g, std::span<const int> perm);

/// Poincare dual: vertices and faces swap roles. dual(dual(G)) == G exactly.
RibbonGraph dual(const RibbonGraph& g);

/// Isomorphism class of a graph in canonical labeling.
struct IsoClass {
  RibbonGraph canonical;
  int aut_order = 1;
};

/// Canonical labeling: for every root half-edge, label half-edges in the order
/// they are reached by a breadth-first walk along (sigma, alpha); keep the
/// lexicographically smallest (sigma, alpha). The number of roots achieving
/// the minimum is |Aut G| since automorphisms of a connected map act freely.
IsoClass canonical_form(const RibbonGraph& g);
bool is_isomorphic(const RibbonGraph& a, const RibbonGraph& b);
int aut_order(const RibbonGraph& g);

/// Bumped whenever the canonical labeling algorithm changes; stamped into
/// catalog caches.
inline constexpr int kCanonicalFormVersion = 1;

struct EnumerationOptions {
  int max_vertices = 8;
  bool parallel = true;
};

/// One representative per isomorphism class of connected trivalent ribbon
/// graphs of genus g with n faces, sorted by canonical form.
std::vector<IsoClass> enumerate_trivalent(int genus, int punctures,
                                          const EnumerationOptions& opts = {});
/// Single-threaded reference for enumerate_trivalent; identical output.
std::vector<IsoClass> enumerate_trivalent_serial(int genus, int punctures,
                                                 const EnumerationOptions& opts = {});

/// Contract edge e of a triangulation graph T (the dual of a trivalent graph)
/// joining two distinct punctures: the punctures merge and the triangles on
/// both sides of e collapse to arcs. Returns the resulting triangulation.
///
/// Throws PreconditionError if e is a loop of T, or if the collapse would
/// leave no trivalent structure behind.
RibbonGraph contract_puncture_pair(const RibbonGraph& triangulation, int e);

/// Edges of T joining two distinct vertices (punctures).
std::vector<int> non_loop_edges(const RibbonGraph& triangulation);

}  // namespace wpvol
