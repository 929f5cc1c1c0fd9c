#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wpvol/errors.hpp"
#include "wpvol/ribbon_graph.hpp"

namespace wpvol {

/// Which edge is designated minimal at each vertex, as a slot (0, 1, 2) in
/// the vertex's sigma cycle. The two other edges at the vertex are linked.
struct LinkingChoice {
  std::vector<int> minimal_slot;

  /// Choice number `index` in base 3, vertex 0 least significant.
  static LinkingChoice from_index(const RibbonGraph& g, std::uint64_t index);
  /// 3^V.
  static std::uint64_t count(const RibbonGraph& g);
  /// The choice making `edge` minimal wherever it occurs (slot 0 elsewhere).
  static LinkingChoice with_minimal_edge(const RibbonGraph& g, int edge);
};

bool linked(const RibbonGraph& g, const LinkingChoice& choice, int e, int f);

/// A maximal run of edges in which consecutive edges are linked. Open chains
/// run between two half-edges that are minimal at their vertices; a closed
/// chain is a cycle. An edge linked to nothing is a chain of length one.
struct Chain {
  std::vector<int> edges;
  bool closed = false;
  std::vector<int> end_vertices;       // empty when closed, else two entries
  std::vector<int> interior_vertices;  // vertices where two chain edges link
};

std::vector<Chain> chains(const RibbonGraph& g, const LinkingChoice& choice);

/// How the first chain of a wheel was admitted.
enum class WheelBase {
  ClosedChain,        // c_1 is a cycle
  SeedChain,          // c_1 contains the seed edge and ends inside itself
  EnteredBySeed,      // the seed chain ends inside c_1
  EnteredByConnector, // a connecting chain ends inside c_1
};

struct Wheel {
  std::vector<int> chains;  // indices into Decomposition::chains, in wheel order
  WheelBase base = WheelBase::ClosedChain;
  bool maximal = false;  // every end of its chains lies inside its own chains
};

/// A chain outside every wheel. Attached chains have all their ends inside
/// already placed chains; a connecting chain has one end there and leads to
/// the wheel `next_wheel`.
struct Attachment {
  int chain = -1;
  int host_wheel = -1;
  bool connecting = false;
  int next_wheel = -1;
};

struct Decomposition {
  int seed_edge = -1;
  std::vector<Chain> chains;
  std::vector<Wheel> wheels;
  std::vector<Attachment> attachments;

  /// Whether wheels and attachments use every chain exactly once and the
  /// chains cover every edge exactly once.
  bool partitions_edges(int num_edges) const;
  int edge_count() const;
};

class DecompositionError : public Error {
public:
  DecompositionError(const std::string& what, Decomposition partial)
      : Error(what), partial_(std::move(partial)) {}
  const Decomposition& partial() const noexcept { return partial_; }

private:
  Decomposition partial_;
};

/// Wheels and chains grown from the seed edge: the first wheel is the closure
/// of the chain the seed's chain ends into (or the seed's own chain when it
/// is closed or ends inside itself) under "a chain ending inside another pulls
/// the other in". Remaining chains attach to placed structure; a chain with a
/// free end starts the next wheel there.
Decomposition decompose(const RibbonGraph& g, const LinkingChoice& choice, int seed_edge);

/// (8/3)^{(N-1)/2}.
double per_graph_factor(int num_edges);

// ---------------------------------------------------------------------------
// numeric checks of the per-edge integration estimates

enum class Lemma { LinkedSingle, LinkedPair, MinimalPair, ChainProduct, WheelProduct };

const char* lemma_name(Lemma which);

struct LemmaParams {
  double fixed = 10.0;   // the fixed outer lambda-length
  int chain_length = 2;  // for ChainProduct / WheelProduct (2 or 3)
  double tolerance = 1e-8;
};

struct LemmaCheck {
  double numeric = 0;
  double error = 0;        // quadrature error estimate
  double tail_bound = 0;   // bound on the truncated part of unbounded regions
  double bound = 0;        // the constant the integral must stay below
  double series = 0;       // MinimalPair only: the dilogarithm-type series
  bool pass = false;
};

/// Integral over f in [max(4, e/2), 2e] of df/f against ln 4.
/// Integral over linked pairs (e, f) with fixed minimal g, against 2.
/// Integral over (f, g) with g minimal and fixed e, against 8/3.
/// Chain of m linked edges with one end fixed, against (ln 4)^{m-1}.
/// Wheel of one chain of m edges entered by the fixed g, against
/// max(ln 4, sqrt 2)^m.
LemmaCheck verify_lemma(Lemma which, const LemmaParams& params);

/// The two-edge integral that remains for the theta graph once the minimal
/// edge mu is fixed and both vertices link the other two edges.
struct IntoutCheck {
  double numeric = 0;
  double error = 0;
  double tail_bound = 0;
  double bound = 0;
  double margin = 0;  // bound - (numeric + error + tail_bound)
  bool pass = false;
};
IntoutCheck intout_theta_check(double mu, double tolerance);

}  // namespace wpvol
