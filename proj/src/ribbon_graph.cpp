#include "wpvol/ribbon_graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wpvol {

namespace {

std::vector<std::vector<int>> orbits(int size, auto&& next) {
  std::vector<std::vector<int>> cycles;
  std::vector<char> seen(size, 0);
  for (int start = 0; start < size; ++start) {
    if (seen[start]) continue;
    auto& cycle = cycles.emplace_back();
    for (int h = start; !seen[h]; h = next(h)) {
      seen[h] = 1;
      cycle.push_back(h);
    }
  }
  return cycles;
}

void check_permutation(const std::vector<int>& p, const char* name) {
  const int n = static_cast<int>(p.size());
  std::vector<char> hit(n, 0);
  for (int h = 0; h < n; ++h) {
    if (p[h] < 0 || p[h] >= n || hit[p[h]])
      throw StructureError(std::string(name) + " is not a permutation of 0.." +
                           std::to_string(n - 1));
    hit[p[h]] = 1;
  }
}

}  // namespace

RibbonGraph::RibbonGraph(std::vector<int> sigma, std::vector<int> alpha)
    : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
  const int n = static_cast<int>(sigma_.size());
  if (n == 0 || n % 2 != 0)
    throw StructureError("half-edge count must be positive and even, got " + std::to_string(n));
  if (static_cast<int>(alpha_.size()) != n)
    throw StructureError("sigma and alpha have different sizes");
  check_permutation(sigma_, "sigma");
  check_permutation(alpha_, "alpha");
  for (int h = 0; h < n; ++h) {
    if (alpha_[h] == h) throw StructureError("alpha has fixed point " + std::to_string(h));
    if (alpha_[alpha_[h]] != h) throw StructureError("alpha is not an involution");
  }

  // connectivity: sigma and alpha generate a transitive group
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int h = stack.back();
    stack.pop_back();
    for (int next : {sigma_[h], alpha_[h]}) {
      if (!seen[next]) {
        seen[next] = 1;
        ++reached;
        stack.push_back(next);
      }
    }
  }
  if (reached != n) throw StructureError("ribbon graph is not connected");

  edge_of_.assign(n, -1);
  for (int h = 0; h < n; ++h) {
    if (edge_of_[h] >= 0) continue;
    const int e = static_cast<int>(edge_half_edges_.size());
    edge_of_[h] = edge_of_[alpha_[h]] = e;
    edge_half_edges_.emplace_back(h, alpha_[h]);
  }

  vertex_cycles_ = orbits(n, [this](int h) { return sigma_[h]; });
  face_cycles_ = orbits(n, [this](int h) { return phi(h); });
  vertex_of_.assign(n, -1);
  face_of_.assign(n, -1);
  for (int v = 0; v < num_vertices(); ++v)
    for (int h : vertex_cycles_[v]) vertex_of_[h] = v;
  for (int f = 0; f < num_faces(); ++f)
    for (int h : face_cycles_[f]) face_of_[h] = f;
}

int RibbonGraph::genus() const {
  const int twice = 2 - num_vertices() + num_edges() - num_faces();
  if (twice < 0 || twice % 2 != 0)
    throw StructureError("Euler characteristic gives non-integral genus");
  return twice / 2;
}

bool RibbonGraph::is_trivalent() const {
  return std::all_of(vertex_cycles_.begin(), vertex_cycles_.end(),
                     [](const auto& c) { return c.size() == 3; });
}

bool RibbonGraph::has_loop() const {
  for (int h = 0; h < num_half_edges(); ++h)
    if (vertex_of_[h] == vertex_of_[alpha_[h]]) return true;
  return false;
}

GraphInvariants invariants(const RibbonGraph& g) {
  return {g.genus(), g.num_faces(), g.num_edges(), g.num_vertices()};
}

int trivalent_edge_count(int genus, int punctures) { return 6 * genus - 6 + 3 * punctures; }
int trivalent_vertex_count(int genus, int punctures) { return 4 * genus - 4 + 2 * punctures; }

RibbonGraph from_cycles(int num_half_edges, const std::vector<std::vector<int>>& sigma_cycles,
                        const std::vector<std::pair<int, int>>& edge_pairs) {
  std::vector<int> sigma(num_half_edges, -1), alpha(num_half_edges, -1);
  for (const auto& c : sigma_cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] < 0 || c[i] >= num_half_edges) throw StructureError("half-edge out of range");
      sigma[c[i]] = c[(i + 1) % c.size()];
    }
  for (auto [a, b] : edge_pairs) {
    if (a < 0 || a >= num_half_edges || b < 0 || b >= num_half_edges)
      throw StructureError("half-edge out of range");
    alpha[a] = b;
    alpha[b] = a;
  }
  return RibbonGraph(std::move(sigma), std::move(alpha));
}

RibbonGraph relabel(const RibbonGraph& g, std::span<const int> perm) {
  const int n = g.num_half_edges();
  if (static_cast<int>(perm.size()) != n) throw StructureError("relabeling has wrong size");
  std::vector<int> sigma(n), alpha(n);
  for (int h = 0; h < n; ++h) {
    sigma[perm[h]] = perm[g.sigma()[h]];
    alpha[perm[h]] = perm[g.alpha()[h]];
  }
  return RibbonGraph(std::move(sigma), std::move(alpha));
}

RibbonGraph dual(const RibbonGraph& g) {
  const int n = g.num_half_edges();
  std::vector<int> sigma(n);
  for (int h = 0; h < n; ++h) sigma[h] = g.phi(h);
  return RibbonGraph(std::move(sigma), g.alpha());
}

// ---------------------------------------------------------------------------
// canonical labeling

namespace {

/// Labels reached from `root` in breadth-first order along (sigma, alpha),
/// written as the relabeled (sigma, alpha) concatenation into `code`.
void rooted_code(const std::vector<int>& sigma, const std::vector<int>& alpha, int root,
                 std::vector<int>& label, std::vector<int>& order, std::vector<int>& code) {
  const int n = static_cast<int>(sigma.size());
  std::fill(label.begin(), label.end(), -1);
  order.clear();
  label[root] = 0;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int h = order[i];
    for (int next : {sigma[h], alpha[h]}) {
      if (label[next] < 0) {
        label[next] = static_cast<int>(order.size());
        order.push_back(next);
      }
    }
  }
  code.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    code[i] = label[sigma[order[i]]];
    code[n + i] = label[alpha[order[i]]];
  }
}

}  // namespace

IsoClass canonical_form(const RibbonGraph& g) {
  const int n = g.num_half_edges();
  std::vector<int> label(n), order, code, best;
  int count = 0;
  for (int root = 0; root < n; ++root) {
    rooted_code(g.sigma(), g.alpha(), root, label, order, code);
    if (best.empty() || code < best) {
      best = code;
      count = 1;
    } else if (code == best) {
      ++count;
    }
  }
  std::vector<int> sigma(best.begin(), best.begin() + n);
  std::vector<int> alpha(best.begin() + n, best.end());
  return {RibbonGraph(std::move(sigma), std::move(alpha)), count};
}

bool is_isomorphic(const RibbonGraph& a, const RibbonGraph& b) {
  if (a.num_half_edges() != b.num_half_edges() || a.num_vertices() != b.num_vertices() ||
      a.num_faces() != b.num_faces())
    return false;
  return canonical_form(a).canonical == canonical_form(b).canonical;
}

int aut_order(const RibbonGraph& g) { return canonical_form(g).aut_order; }

// ---------------------------------------------------------------------------
// enumeration

namespace {

/// Partial map during generation: vertices are the fixed triples
/// (3v, 3v+1, 3v+2), discovered in order. Each step pairs the smallest
/// unpaired discovered half-edge either with another unpaired discovered
/// half-edge or with slot 0 of the next undiscovered vertex. Every connected
/// rooted trivalent map arises from exactly one sequence of choices.
struct PartialMap {
  std::vector<int> alpha;
  int discovered = 1;
};

int first_open(const PartialMap& m) {
  for (int h = 0; h < 3 * m.discovered; ++h)
    if (m.alpha[h] < 0) return h;
  return -1;
}

template <class Visit>
void extend(PartialMap& m, int vertices, Visit&& visit) {
  const int h = first_open(m);
  if (h < 0) {
    if (m.discovered == vertices) visit(m);
    return;
  }
  for (int q = h + 1; q < 3 * m.discovered; ++q) {
    if (m.alpha[q] >= 0) continue;
    m.alpha[h] = q;
    m.alpha[q] = h;
    extend(m, vertices, visit);
    m.alpha[h] = m.alpha[q] = -1;
  }
  if (m.discovered < vertices) {
    const int q = 3 * m.discovered;
    m.alpha[h] = q;
    m.alpha[q] = h;
    ++m.discovered;
    extend(m, vertices, visit);
    --m.discovered;
    m.alpha[h] = m.alpha[q] = -1;
  }
}

/// Collect partial maps after `depth` pairing steps; these are the work units
/// for the parallel sweep.
void collect_prefixes(PartialMap& m, int vertices, int depth, std::vector<PartialMap>& out) {
  const int h = first_open(m);
  if (depth == 0 || h < 0) {
    out.push_back(m);
    return;
  }
  for (int q = h + 1; q < 3 * m.discovered; ++q) {
    if (m.alpha[q] >= 0) continue;
    m.alpha[h] = q;
    m.alpha[q] = h;
    collect_prefixes(m, vertices, depth - 1, out);
    m.alpha[h] = m.alpha[q] = -1;
  }
  if (m.discovered < vertices) {
    const int q = 3 * m.discovered;
    m.alpha[h] = q;
    m.alpha[q] = h;
    ++m.discovered;
    collect_prefixes(m, vertices, depth - 1, out);
    --m.discovered;
    m.alpha[h] = m.alpha[q] = -1;
  }
}

std::vector<int> fixed_sigma(int vertices) {
  std::vector<int> sigma(3 * vertices);
  for (int h = 0; h < 3 * vertices; ++h) sigma[h] = h - h % 3 + (h % 3 + 1) % 3;
  return sigma;
}

int face_count(const std::vector<int>& sigma, const std::vector<int>& alpha,
               std::vector<char>& seen) {
  const int n = static_cast<int>(sigma.size());
  std::fill(seen.begin(), seen.end(), 0);
  int faces = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++faces;
    for (int h = start; !seen[h]; h = sigma[alpha[h]]) seen[h] = 1;
  }
  return faces;
}

using Code = std::vector<int>;

int checked_vertex_count(int genus, int punctures, const EnumerationOptions& opts) {
  if (genus < 0 || punctures <= 0 || 2 * genus + punctures < 3)
    throw PreconditionError("need g >= 0, n > 0 and 2g + n >= 3; got g=" +
                            std::to_string(genus) + ", n=" + std::to_string(punctures));
  const int vertices = trivalent_vertex_count(genus, punctures);
  if (vertices > opts.max_vertices)
    throw CapExceeded("enumeration of (" + std::to_string(genus) + "," +
                          std::to_string(punctures) + ") needs " + std::to_string(vertices) +
                          " vertices",
                      opts.max_vertices);
  return vertices;
}

void visit_into(const PartialMap& m, const std::vector<int>& sigma, int punctures,
                std::vector<char>& seen, std::set<Code>& codes) {
  if (face_count(sigma, m.alpha, seen) != punctures) return;
  const IsoClass iso = canonical_form(RibbonGraph(sigma, m.alpha));
  Code code = iso.canonical.sigma();
  code.insert(code.end(), iso.canonical.alpha().begin(), iso.canonical.alpha().end());
  codes.insert(std::move(code));
}

std::vector<IsoClass> materialize(const std::set<Code>& codes) {
  std::vector<IsoClass> out;
  out.reserve(codes.size());
  for (const auto& code : codes) {
    const std::size_t n = code.size() / 2;
    RibbonGraph g(Code(code.begin(), code.begin() + n), Code(code.begin() + n, code.end()));
    out.push_back(canonical_form(g));
  }
  return out;
}

}  // namespace

std::vector<IsoClass> enumerate_trivalent_serial(int genus, int punctures,
                                                 const EnumerationOptions& opts) {
  const int vertices = checked_vertex_count(genus, punctures, opts);
  const auto sigma = fixed_sigma(vertices);
  std::vector<char> seen(sigma.size());
  std::set<Code> codes;
  PartialMap m{std::vector<int>(sigma.size(), -1), 1};
  extend(m, vertices, [&](const PartialMap& full) {
    visit_into(full, sigma, punctures, seen, codes);
  });
  return materialize(codes);
}

std::vector<IsoClass> enumerate_trivalent(int genus, int punctures,
                                          const EnumerationOptions& opts) {
  if (!opts.parallel) return enumerate_trivalent_serial(genus, punctures, opts);
  const int vertices = checked_vertex_count(genus, punctures, opts);
  const auto sigma = fixed_sigma(vertices);

  std::vector<PartialMap> prefixes;
  PartialMap root{std::vector<int>(sigma.size(), -1), 1};
  collect_prefixes(root, vertices, std::min(4, vertices), prefixes);

  const int units = static_cast<int>(prefixes.size());
  std::vector<std::set<Code>> partial(units);
#pragma omp parallel
  {
    std::vector<char> seen(sigma.size());
#pragma omp for schedule(dynamic, 1)
    for (int u = 0; u < units; ++u) {
      PartialMap m = prefixes[u];
      extend(m, vertices, [&](const PartialMap& full) {
        visit_into(full, sigma, punctures, seen, partial[u]);
      });
    }
  }
  std::set<Code> codes;
  for (auto& s : partial) codes.merge(s);
  return materialize(codes);
}

// ---------------------------------------------------------------------------
// edge contraction on triangulations

std::vector<int> non_loop_edges(const RibbonGraph& t) {
  std::vector<int> out;
  for (int e = 0; e < t.num_edges(); ++e) {
    auto [h, k] = t.half_edges_of(e);
    if (t.vertex_of(h) != t.vertex_of(k)) out.push_back(e);
  }
  return out;
}

RibbonGraph contract_puncture_pair(const RibbonGraph& triangulation, int e) {
  if (e < 0 || e >= triangulation.num_edges())
    throw PreconditionError("edge " + std::to_string(e) + " out of range");
  auto [h, k] = triangulation.half_edges_of(e);
  if (triangulation.vertex_of(h) == triangulation.vertex_of(k))
    throw PreconditionError("edge " + std::to_string(e) +
                            " is a loop: both ends at one puncture");

  // Work with the same half-edges: the triangles of T are the sigma-cycles of
  // its dual, whose rotation is T's phi. Collapsing the two triangles at e
  // removes their half-edges and re-pairs alpha by composing transpositions.
  const RibbonGraph graph = dual(triangulation);
  if (!graph.is_trivalent())
    throw PreconditionError("input is not the dual of a trivalent graph");

  const int n = graph.num_half_edges();
  std::vector<int> alpha = graph.alpha();
  std::vector<char> removed(n, 0);
  const auto& sigma = graph.sigma();

  // Drop a vertex left bivalent by a deletion, joining the far ends of its
  // two remaining half-edges.
  auto smooth = [&](int first, int second) {
    const int x = alpha[first], y = alpha[second];
    if (x == second)
      throw PreconditionError("contracting edge " + std::to_string(e) +
                              " leaves no trivalent structure");
    alpha[x] = y;
    alpha[y] = x;
    removed[first] = removed[second] = 1;
  };

  removed[h] = removed[k] = 1;
  if (graph.vertex_of(h) == graph.vertex_of(k)) {
    // e bounds a self-folded triangle: its triangle keeps one more side, b,
    // whose far triangle is then collapsed as well.
    int b = sigma[h] == k ? sigma[k] : sigma[h];
    const int far = alpha[b];
    removed[b] = removed[far] = 1;
    smooth(sigma[far], sigma[sigma[far]]);
  } else {
    smooth(sigma[h], sigma[sigma[h]]);
    smooth(sigma[k], sigma[sigma[k]]);
  }

  std::vector<int> index(n, -1);
  int kept = 0;
  for (int x = 0; x < n; ++x)
    if (!removed[x]) index[x] = kept++;
  if (kept == 0)
    throw PreconditionError("contracting edge " + std::to_string(e) + " leaves an empty graph");
  std::vector<int> new_sigma(kept), new_alpha(kept);
  for (int x = 0; x < n; ++x) {
    if (removed[x]) continue;
    new_sigma[index[x]] = index[sigma[x]];
    new_alpha[index[x]] = index[alpha[x]];
  }
  return dual(RibbonGraph(std::move(new_sigma), std::move(new_alpha)));
}

}  // namespace wpvol
