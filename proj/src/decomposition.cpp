#include "wpvol/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "wpvol/quadrature.hpp"

namespace wpvol {

LinkingChoice LinkingChoice::from_index(const RibbonGraph& g, std::uint64_t index) {
  LinkingChoice c;
  c.minimal_slot.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    c.minimal_slot[v] = static_cast<int>(index % 3);
    index /= 3;
  }
  return c;
}

std::uint64_t LinkingChoice::count(const RibbonGraph& g) {
  std::uint64_t n = 1;
  for (int v = 0; v < g.num_vertices(); ++v) n *= 3;
  return n;
}

LinkingChoice LinkingChoice::with_minimal_edge(const RibbonGraph& g, int edge) {
  LinkingChoice c;
  c.minimal_slot.assign(g.num_vertices(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& cycle = g.vertex_cycle(v);
    for (int s = 0; s < 3; ++s)
      if (g.edge_of(cycle[s]) == edge) {
        c.minimal_slot[v] = s;
        break;
      }
  }
  return c;
}

namespace {

void check_choice(const RibbonGraph& g, const LinkingChoice& choice) {
  if (!g.is_trivalent()) throw PreconditionError("linking needs a trivalent graph");
  if (static_cast<int>(choice.minimal_slot.size()) != g.num_vertices())
    throw PreconditionError("linking choice needs one slot per vertex");
  for (int s : choice.minimal_slot)
    if (s < 0 || s > 2) throw PreconditionError("minimal slot must be 0, 1 or 2");
}

/// Per half-edge: whether it is the designated minimal one at its vertex,
/// and for the other two, the half-edge it links with.
struct LinkTable {
  std::vector<char> minimal;
  std::vector<int> partner;
};

LinkTable link_table(const RibbonGraph& g, const LinkingChoice& choice) {
  LinkTable t{std::vector<char>(g.num_half_edges(), 0), std::vector<int>(g.num_half_edges(), -1)};
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& c = g.vertex_cycle(v);
    const int m = choice.minimal_slot[v];
    const int a = c[(m + 1) % 3], b = c[(m + 2) % 3];
    t.minimal[c[m]] = 1;
    t.partner[a] = b;
    t.partner[b] = a;
  }
  return t;
}

}  // namespace

bool linked(const RibbonGraph& g, const LinkingChoice& choice, int e, int f) {
  check_choice(g, choice);
  if (e == f) return false;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto& c = g.vertex_cycle(v);
    const int m = choice.minimal_slot[v];
    const int a = g.edge_of(c[(m + 1) % 3]), b = g.edge_of(c[(m + 2) % 3]);
    if ((a == e && b == f) || (a == f && b == e)) return true;
  }
  return false;
}

std::vector<Chain> chains(const RibbonGraph& g, const LinkingChoice& choice) {
  check_choice(g, choice);
  const LinkTable t = link_table(g, choice);
  const auto& alpha = g.alpha();
  std::vector<char> used(g.num_edges(), 0);
  std::vector<Chain> out;

  // Walk from half-edge `start`: traverse its edge, and at the far end either
  // stop (minimal there) or continue through the linked half-edge.
  auto walk = [&](int start, Chain& chain) {
    int h = start;
    while (true) {
      const int e = g.edge_of(h);
      if (used[e]) return h;  // came back around a cycle
      used[e] = 1;
      chain.edges.push_back(e);
      const int far = alpha[h];
      if (t.minimal[far]) return far;
      chain.interior_vertices.push_back(g.vertex_of(far));
      h = t.partner[far];
    }
  };

  for (int m = 0; m < g.num_half_edges(); ++m) {
    if (!t.minimal[m] || used[g.edge_of(m)]) continue;
    Chain chain;
    const int end = walk(m, chain);
    chain.end_vertices = {g.vertex_of(m), g.vertex_of(end)};
    out.push_back(std::move(chain));
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (used[e]) continue;
    Chain chain;
    chain.closed = true;
    walk(g.half_edges_of(e).first, chain);
    out.push_back(std::move(chain));
  }
  return out;
}

// ---------------------------------------------------------------------------

int Decomposition::edge_count() const {
  int total = 0;
  for (const auto& c : chains) total += static_cast<int>(c.edges.size());
  return total;
}

bool Decomposition::partitions_edges(int num_edges) const {
  std::vector<int> edge_hits(num_edges, 0);
  for (const auto& c : chains)
    for (int e : c.edges) {
      if (e < 0 || e >= num_edges) return false;
      ++edge_hits[e];
    }
  if (!std::all_of(edge_hits.begin(), edge_hits.end(), [](int k) { return k == 1; }))
    return false;
  std::vector<int> chain_hits(chains.size(), 0);
  for (const auto& w : wheels)
    for (int c : w.chains) ++chain_hits.at(c);
  for (const auto& a : attachments) ++chain_hits.at(a.chain);
  return std::all_of(chain_hits.begin(), chain_hits.end(), [](int k) { return k == 1; });
}

Decomposition decompose(const RibbonGraph& g, const LinkingChoice& choice, int seed_edge) {
  if (seed_edge < 0 || seed_edge >= g.num_edges())
    throw PreconditionError("seed edge " + std::to_string(seed_edge) + " out of range");
  Decomposition d;
  d.seed_edge = seed_edge;
  d.chains = chains(g, choice);
  const int num_chains = static_cast<int>(d.chains.size());

  std::vector<int> chain_of_edge(g.num_edges(), -1);
  for (int c = 0; c < num_chains; ++c)
    for (int e : d.chains[c].edges) chain_of_edge[e] = c;
  // the chain passing through each vertex (the one holding its linked pair)
  std::vector<int> through(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int m = choice.minimal_slot[v];
    through[v] = chain_of_edge[g.edge_of(g.vertex_cycle(v)[(m + 1) % 3])];
  }

  std::vector<int> placed_in(num_chains, -1);  // wheel index owning the chain
  auto is_placed = [&](int c) { return placed_in[c] >= 0; };

  auto grow_wheel = [&](int first, WheelBase base) {
    const int index = static_cast<int>(d.wheels.size());
    Wheel w;
    w.base = base;
    std::deque<int> queue{first};
    placed_in[first] = index;
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      w.chains.push_back(c);
      for (int v : d.chains[c].end_vertices) {
        const int next = through[v];
        if (!is_placed(next)) {
          placed_in[next] = index;
          queue.push_back(next);
        }
      }
    }
    w.maximal = std::all_of(w.chains.begin(), w.chains.end(), [&](int c) {
      return std::all_of(d.chains[c].end_vertices.begin(), d.chains[c].end_vertices.end(),
                         [&](int v) { return placed_in[through[v]] == index; });
    });
    d.wheels.push_back(std::move(w));
    return index;
  };

  const int seed_chain = chain_of_edge[seed_edge];
  const Chain& sc = d.chains[seed_chain];
  if (sc.closed) {
    grow_wheel(seed_chain, WheelBase::ClosedChain);
  } else if (through[sc.end_vertices[0]] == seed_chain) {
    grow_wheel(seed_chain, WheelBase::SeedChain);
  } else {
    grow_wheel(through[sc.end_vertices[0]], WheelBase::EnteredBySeed);
  }

  int placed = static_cast<int>(std::count_if(placed_in.begin(), placed_in.end(),
                                              [](int w) { return w >= 0; }));
  while (placed < num_chains) {
    // Pick the unplaced chain with an end inside placed structure, preferring
    // the seed chain and then the most recent wheel.
    int best = -1, best_host = -1;
    for (int c = 0; c < num_chains; ++c) {
      if (is_placed(c)) continue;
      for (int v : d.chains[c].end_vertices) {
        const int host = placed_in[through[v]];
        if (host < 0) continue;
        const bool better = best < 0 || (c == seed_chain && best != seed_chain) ||
                            (best != seed_chain && host > best_host);
        if (better) {
          best = c;
          best_host = host;
        }
      }
    }
    if (best < 0)
      throw DecompositionError("no remaining chain ends on the placed structure", std::move(d));

    Attachment a;
    a.chain = best;
    a.host_wheel = best_host;
    placed_in[best] = best_host;
    ++placed;
    int free_end = -1;
    for (int v : d.chains[best].end_vertices)
      if (!is_placed(through[v])) free_end = v;
    if (free_end >= 0) {
      a.connecting = true;
      const int before = static_cast<int>(d.wheels.size());
      a.next_wheel = grow_wheel(through[free_end], WheelBase::EnteredByConnector);
      placed += static_cast<int>(d.wheels[before].chains.size());
    }
    d.attachments.push_back(a);
  }
  return d;
}

double per_graph_factor(int num_edges) { return std::pow(8.0 / 3.0, (num_edges - 1) / 2.0); }

// ---------------------------------------------------------------------------

const char* lemma_name(Lemma which) {
  switch (which) {
    case Lemma::LinkedSingle: return "linked_single";
    case Lemma::LinkedPair: return "linked_pair";
    case Lemma::MinimalPair: return "minimal_pair";
    case Lemma::ChainProduct: return "chain_product";
    case Lemma::WheelProduct: return "wheel_product";
  }
  return "unknown";
}

namespace {

constexpr double kLn4 = 1.3862943611198906;

/// Truncation point for the unbounded direction of a linked pair with fixed
/// minimal edge g: beyond F the pair contributes at most 4g/F.
double pair_cutoff(double g, double tol) { return 400.0 * g / tol; }

/// Integral over f >= lower, e in [max(lower, f - g), f + g] of
/// de df / (e f) times weight(f), with f integrated in log scale up to the
/// cutoff. Returns the quadrature result; the tail is added by the caller.
template <class Weight>
QuadResult linked_pair_integral(double g, double lower, double tol, const Weight& weight) {
  const double cutoff = pair_cutoff(g, tol);
  auto inner = [&](double s) {
    const double f = std::exp(s);
    const double lo = std::max(lower, f - g), hi = f + g;
    const double itol = tol * 1e-3;
    return integrate([](double e) { return 1.0 / e; }, lo, hi, itol).value * weight(f);
  };
  const double s0 = std::log(lower), kink = std::log(lower + g), s1 = std::log(cutoff);
  QuadResult a = integrate(inner, s0, kink, tol / 4);
  QuadResult b = integrate(inner, kink, s1, tol / 4);
  return {a.value + b.value, a.error + b.error, a.evaluations + b.evaluations};
}

LemmaCheck linked_single(const LemmaParams& p) {
  const double e = p.fixed;
  LemmaCheck c;
  c.bound = kLn4;
  const double lo = std::max(4.0, e / 2), hi = 2 * e;
  const QuadResult r = integrate([](double f) { return 1.0 / f; }, lo, hi, p.tolerance);
  c.numeric = r.value;
  c.error = r.error;
  c.pass = c.numeric <= c.bound + p.tolerance;
  return c;
}

LemmaCheck linked_pair(const LemmaParams& p) {
  const double g = p.fixed;
  LemmaCheck c;
  c.bound = 2.0;
  const QuadResult r =
      linked_pair_integral(g, std::max(g, 4.0), p.tolerance, [](double) { return 1.0; });
  c.numeric = r.value;
  c.error = r.error;
  c.tail_bound = 4.0 * g / pair_cutoff(g, p.tolerance);
  c.pass = c.numeric + c.error + c.tail_bound < c.bound;
  return c;
}

LemmaCheck minimal_pair(const LemmaParams& p) {
  const double e = p.fixed;
  LemmaCheck c;
  c.bound = 8.0 / 3.0;
  if (e > 4.0) {
    // g in [4, e] in log scale, f in [max(g, e - g), e + g]; kink at g = e/2
    auto inner = [&](double t) {
      const double g = std::exp(t);
      return integrate([](double f) { return 1.0 / f; }, std::max(g, e - g), e + g,
                       p.tolerance * 1e-3)
          .value;
    };
    const double t0 = std::log(4.0), t1 = std::log(e);
    const double mid = std::clamp(std::log(e / 2), t0, t1);
    const QuadResult a = integrate(inner, t0, mid, p.tolerance / 2);
    const QuadResult b = integrate(inner, mid, t1, p.tolerance / 2);
    c.numeric = a.value + b.value;
    c.error = a.error + b.error;
  }
  // sum_n (e^n - 4^n) / (n^2 e^n), truncated with tail below 1/M
  constexpr int kTerms = 1'000'000;
  double series = 0, ratio_pow = 1;
  const double q = e > 4 ? 4.0 / e : 1.0;
  for (int n = 1; n <= kTerms; ++n) {
    ratio_pow *= q;
    series += (1.0 - ratio_pow) / (static_cast<double>(n) * n);
  }
  c.series = series;
  c.pass = c.numeric + c.error < c.bound && series < std::numbers::pi * std::numbers::pi / 6 &&
           std::numbers::pi * std::numbers::pi / 6 < 5.0 / 3.0;
  return c;
}

LemmaCheck chain_product(const LemmaParams& p) {
  if (p.chain_length < 2 || p.chain_length > 3)
    throw PreconditionError("chain checks support lengths 2 and 3");
  const double e = p.fixed;
  LemmaCheck c;
  c.bound = std::pow(kLn4, p.chain_length - 1);
  auto link = [&](double x) {
    return integrate([](double y) { return 1.0 / y; }, std::max(4.0, x / 2), 2 * x,
                     p.tolerance * 1e-3);
  };
  QuadResult r;
  if (p.chain_length == 2) {
    r = link(e);
  } else {
    // fixed end e1 = e; e2 linked to e1, e3 linked to e2
    const double lo = std::log(std::max(4.0, e / 2)), hi = std::log(2 * e);
    r = integrate([&](double s) { return link(std::exp(s)).value; }, lo, hi, p.tolerance);
  }
  c.numeric = r.value;
  c.error = r.error;
  c.pass = c.numeric <= c.bound + p.tolerance;
  return c;
}

LemmaCheck wheel_product(const LemmaParams& p) {
  if (p.chain_length < 2 || p.chain_length > 3)
    throw PreconditionError("wheel checks support lengths 2 and 3");
  const double g = p.fixed;
  LemmaCheck c;
  c.bound = std::pow(std::max(kLn4, std::numbers::sqrt2), p.chain_length);
  // one chain (e1, e2[, e3]) entered by the fixed minimal edge g between e1
  // and e2; e3 hangs off e2 with the linking ratio bound.
  auto third = [&](double f) {
    if (p.chain_length == 2) return 1.0;
    return integrate([](double y) { return 1.0 / y; }, std::max(4.0, f / 2), 2 * f,
                     p.tolerance * 1e-3)
        .value;
  };
  const QuadResult r = linked_pair_integral(g, std::max(g, 4.0), p.tolerance, third);
  c.numeric = r.value;
  c.error = r.error;
  c.tail_bound = 4.0 * g / pair_cutoff(g, p.tolerance) * (p.chain_length == 3 ? kLn4 : 1.0);
  c.pass = c.numeric + c.error + c.tail_bound <= c.bound;
  return c;
}

}  // namespace

LemmaCheck verify_lemma(Lemma which, const LemmaParams& params) {
  if (!(params.fixed > 0)) throw PreconditionError("fixed lambda-length must be positive");
  switch (which) {
    case Lemma::LinkedSingle: return linked_single(params);
    case Lemma::LinkedPair: return linked_pair(params);
    case Lemma::MinimalPair: return minimal_pair(params);
    case Lemma::ChainProduct: return chain_product(params);
    case Lemma::WheelProduct: return wheel_product(params);
  }
  throw PreconditionError("unknown lemma");
}

IntoutCheck intout_theta_check(double mu, double tolerance) {
  IntoutCheck c;
  c.bound = per_graph_factor(3);
  const double lower = std::max(mu, 4.0);
  const double cutoff = pair_cutoff(mu, tolerance);
  // lambda_2 outer (log scale), lambda_1 inner: both at least mu, differing
  // by at most mu and within a factor 2 of each other.
  auto inner = [&](double s) {
    const double l2 = std::exp(s);
    const double lo = std::max({lower, l2 - mu, l2 / 2}), hi = std::min(l2 + mu, 2 * l2);
    if (!(hi > lo)) return 0.0;
    return integrate([](double l1) { return 1.0 / l1; }, lo, hi, tolerance * 1e-3).value;
  };
  const double s0 = std::log(lower), kink = std::log(lower + mu), s1 = std::log(cutoff);
  const QuadResult a = integrate(inner, s0, kink, tolerance / 4);
  const QuadResult b = integrate(inner, kink, s1, tolerance / 4);
  c.numeric = a.value + b.value;
  c.error = a.error + b.error;
  c.tail_bound = 4.0 * mu / cutoff;
  c.margin = c.bound - (c.numeric + c.error + c.tail_bound);
  c.pass = c.margin >= 0;
  return c;
}

}  // namespace wpvol
