#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

int brute_force_aut(const std::vector<int>& sigma, const std::vector<int>& alpha) {
  const int n = static_cast<int>(sigma.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  int count = 0;
  do {
    bool ok = true;
    for (int h = 0; h < n && ok; ++h)
      ok = p[sigma[h]] == sigma[p[h]] && p[alpha[h]] == alpha[p[h]];
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

namespace {

bool propagate(const std::vector<int>& sa, const std::vector<int>& aa, const std::vector<int>& sb,
               const std::vector<int>& ab, int image_of_zero) {
  const int n = static_cast<int>(sa.size());
  std::vector<int> map(n, -1), used(n, 0), stack{0};
  map[0] = image_of_zero;
  used[image_of_zero] = 1;
  while (!stack.empty()) {
    const int h = stack.back();
    stack.pop_back();
    const int pairs[2][2] = {{sa[h], sb[map[h]]}, {aa[h], ab[map[h]]}};
    for (const auto& pr : pairs) {
      const int from = pr[0], to = pr[1];
      if (map[from] < 0) {
        if (used[to]) return false;
        map[from] = to;
        used[to] = 1;
        stack.push_back(from);
      } else if (map[from] != to) {
        return false;
      }
    }
  }
  return std::all_of(map.begin(), map.end(), [](int x) { return x >= 0; });
}

int count_orbits(const std::vector<int>& sigma, const std::vector<int>& alpha) {
  const int n = static_cast<int>(sigma.size());
  std::vector<char> seen(n, 0);
  int faces = 0;
  for (int h = 0; h < n; ++h) {
    if (seen[h]) continue;
    ++faces;
    for (int k = h; !seen[k]; k = sigma[alpha[k]]) seen[k] = 1;
  }
  return faces;
}

bool connected(const std::vector<int>& alpha, int vertices) {
  std::vector<int> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = vertices;
  for (int h = 0; h < static_cast<int>(alpha.size()); ++h) {
    const int a = find(h / 3), b = find(alpha[h] / 3);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

bool isomorphic(const std::vector<int>& sa, const std::vector<int>& aa, const std::vector<int>& sb,
                const std::vector<int>& ab) {
  if (sa.size() != sb.size()) return false;
  for (int r = 0; r < static_cast<int>(sb.size()); ++r)
    if (propagate(sa, aa, sb, ab, r)) return true;
  return false;
}

int aut_by_propagation(const std::vector<int>& sigma, const std::vector<int>& alpha) {
  int count = 0;
  for (int r = 0; r < static_cast<int>(sigma.size()); ++r)
    count += propagate(sigma, alpha, sigma, alpha, r);
  return count;
}

InvolutionCensus enumerate_by_involutions(int genus, int punctures) {
  const int vertices = 4 * genus - 4 + 2 * punctures;
  const int n = 3 * vertices;
  std::vector<int> sigma(n);
  for (int v = 0; v < vertices; ++v) {
    sigma[3 * v] = 3 * v + 1;
    sigma[3 * v + 1] = 3 * v + 2;
    sigma[3 * v + 2] = 3 * v;
  }
  InvolutionCensus census;
  std::vector<std::vector<int>> reps;
  std::vector<int> alpha(n, -1);

  auto recurse = [&](auto&& self) -> void {
    const auto it = std::find(alpha.begin(), alpha.end(), -1);
    if (it == alpha.end()) {
      ++census.involutions;
      if (!connected(alpha, vertices) || count_orbits(sigma, alpha) != punctures) return;
      ++census.survivors;
      for (const auto& r : reps)
        if (isomorphic(sigma, alpha, sigma, r)) return;
      reps.push_back(alpha);
      return;
    }
    const int h = static_cast<int>(it - alpha.begin());
    for (int k = h + 1; k < n; ++k) {
      if (alpha[k] != -1) continue;
      alpha[h] = k;
      alpha[k] = h;
      self(self);
      alpha[h] = alpha[k] = -1;
    }
  };
  recurse(recurse);

  census.classes = static_cast<int>(reps.size());
  for (const auto& r : reps) census.aut_orders.push_back(aut_by_propagation(sigma, r));
  std::sort(census.aut_orders.begin(), census.aut_orders.end());
  return census;
}

double x_edge(const wpvol::RibbonGraph& g, std::span<const double> lambda, int e) {
  double x = 0;
  const auto [h1, h2] = g.half_edges_of(e);
  for (int h : {h1, h2}) {
    const auto& cycle = g.vertex_cycle(g.vertex_of(h));
    const int slot = static_cast<int>(std::find(cycle.begin(), cycle.end(), h) - cycle.begin());
    const double a = lambda[e];
    const double b = lambda[g.edge_of(cycle[(slot + 1) % 3])];
    const double c = lambda[g.edge_of(cycle[(slot + 2) % 3])];
    x += (b * b + c * c - a * a) / (a * b * c);
  }
  return x;
}

double pfaffian_expansion(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  double total = 0;
  for (int j = 1; j < n; ++j) {
    std::vector<int> keep;
    for (int k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    Eigen::MatrixXd minor(n - 2, n - 2);
    for (int r = 0; r < n - 2; ++r)
      for (int c = 0; c < n - 2; ++c) minor(r, c) = a(keep[r], keep[c]);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    total += sign * a(0, j) * pfaffian_expansion(minor);
  }
  return total;
}

std::map<std::uint32_t, std::int64_t> wedge_power_by_matchings(const wpvol::TwoFormMatrix& b,
                                                              int k) {
  const int n = b.size();
  std::map<std::uint32_t, std::int64_t> out;
  std::vector<int> seq;
  auto recurse = [&](auto&& self, std::uint32_t used, std::int64_t product) -> void {
    if (static_cast<int>(seq.size()) == 2 * k) {
      // sign of the permutation sorting seq
      int inversions = 0;
      for (std::size_t x = 0; x < seq.size(); ++x)
        for (std::size_t y = x + 1; y < seq.size(); ++y) inversions += seq[x] > seq[y];
      out[used] += (inversions % 2 ? -1 : 1) * product;
      return;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if ((used >> i) & 1u || (used >> j) & 1u || b(i, j) == 0) continue;
        seq.push_back(i);
        seq.push_back(j);
        self(self, used | (1u << i) | (1u << j), product * b(i, j));
        seq.pop_back();
        seq.pop_back();
      }
  };
  recurse(recurse, 0u, 1);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace oracle
