#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wpvol/ribbon_graph.hpp"

namespace fixtures {

// sigma = (0 1 2)(3 4 5), alpha = (0 3)(1 4)(2 5): one face, genus 1.
inline wpvol::RibbonGraph theta() {
  return wpvol::from_cycles(6, {{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 4}, {2, 5}});
}

// sigma = (0 1 2)(3 5 4): three faces, genus 0.
inline wpvol::RibbonGraph planar_theta() {
  return wpvol::from_cycles(6, {{0, 1, 2}, {3, 5, 4}}, {{0, 3}, {1, 4}, {2, 5}});
}

// Two vertices, each with a loop, joined by a bridge: genus 0, three faces.
inline wpvol::RibbonGraph dumbbell() {
  return wpvol::from_cycles(6, {{0, 1, 2}, {3, 4, 5}}, {{0, 1}, {2, 3}, {4, 5}});
}

// A ring of `v` (even) trivalent vertices with chords between neighbours.
inline wpvol::RibbonGraph necklace(int v) {
  std::vector<std::vector<int>> cycles;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < v; ++i) {
    cycles.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    pairs.emplace_back(3 * i + 1, 3 * ((i + 1) % v));
  }
  for (int i = 0; i < v; i += 2) pairs.emplace_back(3 * i + 2, 3 * (i + 1) + 2);
  return wpvol::from_cycles(3 * v, cycles, pairs);
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline std::vector<double> random_lambda(std::mt19937_64& rng, int n, double lo = 0.5,
                                         double hi = 50.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> l(n);
  for (double& x : l) x = std::exp(u(rng));
  return l;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace fixtures
