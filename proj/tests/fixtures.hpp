#pragma once

#include <random>
#include <string>
#include <vector>

#include "cayley/poset.hpp"

namespace fixtures {

using cayley::Poset;
using cayley::SPExpression;

// {0..c} with a < b iff b - a >= 2
inline Poset nat_c(int c) {
  std::vector<std::pair<int, int>> rel;
  for (int a = 0; a <= c; ++a)
    for (int b = 0; b <= c; ++b)
      if (b - a >= 2) rel.push_back({a, b});
  return cayley::build_poset_indices(c + 1, rel);
}

// {0, 2, 3, ..., c} with the same order
inline Poset nat_c_star(int c) {
  std::vector<int> elems = {0};
  for (int v = 2; v <= c; ++v) elems.push_back(v);
  int n = (int)elems.size();
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (elems[j] - elems[i] >= 2) rel.push_back({i, j});
  std::vector<std::string> labels;
  for (int v : elems) labels.push_back(std::to_string(v));
  return cayley::build_poset_indices(n, rel, labels);
}

// N-poset with a tail i < i-1 < ... < 1 < a
inline Poset n_i(int i) {
  int n = 4 + i;
  std::vector<std::pair<int, int>> rel = {{0, 1}, {2, 1}, {2, 3}};
  std::vector<std::string> labels = {"a", "b", "c", "d"};
  for (int k = 1; k <= i; ++k) {
    labels.push_back(std::to_string(k));
    rel.push_back({3 + k, k == 1 ? 0 : 3 + k - 1});
  }
  return cayley::build_poset_indices(n, rel, labels);
}

inline Poset random_poset(std::mt19937_64& rng, int n) {
  std::vector<std::pair<int, int>> rel;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < 0.4) rel.push_back({i, j});
  return cayley::build_poset_indices(n, rel);
}

inline SPExpression random_sp(std::mt19937_64& rng, int leaves) {
  if (leaves == 1) return SPExpression::leaf();
  std::uniform_int_distribution<int> split(1, leaves - 1);
  int left = split(rng);
  std::vector<SPExpression> children;
  children.push_back(random_sp(rng, left));
  children.push_back(random_sp(rng, leaves - left));
  if (rng() & 1) return SPExpression::series(std::move(children));
  return SPExpression::parallel(std::move(children));
}

// all full binary series/parallel expression trees with exactly `leaves`
// leaves (exhaustive up to associativity of the two compositions)
inline std::vector<SPExpression> all_sp(int leaves) {
  if (leaves == 1) return {SPExpression::leaf()};
  std::vector<SPExpression> out;
  for (int l = 1; l < leaves; ++l)
    for (const auto& a : all_sp(l))
      for (const auto& b : all_sp(leaves - l)) {
        out.push_back(SPExpression::series({a, b}));
        out.push_back(SPExpression::parallel({a, b}));
      }
  return out;
}

}  // namespace fixtures
