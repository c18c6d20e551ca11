#pragma once

#include <cstdint>
#include <random>

#include "torusnielsen/int_matrix.hpp"

namespace tn::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                               std::size_t cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) A(i, j) = d(rng);
  return A;
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntVector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline std::size_t random_dim(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace tn::testing
