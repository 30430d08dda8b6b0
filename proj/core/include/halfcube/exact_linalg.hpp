#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace halfcube {

template <typename T>
using DenseMatrix = std::vector<std::vector<T>>;

/// Fraction-free (Bareiss) elimination. Every division is exact, so any
/// integral T works; entries stay bounded by minors of the input.
/// Returns the rank; when the matrix is square and full rank, `*det` is set
/// to its determinant (0 otherwise).
template <typename T>
std::size_t bareiss_eliminate(DenseMatrix<T> a, T* det = nullptr) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  T prev = 1;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(a[pivot], a[rank]);
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  if (det) {
    *det = (rows == cols && rank == rows && rows > 0) ? T(sign) * prev : T(rows == 0 ? 1 : 0);
  }
  return rank;
}

template <typename T>
std::size_t bareiss_rank(DenseMatrix<T> a) {
  return bareiss_eliminate(std::move(a));
}

/// Determinant of a square matrix.
template <typename T>
T bareiss_determinant(DenseMatrix<T> a) {
  T det = 0;
  bareiss_eliminate(std::move(a), &det);
  return det;
}

}  // namespace halfcube
