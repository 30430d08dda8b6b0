#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "halfcube/bigint.hpp"
#include "halfcube/face.hpp"
#include "halfcube/face_table.hpp"

namespace halfcube {

class ChainError : public std::runtime_error {
 public:
  enum class Code { kDegenerateFace, kDimensionMismatch, kBadPrecondition };

  ChainError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Orientation of a face: a base vertex and an ordered basis of the
/// direction space of its affine hull.
struct OrientationFrame {
  std::vector<int> base;
  std::vector<std::vector<int>> vectors;
};

/// Base is the lexicographically smallest vertex; the remaining vertices are
/// scanned in lexicographic order and (vertex - base) is kept whenever it
/// raises the rank. Requires dim(f) >= 1.
OrientationFrame orientation_frame(const FaceSeq& f);

/// Incidence number [f : g] in {-1, 0, +1}; requires dim(f) = dim(g) + 1.
int incidence(const FaceSeq& f, const FaceSeq& g);

/// Sparse integral d-chain over the d-cells of one FaceTable, keyed by local index.
class ChainVector {
 public:
  ChainVector() = default;
  explicit ChainVector(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  const std::map<std::size_t, BigInt>& terms() const { return coeffs_; }

  BigInt coefficient(std::size_t index) const;
  void add(std::size_t index, const BigInt& value);
  void add_scaled(const ChainVector& other, const BigInt& factor);

  friend bool operator==(const ChainVector&, const ChainVector&) = default;

 private:
  int dim_ = 0;
  std::map<std::size_t, BigInt> coeffs_;
};

/// Boundary operator from d-cells (columns) to (d-1)-cells (rows).
class BoundaryMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::int8_t value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  BoundaryMatrix() = default;
  BoundaryMatrix(int dim, std::size_t rows, std::vector<std::vector<Entry>> columns)
      : dim_(dim), rows_(rows), columns_(std::move(columns)) {}

  int dim() const { return dim_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  std::span<const Entry> column(std::size_t j) const { return columns_[j]; }
  int entry(std::size_t row, std::size_t col) const;
  std::size_t nonzeros() const;

  friend bool operator==(const BoundaryMatrix&, const BoundaryMatrix&) = default;

 private:
  int dim_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::vector<Entry>> columns_;  // each sorted by row
};

/// Matrix of the boundary map on d-cells, 0 <= d <= n. For d = 0 the single
/// row is the empty face and every entry is +1.
BoundaryMatrix boundary_matrix(const FaceTable& table, int d, int jobs = 1);

/// Cellular chain complex of the half cube with all boundary matrices built
/// up front.
class ChainComplex {
 public:
  explicit ChainComplex(const FaceTable& table, int jobs = 1);

  const FaceTable& table() const { return *table_; }
  const BoundaryMatrix& boundary(int d) const { return boundaries_[static_cast<std::size_t>(d)]; }

  /// Incidence [f : g] for a d-cell f and a (d-1)-cell g, by local index.
  int incidence(int d, std::size_t f, std::size_t g) const { return boundary(d).entry(g, f); }

  ChainVector apply_boundary(const ChainVector& c) const;
  /// Boundary of a single cell.
  ChainVector boundary_of(FaceId id) const;

 private:
  const FaceTable* table_;
  std::vector<BoundaryMatrix> boundaries_;
};

}  // namespace halfcube
