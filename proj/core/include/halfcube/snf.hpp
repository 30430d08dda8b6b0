#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halfcube/bigint.hpp"
#include "halfcube/chain_complex.hpp"

namespace halfcube {

class OracleError : public std::runtime_error {
 public:
  enum class Code { kNotClosed, kNotCycles };

  OracleError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Column-major sparse integer matrix, the input format of the oracle.
class SparseIntMatrix {
 public:
  using Column = std::vector<std::pair<std::size_t, BigInt>>;

  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Column& column(std::size_t j) const { return columns_[j]; }

  /// Adds value at (row, col). Zero values are ignored.
  void add(std::size_t row, std::size_t col, const BigInt& value);
  void append_column(Column column);

  static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& rows);

 private:
  std::size_t rows_;
  std::vector<Column> columns_;
};

struct SNFResult {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Nonzero invariant factors d1 | d2 | ..., all positive.
  std::vector<BigInt> invariant_factors;

  std::size_t rank() const { return invariant_factors.size(); }
  /// Invariant factors greater than 1.
  std::vector<BigInt> torsion() const;
  bool divisibility_chain_holds() const;
};

/// Smith normal form by exact sparse elimination. Pivots are chosen in the
/// sparsest column, smallest absolute value first.
SNFResult smith_normal_form(const SparseIntMatrix& m);

/// Boundary d-cells -> (d-1)-cells of the subcomplex `members` (indexed by
/// FaceId), with rows and columns renumbered in FaceId order within the
/// subset. Without `reduced`, the augmentation (d = 0) is the zero map.
SparseIntMatrix restricted_boundary(const ChainComplex& complex, const std::vector<bool>& members, int d,
                                    bool reduced);

struct HomologyEntry {
  int degree = 0;
  std::size_t cells = 0;
  std::size_t rank_out = 0;  // rank of the boundary leaving this degree
  std::size_t rank_in = 0;   // rank of the boundary arriving in this degree
  std::size_t betti = 0;
  std::vector<BigInt> torsion;
};

struct HomologyReport {
  std::string label;
  bool reduced = true;
  std::vector<HomologyEntry> degrees;  // one entry per degree, lowest first

  /// Betti number in a degree (0 when out of range).
  std::size_t betti(int degree) const;
  bool torsion_free() const;
};

/// Homology of the facet-closed face subset, in every degree. Reduced
/// homology includes the empty face and the augmentation map.
HomologyReport homology(const ChainComplex& complex, const std::vector<bool>& members, bool reduced,
                        std::string label = {});

/// Homology in a single degree.
HomologyEntry homology_in_degree(const ChainComplex& complex, const std::vector<bool>& members, int degree,
                                 bool reduced);

struct IndependenceVerdict {
  std::size_t count = 0;           // number of input cycles
  std::size_t cycle_rank = 0;      // rank of the cycle group of the subset
  std::size_t boundary_rank = 0;   // rank of the boundaries
  std::size_t combined_rank = 0;   // rank of boundaries together with the inputs
  bool independent = false;        // classes are independent in homology
  bool generating = false;         // classes together with boundaries give every cycle
  bool basis() const { return independent && generating; }
};

/// Decides whether the homology classes of the given cycles (all of one
/// degree, supported in `members`) form a free basis of that homology group.
IndependenceVerdict class_independence(const std::vector<ChainVector>& cycles, const ChainComplex& complex,
                                       const std::vector<bool>& members);

/// Throws OracleError::kNotClosed unless every facet of a member is a member.
void require_facet_closed(const ChainComplex& complex, const std::vector<bool>& members);

}  // namespace halfcube
