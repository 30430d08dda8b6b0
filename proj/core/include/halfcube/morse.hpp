#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfcube/chain_complex.hpp"
#include "halfcube/face.hpp"
#include "halfcube/face_table.hpp"

namespace halfcube {

// ---------------------------------------------------------------------------
// Matching rules
// ---------------------------------------------------------------------------

struct RuleMatch {
  FaceSeq partner;
  int rule = 0;  // 1..11
};

/// Partner of a face under the eleven matching rules. `n` is needed only for
/// the empty face, whose partner is the all-zeros vertex.
RuleMatch match_face(const FaceSeq& f, int n);

/// Rules whose input conditions hold for f, each evaluated from its own
/// statement and not from the dispatch order of match_face. Sorted.
std::vector<int> rule_applicability(const FaceSeq& f);

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

class MatchingError : public std::runtime_error {
 public:
  enum class Code {
    kInvolutionBroken,
    kNotCodimOne,
    kUnpaired,
    kCyclicPrec,
    kNotTriangular,
    kNotACycle,
    kResidualNonzero,
    kUnpairedCells,
  };

  MatchingError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

std::string_view to_string(MatchingError::Code code);

/// A (possibly partial) matching on the faces of one FaceTable. `partner`
/// is kUnpaired for unmatched faces; `rule` is the rule that sent the face
/// to its partner (0 when unpaired).
class MorseMatching {
 public:
  static constexpr FaceId kUnpaired = std::numeric_limits<FaceId>::max();

  MorseMatching() = default;
  MorseMatching(std::vector<FaceId> partner, std::vector<std::uint8_t> rule)
      : partner_(std::move(partner)), rule_(std::move(rule)) {}

  std::size_t size() const { return partner_.size(); }
  bool is_paired(FaceId id) const { return partner_[id] != kUnpaired; }
  FaceId partner(FaceId id) const { return partner_[id]; }
  int rule(FaceId id) const { return rule_[id]; }

  /// Re-pairs a and b with each other (no validation). Used for fault injection.
  void set_pair(FaceId a, FaceId b, int rule_a, int rule_b);
  void unpair(FaceId id);

  /// Keeps only pairs with both faces in `members` (indexed by FaceId).
  MorseMatching restricted_to(const std::vector<bool>& members) const;

  /// e_{V,k}: k-cells matched upward, in FaceId order.
  std::vector<FaceId> upward(const FaceTable& table, int k) const;
  /// d_{V,k}: (k+1)-cells matched downward, in FaceId order.
  std::vector<FaceId> downward(const FaceTable& table, int k) const;

 private:
  std::vector<FaceId> partner_;
  std::vector<std::uint8_t> rule_;
};

/// Applies the rules to every face and validates the result; throws
/// MatchingError naming the offending face on any violation.
MorseMatching build_matching(const FaceTable& table, const FaceLattice& lattice);

struct MatchingViolation {
  MatchingError::Code code;
  FaceId face;
  std::string message;
};

/// Checks the matching invariants: involution, codimension-1 incidence and
/// (when `require_complete`) that every face is paired. Returns the first
/// violation in FaceId order.
std::optional<MatchingViolation> check_matching(const MorseMatching& m, const FaceTable& table,
                                                const FaceLattice& lattice, bool require_complete = true);

// ---------------------------------------------------------------------------
// Acyclicity
// ---------------------------------------------------------------------------

struct LayerReport {
  int p = 0;  // layer holds the p-cells and (p+1)-cells
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::optional<std::vector<FaceSeq>> cycle;  // closed directed walk, first face repeated at the end
};

struct AcyclicityReport {
  int n = 0;
  std::vector<LayerReport> layers;
  bool acyclic() const;
};

/// Builds the modified Hasse digraph layer by layer (matched pairs point
/// up, every other cover relation points down) and looks for a directed cycle.
/// `members` restricts the digraph to a face subset (empty = all faces).
AcyclicityReport verify_acyclic(const MorseMatching& m, const FaceTable& table, const FaceLattice& lattice,
                                const std::vector<bool>& members = {});

/// Number of unpaired cells per dimension; index 0 is dimension -1.
/// `members` restricts the count to a face subset (empty = all faces).
std::vector<std::size_t> morse_counts(const MorseMatching& m, const FaceTable& table,
                                      const std::vector<bool>& members = {});

// ---------------------------------------------------------------------------
// Morse boundary and cycle bases
// ---------------------------------------------------------------------------

/// The boundary restricted to matched pairs at level k: rows are the
/// upward-matched k-cells, columns their (k+1)-dimensional partners, both in
/// the order of a linear extension of the precedence relation.
class MorseBoundary {
 public:
  struct Entry {
    std::size_t row;
    int value;
  };

  int level() const { return level_; }
  std::size_t size() const { return e_cells_.size(); }
  /// Upward-matched k-cells in topological order.
  std::span<const FaceId> e_cells() const { return e_cells_; }
  /// d_cells()[i] is the partner of e_cells()[i].
  std::span<const FaceId> d_cells() const { return d_cells_; }
  /// Column i, sorted by row position.
  std::span<const Entry> column(std::size_t i) const { return columns_[i]; }
  int entry(std::size_t row, std::size_t col) const;
  /// Pairs (a, b) of positions with e_cells()[a] preceding e_cells()[b].
  std::span<const std::pair<std::size_t, std::size_t>> precedence() const { return precedence_; }

  bool is_upper_triangular() const;
  /// Product of the diagonal; the determinant when triangular.
  int diagonal_product() const;

 private:
  friend MorseBoundary morse_boundary(const MorseMatching&, const ChainComplex&, const FaceLattice&, int);

  int level_ = 0;
  std::vector<FaceId> e_cells_;
  std::vector<FaceId> d_cells_;
  std::vector<std::vector<Entry>> columns_;
  std::vector<std::pair<std::size_t, std::size_t>> precedence_;
};

/// Builds the level-k Morse boundary for 0 <= k < n. The topological order
/// is Kahn's algorithm with lexicographic tie-break. Throws kCyclicPrec if
/// the precedence relation has a cycle, and kNotTriangular if the resulting
/// matrix is not triangular with unit diagonal.
MorseBoundary morse_boundary(const MorseMatching& m, const ChainComplex& complex, const FaceLattice& lattice, int k);

/// Given a k-cycle y, returns the (k+1)-chain supported on the downward
/// matched cells whose boundary is y, by back substitution through the
/// triangular Morse boundary. Requires that no k-cell is unpaired.
ChainVector solve_cycle(const ChainVector& y, const MorseMatching& m, const ChainComplex& complex,
                        const MorseBoundary& mb);

}  // namespace halfcube
