#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "halfcube/face.hpp"

namespace halfcube {

/// Dense identifier of a face within one FaceTable. Faces are numbered by
/// dimension (-1 first), lexicographically within a dimension.
using FaceId = std::uint32_t;

inline constexpr int kMinAmbientDim = 4;
inline constexpr int kMaxAmbientDim = 12;

/// All faces of the n-dimensional half cube (empty face and top cell
/// included), sorted per dimension by text form. Immutable.
class FaceTable {
 public:
  int n() const { return n_; }

  std::span<const FaceSeq> faces(int dim) const;
  std::size_t count(int dim) const { return faces(dim).size(); }
  std::size_t size() const { return faces_.size(); }

  const FaceSeq& face(FaceId id) const { return faces_[id]; }
  int dim_of(FaceId id) const { return dims_[id]; }
  FaceId first_id(int dim) const { return offsets_[static_cast<std::size_t>(dim + 1)]; }
  FaceId id(int dim, std::size_t local) const { return first_id(dim) + static_cast<FaceId>(local); }
  std::size_t local_index(FaceId id) const { return id - first_id(dims_[id]); }

  std::optional<FaceId> find(const FaceSeq& f) const;
  /// Like find, but throws std::out_of_range for faces not in the table.
  FaceId id_of(const FaceSeq& f) const;

 private:
  friend FaceTable enumerate_faces(int n);

  int n_ = 0;
  std::vector<FaceSeq> faces_;
  std::vector<int> dims_;
  std::vector<FaceId> offsets_;  // n + 3 entries
  std::unordered_map<FaceSeq, FaceId> index_;
};

/// Enumerates every face of the n-dimensional half cube.
/// Throws FaceError (kNTooSmall / kNTooLarge) outside [4, 12].
FaceTable enumerate_faces(int n);

/// Face counts by dimension from the classification of half-cube faces.
struct ExpectedCounts {
  std::uint64_t simplex = 0;   // vertices, edges and simplex-shaped faces
  std::uint64_t halfcube = 0;  // half-cube-shaped faces (including the top cell)
  std::uint64_t total() const { return simplex + halfcube; }
};

/// Expected counts for dimension `dim` in [-1, n]; the empty face counts as simplex-like.
ExpectedCounts expected_counts(int n, int dim);

/// Facet / cofacet adjacency of a FaceTable (the Hasse diagram).
class FaceLattice {
 public:
  explicit FaceLattice(const FaceTable& table);

  std::span<const FaceId> facets(FaceId id) const;
  std::span<const FaceId> cofacets(FaceId id) const;
  bool is_facet(FaceId smaller, FaceId larger) const;

 private:
  std::vector<std::uint32_t> facet_offsets_;
  std::vector<FaceId> facet_ids_;
  std::vector<std::uint32_t> cofacet_offsets_;
  std::vector<FaceId> cofacet_ids_;
};

}  // namespace halfcube
