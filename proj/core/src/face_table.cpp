#include "halfcube/face_table.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace halfcube {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

Symbol digit_symbol(std::uint32_t bits, int i) {
  return ((bits >> i) & 1U) ? Symbol::kPlain1 : Symbol::kPlain0;
}

}  // namespace

std::span<const FaceSeq> FaceTable::faces(int dim) const {
  if (dim < -1 || dim > n_) return {};
  const auto d = static_cast<std::size_t>(dim + 1);
  return std::span<const FaceSeq>(faces_).subspan(offsets_[d], offsets_[d + 1] - offsets_[d]);
}

std::optional<FaceId> FaceTable::find(const FaceSeq& f) const {
  const auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FaceId FaceTable::id_of(const FaceSeq& f) const {
  if (const auto id = find(f)) return *id;
  throw std::out_of_range("face " + f.text() + " is not a face of the half cube with n=" + std::to_string(n_));
}

FaceTable enumerate_faces(int n) {
  if (n < kMinAmbientDim) throw FaceError(FaceError::Code::kNTooSmall, "n must be at least 4");
  if (n > kMaxAmbientDim) throw FaceError(FaceError::Code::kNTooLarge, "n must be at most 12");

  std::vector<std::vector<FaceSeq>> by_dim(static_cast<std::size_t>(n + 2));
  by_dim[0].push_back(FaceSeq::empty());

  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<Symbol> syms(static_cast<std::size_t>(n));

  // Vertices and simplex-shaped faces: (v', S) with v' odd, |S| >= 2.
  for (std::uint32_t v = 0; v <= full; ++v) {
    if (std::popcount(v) % 2 == 0) {
      for (int i = 0; i < n; ++i) syms[static_cast<std::size_t>(i)] = digit_symbol(v, i);
      by_dim[1].push_back(FaceSeq::from_symbols(syms));
      continue;
    }
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      const int m = std::popcount(mask);
      if (m < 2) continue;
      for (int i = 0; i < n; ++i) {
        const bool one = (v >> i) & 1U;
        if ((mask >> i) & 1U) {
          syms[static_cast<std::size_t>(i)] = one ? Symbol::kUnd1 : Symbol::kUnd0;
        } else {
          syms[static_cast<std::size_t>(i)] = one ? Symbol::kPlain1 : Symbol::kPlain0;
        }
      }
      // Each edge arises from two odd vertices; keep the canonical one.
      if (m == 2 && ((v >> (31 - std::countl_zero(mask))) & 1U)) continue;
      by_dim[static_cast<std::size_t>(m)].push_back(FaceSeq::from_symbols(syms));
    }
  }

  // Half-cube-shaped faces: star mask S with |S| >= 3, arbitrary digits elsewhere.
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const int m = std::popcount(mask);
    if (m < 3) continue;
    const std::uint32_t free_bits = full & ~mask;
    // Iterate over all subsets of the free coordinates.
    std::uint32_t sub = 0;
    do {
      for (int i = 0; i < n; ++i) {
        syms[static_cast<std::size_t>(i)] = ((mask >> i) & 1U) ? Symbol::kStar : digit_symbol(sub, i);
      }
      by_dim[static_cast<std::size_t>(m + 1)].push_back(FaceSeq::from_symbols(syms));
      sub = (sub - free_bits) & free_bits;
    } while (sub != 0);
  }

  FaceTable table;
  table.n_ = n;
  table.offsets_.push_back(0);
  for (int d = -1; d <= n; ++d) {
    auto& list = by_dim[static_cast<std::size_t>(d + 1)];
    std::sort(list.begin(), list.end());
    for (auto& f : list) {
      table.faces_.push_back(std::move(f));
      table.dims_.push_back(d);
    }
    table.offsets_.push_back(static_cast<FaceId>(table.faces_.size()));
  }
  table.index_.reserve(table.faces_.size());
  for (FaceId id = 0; id < table.faces_.size(); ++id) table.index_.emplace(table.faces_[id], id);
  return table;
}

ExpectedCounts expected_counts(int n, int dim) {
  ExpectedCounts c;
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  if (dim == -1) {
    c.simplex = 1;
  } else if (dim == 0) {
    c.simplex = half;
  } else if (dim == 1) {
    c.simplex = (half / 2) * binomial(n, 2);
  } else if (dim >= 2 && dim < n) {
    c.simplex = half * binomial(n, dim + 1);
  }
  if (dim >= 3 && dim <= n) c.halfcube = (std::uint64_t{1} << (n - dim)) * binomial(n, dim);
  return c;
}

FaceLattice::FaceLattice(const FaceTable& table) {
  const std::size_t total = table.size();
  facet_offsets_.reserve(total + 1);
  facet_offsets_.push_back(0);
  std::vector<std::uint32_t> cofacet_counts(total, 0);
  for (FaceId id = 0; id < total; ++id) {
    std::vector<FaceId> ids;
    for (const FaceSeq& g : halfcube::facets(table.face(id))) ids.push_back(table.id_of(g));
    std::sort(ids.begin(), ids.end());
    for (const FaceId g : ids) {
      facet_ids_.push_back(g);
      ++cofacet_counts[g];
    }
    facet_offsets_.push_back(static_cast<std::uint32_t>(facet_ids_.size()));
  }
  cofacet_offsets_.assign(total + 1, 0);
  for (std::size_t i = 0; i < total; ++i) cofacet_offsets_[i + 1] = cofacet_offsets_[i] + cofacet_counts[i];
  cofacet_ids_.resize(facet_ids_.size());
  std::vector<std::uint32_t> fill(cofacet_offsets_.begin(), cofacet_offsets_.end() - 1);
  for (FaceId id = 0; id < total; ++id) {
    for (const FaceId g : facets(id)) cofacet_ids_[fill[g]++] = id;
  }
}

std::span<const FaceId> FaceLattice::facets(FaceId id) const {
  return std::span<const FaceId>(facet_ids_).subspan(facet_offsets_[id], facet_offsets_[id + 1] - facet_offsets_[id]);
}

std::span<const FaceId> FaceLattice::cofacets(FaceId id) const {
  return std::span<const FaceId>(cofacet_ids_)
      .subspan(cofacet_offsets_[id], cofacet_offsets_[id + 1] - cofacet_offsets_[id]);
}

bool FaceLattice::is_facet(FaceId smaller, FaceId larger) const {
  const auto f = facets(larger);
  return std::binary_search(f.begin(), f.end(), smaller);
}

}  // namespace halfcube
