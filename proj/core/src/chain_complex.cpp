#include "halfcube/chain_complex.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "halfcube/exact_linalg.hpp"
#include "halfcube/parallel.hpp"

namespace halfcube {

namespace {

// Geometry of one face needed for incidence signs: its frame, the number of
// vertices and the sum of the vertex points.
struct FaceGeometry {
  OrientationFrame frame;
  long long vertex_count = 0;
  std::vector<long long> vertex_sum;
};

__extension__ typedef __int128 Wide;

std::size_t rank_of(const std::vector<std::vector<int>>& vectors) {
  DenseMatrix<Wide> m;
  m.reserve(vectors.size());
  for (const auto& v : vectors) m.emplace_back(v.begin(), v.end());
  return bareiss_rank(std::move(m));
}

OrientationFrame frame_from_vertices(const FaceSeq& f, const std::vector<FaceSeq>& vertices, int dim) {
  OrientationFrame frame;
  frame.base = vertex_point(vertices.front());
  for (std::size_t i = 1; i < vertices.size() && static_cast<int>(frame.vectors.size()) < dim; ++i) {
    std::vector<int> v = vertex_point(vertices[i]);
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= frame.base[c];
    frame.vectors.push_back(std::move(v));
    if (rank_of(frame.vectors) < frame.vectors.size()) frame.vectors.pop_back();
  }
  if (static_cast<int>(frame.vectors.size()) != dim) {
    throw ChainError(ChainError::Code::kDegenerateFace,
                     "face " + f.text() + " spans rank " + std::to_string(frame.vectors.size()) +
                         ", expected " + std::to_string(dim));
  }
  return frame;
}

FaceGeometry geometry_of(const FaceSeq& f) {
  FaceGeometry g;
  const std::vector<FaceSeq> vertices = vertices_of(f);
  const int dim = classify(f).dim;
  g.vertex_count = static_cast<long long>(vertices.size());
  g.vertex_sum.assign(static_cast<std::size_t>(f.size()), 0);
  for (const FaceSeq& v : vertices) {
    const std::vector<int> p = vertex_point(v);
    for (std::size_t c = 0; c < p.size(); ++c) g.vertex_sum[c] += p[c];
  }
  if (dim >= 1) g.frame = frame_from_vertices(f, vertices, dim);
  return g;
}

// Sign of det(F^T [u | G]) where F is the frame of the cell, u points from
// the cell's centroid to the facet's centroid and G is the facet's frame.
int incidence_sign(const FaceGeometry& cell, const FaceGeometry& facet) {
  const std::size_t n = cell.vertex_sum.size();
  std::vector<long long> u(n);
  long long g = 0;
  for (std::size_t c = 0; c < n; ++c) {
    u[c] = cell.vertex_count * facet.vertex_sum[c] - facet.vertex_count * cell.vertex_sum[c];
    g = std::gcd(g, u[c]);
  }
  if (g > 1) {
    for (auto& x : u) x /= g;
  }
  const auto& fv = cell.frame.vectors;
  const std::size_t k = fv.size();
  DenseMatrix<BigInt> a(k, std::vector<BigInt>(k));
  for (std::size_t r = 0; r < k; ++r) {
    long long dot = 0;
    for (std::size_t c = 0; c < n; ++c) dot += static_cast<long long>(fv[r][c]) * u[c];
    a[r][0] = dot;
    for (std::size_t j = 1; j < k; ++j) {
      long long s = 0;
      for (std::size_t c = 0; c < n; ++c) s += static_cast<long long>(fv[r][c]) * facet.frame.vectors[j - 1][c];
      a[r][j] = s;
    }
  }
  const BigInt det = bareiss_determinant(std::move(a));
  if (det == 0) throw ChainError(ChainError::Code::kDegenerateFace, "zero incidence determinant");
  return det > 0 ? 1 : -1;
}

}  // namespace

OrientationFrame orientation_frame(const FaceSeq& f) {
  const int dim = classify(f).dim;
  if (dim < 1) {
    throw ChainError(ChainError::Code::kBadPrecondition, "orientation frame needs dim >= 1, got " + f.text());
  }
  return frame_from_vertices(f, vertices_of(f), dim);
}

int incidence(const FaceSeq& f, const FaceSeq& g) {
  const int df = classify(f).dim;
  const int dg = classify(g).dim;
  if (df != dg + 1 || df < 0) {
    throw ChainError(ChainError::Code::kDimensionMismatch,
                     "incidence [" + f.text() + " : " + g.text() + "] needs dim(f) = dim(g) + 1");
  }
  const std::vector<FaceSeq> fs = facets(f);
  if (!std::binary_search(fs.begin(), fs.end(), g)) return 0;
  if (df == 0) return 1;
  return incidence_sign(geometry_of(f), geometry_of(g));
}

BigInt ChainVector::coefficient(std::size_t index) const {
  const auto it = coeffs_.find(index);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

void ChainVector::add(std::size_t index, const BigInt& value) {
  if (value == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) coeffs_.erase(it);
  }
}

void ChainVector::add_scaled(const ChainVector& other, const BigInt& factor) {
  if (factor == 0) return;
  for (const auto& [index, value] : other.coeffs_) add(index, value * factor);
}

int BoundaryMatrix::entry(std::size_t row, std::size_t col) const {
  const auto& column = columns_[col];
  const auto it = std::lower_bound(column.begin(), column.end(), row,
                                   [](const Entry& e, std::size_t r) { return e.row < r; });
  return (it != column.end() && it->row == row) ? it->value : 0;
}

std::size_t BoundaryMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& c : columns_) total += c.size();
  return total;
}

BoundaryMatrix boundary_matrix(const FaceTable& table, int d, int jobs) {
  if (d < 0 || d > table.n()) {
    throw ChainError(ChainError::Code::kDimensionMismatch, "boundary dimension out of range: " + std::to_string(d));
  }
  const auto cells = table.faces(d);
  const auto rows = table.faces(d - 1);
  std::vector<std::vector<BoundaryMatrix::Entry>> columns(cells.size());
  if (d == 0) {
    for (auto& c : columns) c.push_back({0, 1});
    return BoundaryMatrix(0, rows.size(), std::move(columns));
  }

  std::vector<FaceGeometry> facet_geometry(rows.size());
  parallel_for(rows.size(), jobs, [&](std::size_t i) { facet_geometry[i] = geometry_of(rows[i]); });
  const FaceId row_base = table.first_id(d - 1);
  parallel_for(cells.size(), jobs, [&](std::size_t j) {
    const FaceGeometry cell = geometry_of(cells[j]);
    auto& column = columns[j];
    for (const FaceSeq& g : facets(cells[j])) {
      const auto row = static_cast<std::uint32_t>(table.id_of(g) - row_base);
      column.push_back({row, static_cast<std::int8_t>(incidence_sign(cell, facet_geometry[row]))});
    }
    std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  });
  return BoundaryMatrix(d, rows.size(), std::move(columns));
}

ChainComplex::ChainComplex(const FaceTable& table, int jobs) : table_(&table) {
  for (int d = 0; d <= table.n(); ++d) boundaries_.push_back(boundary_matrix(table, d, jobs));
}

ChainVector ChainComplex::apply_boundary(const ChainVector& c) const {
  if (c.dim() < 0 || c.dim() > table_->n()) {
    throw ChainError(ChainError::Code::kDimensionMismatch, "cannot take the boundary of a chain in dimension " +
                                                               std::to_string(c.dim()));
  }
  ChainVector out(c.dim() - 1);
  const BoundaryMatrix& m = boundary(c.dim());
  for (const auto& [col, coeff] : c.terms()) {
    for (const auto& e : m.column(col)) out.add(e.row, coeff * e.value);
  }
  return out;
}

ChainVector ChainComplex::boundary_of(FaceId id) const {
  const int d = table_->dim_of(id);
  ChainVector cell(d);
  cell.add(table_->local_index(id), 1);
  return apply_boundary(cell);
}

}  // namespace halfcube
