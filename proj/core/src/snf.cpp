#include "halfcube/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>

namespace halfcube {

namespace {

// Working state of the elimination: row-major values plus column occupancy.
class Eliminator {
 public:
  explicit Eliminator(const SparseIntMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (const auto& [i, v] : m.column(j)) {
        if (v == 0) continue;
        rows_[i][static_cast<std::uint32_t>(j)] += v;
        if (rows_[i][static_cast<std::uint32_t>(j)] == 0) {
          rows_[i].erase(static_cast<std::uint32_t>(j));
          cols_[j].erase(static_cast<std::uint32_t>(i));
        } else {
          cols_[j].insert(static_cast<std::uint32_t>(i));
        }
      }
    }
  }

  std::vector<BigInt> diagonalize() {
    std::vector<BigInt> diagonal;
    while (true) {
      const auto c = sparsest_column();
      if (!c) break;
      diagonal.push_back(eliminate_pivot(*c));
    }
    return diagonal;
  }

 private:
  std::optional<std::uint32_t> sparsest_column() const {
    std::optional<std::uint32_t> best;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t j = 0; j < cols_.size(); ++j) {
      const std::size_t s = cols_[j].size();
      if (s != 0 && s < best_size) {
        best = j;
        best_size = s;
        if (s == 1) break;
      }
    }
    return best;
  }

  std::uint32_t best_row_in_column(std::uint32_t c) const {
    std::uint32_t best = *cols_[c].begin();
    for (const std::uint32_t r : cols_[c]) {
      const BigInt a = abs(rows_[r].at(c));
      const BigInt b = abs(rows_[best].at(c));
      if (a < b || (a == b && rows_[r].size() < rows_[best].size())) best = r;
    }
    return best;
  }

  std::uint32_t best_col_in_row(std::uint32_t r) const {
    const auto& row = rows_[r];
    std::uint32_t best = row.begin()->first;
    for (const auto& [c, v] : row) {
      const BigInt a = abs(v);
      const BigInt b = abs(row.at(best));
      if (a < b || (a == b && cols_[c].size() < cols_[best].size())) best = c;
    }
    return best;
  }

  void set(std::uint32_t r, std::uint32_t c, BigInt v) {
    if (v == 0) {
      rows_[r].erase(c);
      cols_[c].erase(r);
    } else {
      rows_[r][c] = std::move(v);
      cols_[c].insert(r);
    }
  }

  // row target -= q * row source
  void row_axpy(std::uint32_t target, const BigInt& q, std::uint32_t source) {
    for (const auto& [c, v] : rows_[source]) {
      auto it = rows_[target].find(c);
      if (it == rows_[target].end()) {
        rows_[target].emplace(c, -q * v);
        cols_[c].insert(target);
      } else {
        it->second -= q * v;
        if (it->second == 0) {
          rows_[target].erase(it);
          cols_[c].erase(target);
        }
      }
    }
  }

  // Reduces the active block until the pivot is alone in its row and
  // column; returns its absolute value. Every change of pivot strictly
  // lowers its absolute value, so this terminates.
  BigInt eliminate_pivot(std::uint32_t c) {
    std::uint32_t r = best_row_in_column(c);
    while (true) {
      const BigInt p = rows_[r].at(c);
      bool remainder = false;
      const std::vector<std::uint32_t> others(cols_[c].begin(), cols_[c].end());
      for (const std::uint32_t r2 : others) {
        if (r2 == r) continue;
        const BigInt q = rows_[r2].at(c) / p;
        if (q != 0) row_axpy(r2, q, r);
        if (rows_[r2].count(c)) remainder = true;
      }
      if (remainder) {
        r = best_row_in_column(c);
        continue;
      }
      // Column c is clear, so column operations only touch row r.
      const std::vector<std::pair<std::uint32_t, BigInt>> row(rows_[r].begin(), rows_[r].end());
      for (const auto& [c2, v] : row) {
        if (c2 == c) continue;
        const BigInt rem = v % p;
        if (rem != 0) remainder = true;
        set(r, c2, rem);
      }
      if (remainder) {
        c = best_col_in_row(r);
        continue;
      }
      BigInt result = abs(p);
      set(r, c, 0);
      return result;
    }
  }

  std::vector<std::map<std::uint32_t, BigInt>> rows_;
  std::vector<std::set<std::uint32_t>> cols_;
};

BigInt gcd_big(BigInt a, BigInt b) {
  while (b != 0) {
    BigInt t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return abs(a);
}

// Turns a diagonal form into invariant factors: repeatedly replace a pair by
// (gcd, lcm), which preserves the group presented by the diagonal.
std::vector<BigInt> invariant_factors_of(std::vector<BigInt> diagonal) {
  std::size_t units = 0;
  std::vector<BigInt> rest;
  for (auto& d : diagonal) {
    if (d == 1) {
      ++units;
    } else {
      rest.push_back(std::move(d));
    }
  }
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      const BigInt g = gcd_big(rest[i], rest[j]);
      const BigInt l = rest[i] / g * rest[j];
      rest[i] = g;
      rest[j] = l;
    }
  }
  std::vector<BigInt> out(units, BigInt(1));
  for (auto& d : rest) out.push_back(std::move(d));
  std::stable_sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> subset_positions(const FaceTable& table, const std::vector<bool>& members, int d) {
  // Position of each d-cell within the subset, or SIZE_MAX when absent.
  std::vector<std::size_t> pos(table.count(d), std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t i = 0; i < table.count(d); ++i) {
    if (members[table.id(d, i)]) pos[i] = next++;
  }
  return pos;
}

std::size_t subset_count(const FaceTable& table, const std::vector<bool>& members, int d) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < table.count(d); ++i) count += members[table.id(d, i)] ? 1 : 0;
  return count;
}

}  // namespace

void SparseIntMatrix::add(std::size_t row, std::size_t col, const BigInt& value) {
  if (value != 0) columns_[col].emplace_back(row, value);
}

void SparseIntMatrix::append_column(Column column) { columns_.push_back(std::move(column)); }

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  SparseIntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.add(i, j, rows[i][j]);
  }
  return m;
}

std::vector<BigInt> SNFResult::torsion() const {
  std::vector<BigInt> out;
  for (const auto& d : invariant_factors) {
    if (d > 1) out.push_back(d);
  }
  return out;
}

bool SNFResult::divisibility_chain_holds() const {
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (invariant_factors[i] <= 0) return false;
    if (i > 0 && invariant_factors[i] % invariant_factors[i - 1] != 0) return false;
  }
  return true;
}

SNFResult smith_normal_form(const SparseIntMatrix& m) {
  SNFResult result;
  result.rows = m.rows();
  result.cols = m.cols();
  Eliminator elim(m);
  result.invariant_factors = invariant_factors_of(elim.diagonalize());
  return result;
}

void require_facet_closed(const ChainComplex& complex, const std::vector<bool>& members) {
  const FaceTable& table = complex.table();
  for (int d = 0; d <= table.n(); ++d) {
    const BoundaryMatrix& bd = complex.boundary(d);
    for (std::size_t j = 0; j < bd.cols(); ++j) {
      if (!members[table.id(d, j)]) continue;
      for (const auto& e : bd.column(j)) {
        if (!members[table.id(d - 1, e.row)]) {
          throw OracleError(OracleError::Code::kNotClosed, "subset contains " + table.face(table.id(d, j)).text() +
                                                               " but not its facet " +
                                                               table.face(table.id(d - 1, e.row)).text());
        }
      }
    }
  }
}

SparseIntMatrix restricted_boundary(const ChainComplex& complex, const std::vector<bool>& members, int d,
                                    bool reduced) {
  const FaceTable& table = complex.table();
  const auto row_pos = subset_positions(table, members, d - 1);
  const std::size_t row_count = subset_count(table, members, d - 1);
  SparseIntMatrix m(row_count, 0);
  const BoundaryMatrix& bd = complex.boundary(d);
  for (std::size_t j = 0; j < bd.cols(); ++j) {
    if (!members[table.id(d, j)]) continue;
    SparseIntMatrix::Column column;
    if (d > 0 || reduced) {
      for (const auto& e : bd.column(j)) column.emplace_back(row_pos[e.row], BigInt(e.value));
    }
    m.append_column(std::move(column));
  }
  return m;
}

std::size_t HomologyReport::betti(int degree) const {
  for (const auto& e : degrees) {
    if (e.degree == degree) return e.betti;
  }
  return 0;
}

bool HomologyReport::torsion_free() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const HomologyEntry& e) { return e.torsion.empty(); });
}

HomologyReport homology(const ChainComplex& complex, const std::vector<bool>& members, bool reduced,
                        std::string label) {
  require_facet_closed(complex, members);
  const FaceTable& table = complex.table();
  const int n = table.n();
  // snf[d + 1] is the SNF of the boundary leaving degree d (d = -1 .. n).
  std::vector<SNFResult> snf(static_cast<std::size_t>(n + 2));
  for (int d = 0; d <= n; ++d) snf[static_cast<std::size_t>(d + 1)] =
      smith_normal_form(restricted_boundary(complex, members, d, reduced));

  HomologyReport report;
  report.label = std::move(label);
  report.reduced = reduced;
  for (int d = reduced ? -1 : 0; d <= n; ++d) {
    HomologyEntry e;
    e.degree = d;
    e.cells = subset_count(table, members, d);
    e.rank_out = d >= 0 ? snf[static_cast<std::size_t>(d + 1)].rank() : 0;
    if (d < n) {
      const SNFResult& in = snf[static_cast<std::size_t>(d + 2)];
      e.rank_in = in.rank();
      e.torsion = in.torsion();
    }
    e.betti = e.cells - e.rank_out - e.rank_in;
    report.degrees.push_back(std::move(e));
  }
  return report;
}

HomologyEntry homology_in_degree(const ChainComplex& complex, const std::vector<bool>& members, int degree,
                                 bool reduced) {
  require_facet_closed(complex, members);
  const FaceTable& table = complex.table();
  HomologyEntry e;
  e.degree = degree;
  if (degree < -1 || degree > table.n() || (degree == -1 && !reduced)) return e;
  e.cells = subset_count(table, members, degree);
  if (degree >= 0) e.rank_out = smith_normal_form(restricted_boundary(complex, members, degree, reduced)).rank();
  if (degree < table.n()) {
    const SNFResult in = smith_normal_form(restricted_boundary(complex, members, degree + 1, reduced));
    e.rank_in = in.rank();
    e.torsion = in.torsion();
  }
  e.betti = e.cells - e.rank_out - e.rank_in;
  return e;
}

IndependenceVerdict class_independence(const std::vector<ChainVector>& cycles, const ChainComplex& complex,
                                       const std::vector<bool>& members) {
  require_facet_closed(complex, members);
  IndependenceVerdict v;
  v.count = cycles.size();
  if (cycles.empty()) return v;
  const FaceTable& table = complex.table();
  const int degree = cycles.front().dim();
  const auto pos = subset_positions(table, members, degree);

  SparseIntMatrix combined = degree < table.n() ? restricted_boundary(complex, members, degree + 1, true)
                                                : SparseIntMatrix(subset_count(table, members, degree), 0);
  v.boundary_rank = smith_normal_form(combined).rank();
  for (const ChainVector& z : cycles) {
    if (z.dim() != degree || !complex.apply_boundary(z).is_zero()) {
      throw OracleError(OracleError::Code::kNotCycles, "input chain is not a cycle of degree " + std::to_string(degree));
    }
    SparseIntMatrix::Column column;
    for (const auto& [index, coeff] : z.terms()) {
      if (pos[index] == std::numeric_limits<std::size_t>::max()) {
        throw OracleError(OracleError::Code::kNotCycles, "cycle leaves the subset at " +
                                                             table.face(table.id(degree, index)).text());
      }
      column.emplace_back(pos[index], coeff);
    }
    combined.append_column(std::move(column));
  }
  const SNFResult all = smith_normal_form(combined);
  v.combined_rank = all.rank();
  const std::size_t rank_out = smith_normal_form(restricted_boundary(complex, members, degree, true)).rank();
  v.cycle_rank = subset_count(table, members, degree) - rank_out;
  v.independent = v.combined_rank - v.boundary_rank == v.count;
  // Cycles form a saturated sublattice; the span equals it exactly when
  // the ranks agree and every invariant factor is 1.
  v.generating = v.combined_rank == v.cycle_rank && all.torsion().empty();
  return v;
}

}  // namespace halfcube
