#include "halfcube/morse.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_map>

namespace halfcube {

namespace {

int count_ones(const FaceSeq& f) {
  int ones = 0;
  for (int i = 0; i < f.size(); ++i) ones += is_one(f[i]) ? 1 : 0;
  return ones;
}

FaceSeq zeros_vertex(int n) { return FaceSeq::from_symbols(std::vector<Symbol>(static_cast<std::size_t>(n), Symbol::kPlain0)); }

bool one_right_of_mask(const FaceSeq& f, const std::vector<int>& mask) {
  return rightmost_one(f) > mask.back();
}

bool rightmost_two_mask_are_und1(const FaceSeq& f, const std::vector<int>& mask) {
  const auto m = mask.size();
  return f[mask[m - 1]] == Symbol::kUnd1 && f[mask[m - 2]] == Symbol::kUnd1;
}

}  // namespace

RuleMatch match_face(const FaceSeq& f, int n) {
  const FaceKind kind = classify(f);
  FaceSeq y = f;
  const int r = rightmost_one(f);
  switch (kind.shape) {
    case Shape::kEmpty:
      return {zeros_vertex(n), 11};

    case Shape::kVertex: {
      if (r < 0) return {FaceSeq::empty(), 11};
      int second = r - 1;
      while (second >= 0 && !is_one(f[second])) --second;
      y.set(r, Symbol::kUnd0);
      y.set(second, Symbol::kUnd1);
      return {y, 9};
    }

    case Shape::kEdge:
      if (f[r] == Symbol::kPlain1) {
        y.set(r, Symbol::kUnd1);
        return {y, 7};
      }
      for (const int i : mask_of(f)) y.set(i, Symbol::kPlain1);
      return {y, 10};

    case Shape::kSimplex: {
      if (f[r] == Symbol::kPlain1) {
        y.set(r, Symbol::kUnd1);
        return {y, 3};
      }
      if (kind.dim >= 3) {
        y.set(r, Symbol::kPlain1);
        return {y, 4};
      }
      const std::vector<int> mask = mask_of(f);
      if (rightmost_two_mask_are_und1(f, mask)) {
        for (const int i : mask) y.set(i, Symbol::kStar);
        return {y, 5};
      }
      y.set(r, Symbol::kPlain1);
      return {canonical_edge(y), 8};
    }

    case Shape::kHalfCube: {
      const std::vector<int> mask = mask_of(f);
      if (one_right_of_mask(f, mask)) {
        y.set(r, Symbol::kStar);
        return {y, 1};
      }
      if (kind.dim >= 4) {
        y.set(mask.back(), Symbol::kPlain1);
        return {y, 2};
      }
      y.set(mask[1], Symbol::kUnd1);
      y.set(mask[2], Symbol::kUnd1);
      // Two underlined 1s so far; the leftmost mask entry fixes the parity to odd.
      y.set(mask[0], count_ones(y) % 2 == 1 ? Symbol::kUnd0 : Symbol::kUnd1);
      return {y, 6};
    }
  }
  throw std::logic_error("unreachable face shape");
}

std::vector<int> rule_applicability(const FaceSeq& f) {
  const FaceKind kind = classify(f);
  const int r = rightmost_one(f);
  const bool r_plain = r >= 0 && f[r] == Symbol::kPlain1;
  const bool r_underlined = r >= 0 && f[r] == Symbol::kUnd1;
  const std::vector<int> mask = mask_of(f);
  const bool halfcube = kind.shape == Shape::kHalfCube;
  const bool simplex = kind.shape == Shape::kSimplex;
  const bool triangle = simplex && kind.dim == 2;

  bool plain_one_right_of_mask = false;
  if (halfcube) {
    for (int i = mask.back() + 1; i < f.size(); ++i) plain_one_right_of_mask |= f[i] == Symbol::kPlain1;
  }
  std::string mask_pattern;
  for (const int i : mask) mask_pattern.push_back(to_char(f[i]));
  const int ones = count_ones(f);

  std::vector<int> rules;
  auto rule_if = [&](int rule, bool cond) {
    if (cond) rules.push_back(rule);
  };
  rule_if(1, halfcube && kind.dim >= 3 && plain_one_right_of_mask);
  rule_if(2, halfcube && kind.dim >= 4 && !plain_one_right_of_mask);
  rule_if(3, simplex && kind.dim >= 2 && r_plain);
  rule_if(4, simplex && kind.dim >= 3 && r_underlined);
  rule_if(5, triangle && r_underlined && (mask_pattern == "OII" || mask_pattern == "III"));
  rule_if(6, halfcube && kind.dim == 3 && !plain_one_right_of_mask);
  rule_if(7, kind.shape == Shape::kEdge && r_plain);
  rule_if(8, triangle && r_underlined && mask_pattern.substr(1) != "II");
  rule_if(9, kind.shape == Shape::kVertex && ones >= 2);
  rule_if(10, kind.shape == Shape::kEdge && r_underlined);
  rule_if(11, kind.shape == Shape::kEmpty || (kind.shape == Shape::kVertex && ones == 0));
  return rules;
}

std::string_view to_string(MatchingError::Code code) {
  switch (code) {
    case MatchingError::Code::kInvolutionBroken: return "InvolutionBroken";
    case MatchingError::Code::kNotCodimOne: return "NotCodimOne";
    case MatchingError::Code::kUnpaired: return "Unpaired";
    case MatchingError::Code::kCyclicPrec: return "CyclicPrec";
    case MatchingError::Code::kNotTriangular: return "NotTriangular";
    case MatchingError::Code::kNotACycle: return "NotACycle";
    case MatchingError::Code::kResidualNonzero: return "ResidualNonzero";
    case MatchingError::Code::kUnpairedCells: return "UnpairedCells";
  }
  return "?";
}

void MorseMatching::set_pair(FaceId a, FaceId b, int rule_a, int rule_b) {
  partner_[a] = b;
  partner_[b] = a;
  rule_[a] = static_cast<std::uint8_t>(rule_a);
  rule_[b] = static_cast<std::uint8_t>(rule_b);
}

void MorseMatching::unpair(FaceId id) {
  partner_[id] = kUnpaired;
  rule_[id] = 0;
}

MorseMatching MorseMatching::restricted_to(const std::vector<bool>& members) const {
  MorseMatching out = *this;
  for (FaceId id = 0; id < size(); ++id) {
    if (is_paired(id) && (!members[id] || !members[partner_[id]])) out.unpair(id);
  }
  return out;
}

std::vector<FaceId> MorseMatching::upward(const FaceTable& table, int k) const {
  std::vector<FaceId> out;
  for (std::size_t i = 0; i < table.count(k); ++i) {
    const FaceId id = table.id(k, i);
    if (is_paired(id) && table.dim_of(partner_[id]) == k + 1) out.push_back(id);
  }
  return out;
}

std::vector<FaceId> MorseMatching::downward(const FaceTable& table, int k) const {
  std::vector<FaceId> out;
  for (std::size_t i = 0; i < table.count(k + 1); ++i) {
    const FaceId id = table.id(k + 1, i);
    if (is_paired(id) && table.dim_of(partner_[id]) == k) out.push_back(id);
  }
  return out;
}

std::optional<MatchingViolation> check_matching(const MorseMatching& m, const FaceTable& table,
                                                const FaceLattice& lattice, bool require_complete) {
  using Code = MatchingError::Code;
  for (FaceId id = 0; id < table.size(); ++id) {
    const std::string name = table.face(id).text();
    if (!m.is_paired(id)) {
      if (require_complete) return MatchingViolation{Code::kUnpaired, id, name + " is unpaired"};
      continue;
    }
    const FaceId p = m.partner(id);
    if (p >= table.size() || p == id || !m.is_paired(p) || m.partner(p) != id) {
      return MatchingViolation{Code::kInvolutionBroken, id, name + " is not the partner of its partner"};
    }
    const int d = table.dim_of(id);
    const int dp = table.dim_of(p);
    const bool incident = (dp == d + 1 && lattice.is_facet(id, p)) || (dp == d - 1 && lattice.is_facet(p, id));
    if (!incident) {
      return MatchingViolation{Code::kNotCodimOne, id,
                               name + " and " + table.face(p).text() + " are not a codimension-1 pair"};
    }
  }
  return std::nullopt;
}

MorseMatching build_matching(const FaceTable& table, const FaceLattice& lattice) {
  std::vector<FaceId> partner(table.size(), MorseMatching::kUnpaired);
  std::vector<std::uint8_t> rule(table.size(), 0);
  for (FaceId id = 0; id < table.size(); ++id) {
    const RuleMatch match = match_face(table.face(id), table.n());
    const auto p = table.find(match.partner);
    if (!p) {
      throw MatchingError(MatchingError::Code::kUnpaired, table.face(id).text() + " maps to " +
                                                              match.partner.text() + ", which is not a face");
    }
    partner[id] = *p;
    rule[id] = static_cast<std::uint8_t>(match.rule);
  }
  MorseMatching m(std::move(partner), std::move(rule));
  if (const auto v = check_matching(m, table, lattice, true)) throw MatchingError(v->code, v->message);
  return m;
}

bool AcyclicityReport::acyclic() const {
  return std::all_of(layers.begin(), layers.end(), [](const LayerReport& l) { return !l.cycle; });
}

AcyclicityReport verify_acyclic(const MorseMatching& m, const FaceTable& table, const FaceLattice& lattice,
                                const std::vector<bool>& members) {
  auto in = [&](FaceId id) { return members.empty() || members[id]; };
  AcyclicityReport report;
  report.n = table.n();
  for (int p = -1; p < table.n(); ++p) {
    // Layer nodes are the FaceIds [lo, hi): p-cells followed by (p+1)-cells.
    const FaceId lo = table.first_id(p);
    const FaceId hi = table.first_id(p + 2);
    const std::size_t count = hi - lo;
    std::vector<std::vector<std::uint32_t>> out(count);
    LayerReport layer;
    layer.p = p;
    for (FaceId id = lo; id < hi; ++id) layer.nodes += in(id) ? 1 : 0;
    for (FaceId b = table.first_id(p + 1); b < hi; ++b) {
      if (!in(b)) continue;
      for (const FaceId a : lattice.facets(b)) {
        if (!in(a)) continue;
        if (m.is_paired(a) && m.partner(a) == b) {
          out[a - lo].push_back(b - lo);
        } else {
          out[b - lo].push_back(a - lo);
        }
        ++layer.edges;
      }
    }

    // Iterative DFS; a gray successor closes a cycle.
    enum : std::uint8_t { kWhite, kGray, kBlack };
    std::vector<std::uint8_t> color(count, kWhite);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t start = 0; start < count && !layer.cycle; ++start) {
      if (color[start] != kWhite) continue;
      stack.assign(1, {start, 0});
      color[start] = kGray;
      while (!stack.empty() && !layer.cycle) {
        auto& [node, next] = stack.back();
        if (next == out[node].size()) {
          color[node] = kBlack;
          stack.pop_back();
          continue;
        }
        const std::uint32_t succ = out[node][next++];
        if (color[succ] == kWhite) {
          color[succ] = kGray;
          stack.emplace_back(succ, 0);
        } else if (color[succ] == kGray) {
          std::vector<FaceSeq> cycle;
          auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& e) { return e.first == succ; });
          for (; it != stack.end(); ++it) cycle.push_back(table.face(lo + it->first));
          cycle.push_back(table.face(lo + succ));
          layer.cycle = std::move(cycle);
        }
      }
    }
    report.layers.push_back(std::move(layer));
  }
  return report;
}

std::vector<std::size_t> morse_counts(const MorseMatching& m, const FaceTable& table,
                                      const std::vector<bool>& members) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(table.n() + 2), 0);
  for (FaceId id = 0; id < table.size(); ++id) {
    if ((members.empty() || members[id]) && !m.is_paired(id)) ++counts[static_cast<std::size_t>(table.dim_of(id) + 1)];
  }
  return counts;
}

int MorseBoundary::entry(std::size_t row, std::size_t col) const {
  for (const Entry& e : columns_[col]) {
    if (e.row == row) return e.value;
  }
  return 0;
}

bool MorseBoundary::is_upper_triangular() const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    for (const Entry& e : columns_[i]) {
      if (e.row > i) return false;
    }
    const int diag = entry(i, i);
    if (diag != 1 && diag != -1) return false;
  }
  return true;
}

int MorseBoundary::diagonal_product() const {
  int product = 1;
  for (std::size_t i = 0; i < columns_.size(); ++i) product *= entry(i, i);
  return product;
}

MorseBoundary morse_boundary(const MorseMatching& m, const ChainComplex& complex, const FaceLattice& lattice, int k) {
  const FaceTable& table = complex.table();
  if (k < 0 || k >= table.n()) {
    throw ChainError(ChainError::Code::kBadPrecondition, "Morse boundary level must satisfy 0 <= k < n");
  }
  const std::vector<FaceId> e_cells = m.upward(table, k);
  const std::size_t count = e_cells.size();
  std::unordered_map<FaceId, std::size_t> slot;
  for (std::size_t i = 0; i < count; ++i) slot.emplace(e_cells[i], i);

  // e' precedes e when e' is a facet of e's partner.
  std::vector<std::vector<std::size_t>> succ(count);
  std::vector<std::size_t> indegree(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (const FaceId a : lattice.facets(m.partner(e_cells[i]))) {
      const auto it = slot.find(a);
      if (it == slot.end() || it->second == i) continue;
      succ[it->second].push_back(i);
      ++indegree[i];
    }
  }

  // FaceIds within a dimension follow the lexicographic order of the text.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < count; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(count);
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (const std::size_t j : succ[i]) {
      if (--indegree[j] == 0) ready.push(j);
    }
  }
  if (order.size() != count) {
    throw MatchingError(MatchingError::Code::kCyclicPrec,
                        "precedence relation at level " + std::to_string(k) + " has a cycle");
  }

  MorseBoundary mb;
  mb.level_ = k;
  std::vector<std::size_t> position(count);
  for (std::size_t pos = 0; pos < count; ++pos) {
    position[order[pos]] = pos;
    mb.e_cells_.push_back(e_cells[order[pos]]);
    mb.d_cells_.push_back(m.partner(e_cells[order[pos]]));
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (const std::size_t j : succ[i]) mb.precedence_.emplace_back(position[i], position[j]);
  }
  std::sort(mb.precedence_.begin(), mb.precedence_.end());

  const BoundaryMatrix& bd = complex.boundary(k + 1);
  const FaceId row_base = table.first_id(k);
  mb.columns_.resize(count);
  for (std::size_t col = 0; col < count; ++col) {
    for (const auto& e : bd.column(table.local_index(mb.d_cells_[col]))) {
      const auto it = slot.find(row_base + e.row);
      if (it == slot.end()) continue;
      mb.columns_[col].push_back({position[it->second], e.value});
    }
    std::sort(mb.columns_[col].begin(), mb.columns_[col].end(),
              [](const MorseBoundary::Entry& a, const MorseBoundary::Entry& b) { return a.row < b.row; });
  }
  if (!mb.is_upper_triangular()) {
    throw MatchingError(MatchingError::Code::kNotTriangular,
                        "Morse boundary at level " + std::to_string(k) + " is not unit triangular");
  }
  return mb;
}

ChainVector solve_cycle(const ChainVector& y, const MorseMatching& m, const ChainComplex& complex,
                        const MorseBoundary& mb) {
  const FaceTable& table = complex.table();
  const int k = mb.level();
  if (y.dim() != k) {
    throw ChainError(ChainError::Code::kDimensionMismatch, "cycle dimension does not match the Morse level");
  }
  if (!complex.apply_boundary(y).is_zero()) {
    throw MatchingError(MatchingError::Code::kNotACycle, "input chain is not a cycle");
  }
  for (std::size_t i = 0; i < table.count(k); ++i) {
    if (!m.is_paired(table.id(k, i))) {
      throw MatchingError(MatchingError::Code::kUnpairedCells,
                          "unpaired " + std::to_string(k) + "-cell " + table.face(table.id(k, i)).text());
    }
  }

  const std::size_t count = mb.size();
  std::vector<BigInt> residual(count);
  for (std::size_t pos = 0; pos < count; ++pos) residual[pos] = y.coefficient(table.local_index(mb.e_cells()[pos]));

  ChainVector f(k + 1);
  for (std::size_t i = count; i-- > 0;) {
    if (residual[i] == 0) continue;
    const BigInt x = residual[i] * mb.entry(i, i);  // diagonal is +-1
    for (const auto& e : mb.column(i)) residual[e.row] -= x * e.value;
    f.add(table.local_index(mb.d_cells()[i]), x);
  }
  if (complex.apply_boundary(f) != y) {
    throw MatchingError(MatchingError::Code::kResidualNonzero, "back substitution did not reproduce the cycle");
  }
  return f;
}

}  // namespace halfcube
