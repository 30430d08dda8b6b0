#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "halfcube/chain_complex.hpp"
#include "halfcube/face_table.hpp"
#include "halfcube/morse.hpp"
#include "oracles.hpp"

using namespace halfcube;

namespace {

struct Fixture {
  explicit Fixture(int n) : table(enumerate_faces(n)), lattice(table), complex(table) {}
  FaceTable table;
  FaceLattice lattice;
  ChainComplex complex;
};

void expect_pair(const std::string& a, int rule_a, const std::string& b, int rule_b) {
  const int n = static_cast<int>(a.size());
  const RuleMatch ma = match_face(FaceSeq::raw(a), n);
  EXPECT_EQ(ma.partner.text(), b);
  EXPECT_EQ(ma.rule, rule_a);
  const RuleMatch mb = match_face(FaceSeq::raw(b), n);
  EXPECT_EQ(mb.partner.text(), a);
  EXPECT_EQ(mb.rule, rule_b);
}

int companion(int rule) {
  if (rule == 11) return 11;
  return rule % 2 == 1 ? rule + 1 : rule - 1;
}

}  // namespace

TEST(MatchFace, WorkedPairs) {
  expect_pair("0**1*10", 1, "0**1**0", 2);
  expect_pair("0O1I10O", 3, "0O1II0O", 4);
  expect_pair("0I1I10I", 5, "0*1*10*", 6);
  expect_pair("01I01O0", 7, "01I0IO0", 8);
  expect_pair("1110010", 9, "11I00O0", 10);
  const RuleMatch e = match_face(FaceSeq::empty(), 7);
  EXPECT_EQ(e.partner.text(), "0000000");
  EXPECT_EQ(e.rule, 11);
  const RuleMatch z = match_face(FaceSeq::raw("0000000"), 7);
  EXPECT_TRUE(z.partner.is_empty());
  EXPECT_EQ(z.rule, 11);
}

TEST(RuleApplicability, WorkedFaces) {
  EXPECT_EQ(rule_applicability(FaceSeq::raw("0000000")), std::vector<int>{11});
  EXPECT_EQ(rule_applicability(FaceSeq::raw("0*1*10*")), std::vector<int>{6});
  EXPECT_EQ(rule_applicability(FaceSeq::empty()), std::vector<int>{11});
}

TEST(RuleApplicability, ExactlyOneRulePerFace) {
  for (int n = 4; n <= 6; ++n) {
    const FaceTable table = enumerate_faces(n);
    for (FaceId id = 0; id < table.size(); ++id) {
      const FaceSeq& f = table.face(id);
      const std::vector<int> rules = rule_applicability(f);
      ASSERT_EQ(rules.size(), 1u) << f.text();
      EXPECT_EQ(rules.front(), match_face(f, n).rule) << f.text();
    }
  }
}

TEST(MatchFace, RulesAreMutuallyInverse) {
  for (int n = 4; n <= 6; ++n) {
    const FaceTable table = enumerate_faces(n);
    for (FaceId id = 0; id < table.size(); ++id) {
      const FaceSeq& f = table.face(id);
      const RuleMatch m = match_face(f, n);
      ASSERT_TRUE(table.find(m.partner).has_value()) << f.text() << " -> " << m.partner.text();
      const RuleMatch back = match_face(m.partner, n);
      EXPECT_EQ(back.partner, f) << f.text();
      EXPECT_EQ(back.rule, companion(m.rule)) << f.text();
      EXPECT_NE(m.partner, f);
    }
  }
}

TEST(BuildMatching, CompleteAtFour) {
  const Fixture fx(4);
  const MorseMatching m = build_matching(fx.table, fx.lattice);
  std::size_t pairs = 0;
  for (FaceId id = 0; id < fx.table.size(); ++id) {
    ASSERT_TRUE(m.is_paired(id));
    EXPECT_EQ(m.partner(m.partner(id)), id);
    if (id < m.partner(id)) ++pairs;
  }
  EXPECT_EQ(fx.table.size(), 82u);
  EXPECT_EQ(pairs, 41u);
  EXPECT_FALSE(check_matching(m, fx.table, fx.lattice).has_value());
}

TEST(BuildMatching, PairsAreFacetIncidences) {
  for (int n = 5; n <= 6; ++n) {
    const Fixture fx(n);
    const MorseMatching m = build_matching(fx.table, fx.lattice);
    const auto counts = morse_counts(m, fx.table);
    for (std::size_t c : counts) EXPECT_EQ(c, 0u);
    for (FaceId id = 0; id < fx.table.size(); ++id) {
      const FaceId p = m.partner(id);
      const FaceId small = fx.table.dim_of(id) < fx.table.dim_of(p) ? id : p;
      const FaceId big = small == id ? p : id;
      EXPECT_EQ(fx.table.dim_of(big), fx.table.dim_of(small) + 1);
      EXPECT_TRUE(fx.lattice.is_facet(small, big));
      EXPECT_NE(fx.complex.incidence(fx.table.dim_of(big), fx.table.local_index(big), fx.table.local_index(small)), 0);
    }
  }
}

TEST(MorseCounts, EmptyMatchingCountsEveryFace) {
  const Fixture fx(4);
  const MorseMatching none(std::vector<FaceId>(fx.table.size(), MorseMatching::kUnpaired),
                           std::vector<std::uint8_t>(fx.table.size(), 0));
  const auto counts = morse_counts(none, fx.table);
  for (int d = -1; d <= 4; ++d) EXPECT_EQ(counts[static_cast<std::size_t>(d + 1)], fx.table.count(d));
  const auto v = check_matching(none, fx.table, fx.lattice, true);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->code, MatchingError::Code::kUnpaired);
  EXPECT_FALSE(check_matching(none, fx.table, fx.lattice, false).has_value());
}

TEST(VerifyAcyclic, NoCyclesUpToSix) {
  for (int n = 4; n <= 6; ++n) {
    const Fixture fx(n);
    const MorseMatching m = build_matching(fx.table, fx.lattice);
    const AcyclicityReport report = verify_acyclic(m, fx.table, fx.lattice);
    EXPECT_TRUE(report.acyclic()) << n;
    EXPECT_EQ(report.n, n);
    EXPECT_EQ(report.layers.size(), static_cast<std::size_t>(n + 1));
    // every cover relation is an edge of exactly one layer
    std::size_t covers = 0;
    for (FaceId id = 0; id < fx.table.size(); ++id) covers += fx.lattice.facets(id).size();
    std::size_t edges = 0;
    for (const auto& layer : report.layers) edges += layer.edges;
    EXPECT_EQ(edges, covers);
  }
}

// Swapping the partners of two vertices matched by rule 9 breaks either the
// matching invariants or acyclicity.
TEST(VerifyAcyclic, FaultInjectionIsDetected) {
  const Fixture fx(4);
  const MorseMatching good = build_matching(fx.table, fx.lattice);
  std::vector<FaceId> rule9;
  for (FaceId id = 0; id < fx.table.size(); ++id) {
    if (good.rule(id) == 9) rule9.push_back(id);
  }
  ASSERT_GE(rule9.size(), 2u);
  std::size_t detected = 0;
  std::size_t trials = 0;
  for (std::size_t a = 0; a < rule9.size(); ++a) {
    for (std::size_t b = a + 1; b < rule9.size(); ++b) {
      MorseMatching bad = good;
      const FaceId va = rule9[a];
      const FaceId vb = rule9[b];
      const FaceId ea = good.partner(va);
      const FaceId eb = good.partner(vb);
      bad.set_pair(va, eb, 9, 10);
      bad.set_pair(vb, ea, 9, 10);
      ++trials;
      const bool invariant_broken = check_matching(bad, fx.table, fx.lattice).has_value();
      const bool cyclic = !verify_acyclic(bad, fx.table, fx.lattice).acyclic();
      if (invariant_broken || cyclic) ++detected;
    }
  }
  EXPECT_EQ(detected, trials);
}

// Matching each vertex of a triangle with the next side around it is a
// valid partial matching whose vertex layer has a directed 3-cycle.
TEST(VerifyAcyclic, ReportsACycle) {
  const Fixture fx(4);
  const FaceId triangle = fx.table.id(2, 0);
  const auto sides = fx.lattice.facets(triangle);
  ASSERT_EQ(sides.size(), 3u);
  MorseMatching m(std::vector<FaceId>(fx.table.size(), MorseMatching::kUnpaired),
                  std::vector<std::uint8_t>(fx.table.size(), 0));
  std::vector<FaceId> corners;
  for (const FaceId e : sides) {
    for (const FaceId v : fx.lattice.facets(e)) corners.push_back(v);
  }
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  ASSERT_EQ(corners.size(), 3u);
  std::vector<FaceId> used;
  for (std::size_t i = 0; i < 3; ++i) {
    const FaceId a = corners[i];
    const FaceId b = corners[(i + 1) % 3];
    for (const FaceId e : sides) {
      if (fx.lattice.is_facet(a, e) && fx.lattice.is_facet(b, e)) {
        m.set_pair(a, e, 9, 10);
        used.push_back(a);
      }
    }
  }
  ASSERT_EQ(used.size(), 3u);
  EXPECT_FALSE(check_matching(m, fx.table, fx.lattice, false).has_value());
  const AcyclicityReport report = verify_acyclic(m, fx.table, fx.lattice);
  EXPECT_FALSE(report.acyclic());
  const LayerReport& layer = report.layers[1];
  EXPECT_EQ(layer.p, 0);
  ASSERT_TRUE(layer.cycle.has_value());
  EXPECT_EQ(layer.cycle->size(), 7u);
  EXPECT_EQ(layer.cycle->front(), layer.cycle->back());
}

// Along a V-path through vertices, each step v -> partner edge -> other
// endpoint w lowers the total, so no closed path can exist.
TEST(Statistics, VertexStepsLowerTheTotal) {
  const Fixture fx(5);
  const MorseMatching m = build_matching(fx.table, fx.lattice);
  for (std::size_t i = 0; i < fx.table.count(0); ++i) {
    const FaceId v = fx.table.id(0, i);
    if (m.rule(v) != 9) continue;
    const FaceId e = m.partner(v);
    for (const FaceId w : fx.lattice.facets(e)) {
      if (w == v) continue;
      EXPECT_LT(total_and_u(fx.table.face(w)).total, total_and_u(fx.table.face(v)).total);
    }
  }
}

// Simplex-type pairs by rules (3)/(4) and (7)/(8) keep u fixed.
TEST(Statistics, SimplexPairsPreserveU) {
  const Fixture fx(5);
  const MorseMatching m = build_matching(fx.table, fx.lattice);
  for (FaceId id = 0; id < fx.table.size(); ++id) {
    const int r = m.rule(id);
    if (r != 3 && r != 4 && r != 7 && r != 8) continue;
    EXPECT_EQ(total_and_u(fx.table.face(id)).u, total_and_u(fx.table.face(m.partner(id))).u)
        << fx.table.face(id).text();
  }
}

TEST(MorseBoundary, LevelZeroAtFour) {
  const Fixture fx(4);
  const MorseMatching m = build_matching(fx.table, fx.lattice);
  const MorseBoundary mb = morse_boundary(m, fx.complex, fx.lattice, 0);
  EXPECT_EQ(mb.size(), 7u);
  EXPECT_EQ(mb.e_cells().size(), mb.d_cells().size());
  EXPECT_TRUE(mb.is_upper_triangular());
  for (std::size_t i = 0; i < mb.size(); ++i) EXPECT_EQ(std::abs(mb.entry(i, i)), 1);
}

TEST(MorseBoundary, TriangularWithUnitDeterminant) {
  for (int n = 4; n <= 6; ++n) {
    const Fixture fx(n);
    const MorseMatching m = build_matching(fx.table, fx.lattice);
    for (int k = 0; k < n; ++k) {
      const MorseBoundary mb = morse_boundary(m, fx.complex, fx.lattice, k);
      EXPECT_TRUE(mb.is_upper_triangular()) << n << "," << k;
      EXPECT_EQ(std::abs(mb.diagonal_product()), 1);
      EXPECT_EQ(mb.e_cells().size(), m.upward(fx.table, k).size());
      EXPECT_EQ(mb.d_cells().size(), m.downward(fx.table, k).size());
      for (std::size_t i = 0; i < mb.size(); ++i) EXPECT_EQ(m.partner(mb.e_cells()[i]), mb.d_cells()[i]);
      // the order extends the precedence relation
      for (const auto& [a, b] : mb.precedence()) EXPECT_LT(a, b);
    }
  }
}

TEST(MorseBoundary, DeterminantByIndependentElimination) {
  const Fixture fx(4);
  const MorseMatching m = build_matching(fx.table, fx.lattice);
  for (int k = 0; k < 4; ++k) {
    const MorseBoundary mb = morse_boundary(m, fx.complex, fx.lattice, k);
    std::vector<std::vector<oracle::Int>> dense(mb.size(), std::vector<oracle::Int>(mb.size(), 0));
    for (std::size_t c = 0; c < mb.size(); ++c) {
      for (const auto& e : mb.column(c)) dense[e.row][c] = e.value;
    }
    EXPECT_EQ(abs(oracle::det(dense)), 1) << k;
  }
}

TEST(MorseBoundary, RejectsBadLevel) {
  const Fixture fx(4);
  const MorseMatching m = build_matching(fx.table, fx.lattice);
  EXPECT_THROW(morse_boundary(m, fx.complex, fx.lattice, 4), std::exception);
  EXPECT_THROW(morse_boundary(m, fx.complex, fx.lattice, -1), std::exception);
}

TEST(SolveCycle, RandomBoundaries) {
  std::mt19937 rng(20261017);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int n = 4; n <= 5; ++n) {
    const Fixture fx(n);
    const MorseMatching m = build_matching(fx.table, fx.lattice);
    for (int k = 0; k < n; ++k) {
      const MorseBoundary mb = morse_boundary(m, fx.complex, fx.lattice, k);
      const std::size_t cells = fx.table.count(k + 1);
      std::uniform_int_distribution<std::size_t> pick(0, cells - 1);
      for (int trial = 0; trial < 100; ++trial) {
        ChainVector x(k + 1);
        for (int t = 0; t < 4; ++t) x.add(pick(rng), coeff(rng));
        const ChainVector y = fx.complex.apply_boundary(x);
        const ChainVector f = solve_cycle(y, m, fx.complex, mb);
        EXPECT_EQ(fx.complex.apply_boundary(f), y);
        for (const auto& [index, c] : f.terms()) {
          const FaceId id = fx.table.id(k + 1, index);
          EXPECT_LT(m.partner(id), id);  // supported on downward-matched cells
          EXPECT_EQ(fx.table.dim_of(m.partner(id)), k);
        }
      }
      EXPECT_TRUE(solve_cycle(ChainVector(k), m, fx.complex, mb).is_zero());
    }
  }
}

TEST(SolveCycle, RejectsNonCycle) {
  const Fixture fx(4);
  const MorseMatching m = build_matching(fx.table, fx.lattice);
  const MorseBoundary mb = morse_boundary(m, fx.complex, fx.lattice, 1);
  ChainVector y(1);
  y.add(0, 1);
  try {
    solve_cycle(y, m, fx.complex, mb);
    FAIL() << "expected an error";
  } catch (const MatchingError& e) {
    EXPECT_EQ(e.code(), MatchingError::Code::kNotACycle);
  }
}

// With no unpaired k-cells the boundaries of the downward-matched (k+1)-cells
// are independent and span the k-cycles; the projection of the cycles onto
// the upward-matched coordinates is injective.
TEST(CycleBasis, BoundariesOfDownwardCellsSpanCycles) {
  for (int n = 4; n <= 5; ++n) {
    const Fixture fx(n);
    const MorseMatching m = build_matching(fx.table, fx.lattice);
    for (int k = 0; k < n; ++k) {
      const std::size_t rows = fx.table.count(k);
      std::vector<std::vector<oracle::Int>> down;  // rows = chains
      for (const FaceId d : m.downward(fx.table, k)) {
        std::vector<oracle::Int> v(rows, 0);
        const ChainVector b = fx.complex.boundary_of(d);
        for (const auto& [i, c] : b.terms()) v[i] = oracle::Int(c);
        down.push_back(std::move(v));
      }
      // rank of d_k^T: cycle space dimension is rows - rank(d_k)
      std::vector<std::vector<oracle::Int>> dk(fx.table.count(k), std::vector<oracle::Int>(fx.table.count(k - 1), 0));
      const BoundaryMatrix& b = fx.complex.boundary(k);
      for (std::size_t c = 0; c < b.cols(); ++c) {
        for (const auto& e : b.column(c)) dk[c][e.row] = e.value;
      }
      const std::size_t cycle_dim = rows - oracle::rank(dk);
      EXPECT_EQ(oracle::rank(down), down.size()) << n << "," << k;
      EXPECT_EQ(down.size(), cycle_dim) << n << "," << k;

      // injective projection: restricted to e-coordinates the chains stay independent
      const auto up = m.upward(fx.table, k);
      std::vector<std::vector<oracle::Int>> projected;
      for (const auto& v : down) {
        std::vector<oracle::Int> p;
        for (const FaceId e : up) p.push_back(v[fx.table.local_index(e)]);
        projected.push_back(std::move(p));
      }
      EXPECT_EQ(oracle::rank(projected), down.size());
    }
  }
}
