#include <gtest/gtest.h>

#include <random>

#include "halfcube/chain_complex.hpp"
#include "halfcube/face_table.hpp"
#include "halfcube/snf.hpp"
#include "oracles.hpp"

using namespace halfcube;

namespace {

std::vector<long long> factors(const SNFResult& r) {
  std::vector<long long> out;
  for (const BigInt& d : r.invariant_factors) out.push_back(static_cast<long long>(d));
  return out;
}

std::vector<std::vector<oracle::Int>> to_oracle(const std::vector<std::vector<long long>>& m) {
  std::vector<std::vector<oracle::Int>> out;
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  const SNFResult r = smith_normal_form(SparseIntMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(factors(r), (std::vector<long long>{1, 1, 1}));
  EXPECT_TRUE(r.torsion().empty());
}

TEST(SmithNormalForm, Zero) {
  const SNFResult r = smith_normal_form(SparseIntMatrix(4, 3));
  EXPECT_EQ(r.rank(), 0u);
  EXPECT_EQ(r.rows, 4u);
  EXPECT_EQ(r.cols, 3u);
}

TEST(SmithNormalForm, KnownTorsion) {
  // Z/2 x Z/6 presentation
  const SNFResult r = smith_normal_form(SparseIntMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  EXPECT_EQ(factors(r), (std::vector<long long>{2, 6, 12}));
  EXPECT_TRUE(r.divisibility_chain_holds());
  const SNFResult s = smith_normal_form(SparseIntMatrix::from_dense({{2, 0}, {0, 3}}));
  EXPECT_EQ(factors(s), (std::vector<long long>{1, 6}));
}

TEST(SmithNormalForm, AgreesWithDeterminantalDivisors) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> shape(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = shape(rng);
    const int cols = shape(rng);
    std::vector<std::vector<long long>> m(static_cast<std::size_t>(rows), std::vector<long long>(static_cast<std::size_t>(cols)));
    for (auto& row : m) {
      for (auto& x : row) x = entry(rng) * (trial % 3 == 0 ? 2 : 1);
    }
    const SNFResult r = smith_normal_form(SparseIntMatrix::from_dense(m));
    const auto expected = oracle::invariant_factors_by_minors(to_oracle(m));
    ASSERT_EQ(r.invariant_factors.size(), expected.size()) << "trial " << trial;
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(oracle::Int(r.invariant_factors[i]), expected[i]);
    EXPECT_TRUE(r.divisibility_chain_holds());
  }
}

// Rank of the augmented edge boundary of the four-dimensional half cube, by
// the oracle and by an independent fraction-free elimination.
TEST(SmithNormalForm, EdgeBoundaryRankAtFour) {
  const FaceTable table = enumerate_faces(4);
  const ChainComplex complex(table);
  const std::vector<bool> all(table.size(), true);
  const SparseIntMatrix m = restricted_boundary(complex, all, 1, true);
  EXPECT_EQ(m.rows(), 8u);
  EXPECT_EQ(m.cols(), 24u);
  const SNFResult r = smith_normal_form(m);
  std::vector<std::vector<oracle::Int>> dense(m.rows(), std::vector<oracle::Int>(m.cols(), 0));
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& [row, v] : m.column(c)) dense[row][c] = oracle::Int(v);
  }
  EXPECT_EQ(r.rank(), oracle::rank(dense));
  EXPECT_EQ(r.rank(), 7u);
  EXPECT_TRUE(r.torsion().empty());
}

TEST(Homology, FullComplexIsAcyclic) {
  for (int n = 4; n <= 5; ++n) {
    const FaceTable table = enumerate_faces(n);
    const ChainComplex complex(table);
    const HomologyReport report = homology(complex, std::vector<bool>(table.size(), true), true);
    EXPECT_TRUE(report.torsion_free());
    for (const HomologyEntry& e : report.degrees) {
      EXPECT_EQ(e.betti, 0u) << e.degree;
      EXPECT_EQ(e.betti + e.rank_out + e.rank_in, e.cells);
    }
  }
}

TEST(Homology, RankConsistency) {
  const FaceTable table = enumerate_faces(5);
  const ChainComplex complex(table);
  std::vector<bool> members(table.size(), true);
  for (FaceId id = 0; id < table.size(); ++id) {
    const FaceKind k = classify(table.face(id));
    if (k.shape == Shape::kHalfCube && k.dim >= 3) members[id] = false;
  }
  const HomologyReport report = homology(complex, members, true, "C_{5,3}");
  EXPECT_EQ(report.label, "C_{5,3}");
  for (const HomologyEntry& e : report.degrees) {
    EXPECT_EQ(e.betti, e.cells - e.rank_out - e.rank_in) << e.degree;
    EXPECT_EQ(e.betti, e.degree == 2 ? 31u : 0u);
    EXPECT_TRUE(e.torsion.empty());
  }
  const HomologyEntry single = homology_in_degree(complex, members, 2, true);
  EXPECT_EQ(single.betti, 31u);
}

TEST(Homology, UnreducedCountsComponents) {
  const FaceTable table = enumerate_faces(4);
  const ChainComplex complex(table);
  std::vector<bool> members(table.size(), false);
  for (int d = -1; d <= 0; ++d) {
    for (std::size_t i = 0; i < table.count(d); ++i) members[table.id(d, i)] = true;
  }
  EXPECT_EQ(homology(complex, members, false).betti(0), 8u);
  EXPECT_EQ(homology(complex, members, true).betti(0), 7u);
}

TEST(Homology, RejectsSubsetNotClosedUnderFacets) {
  const FaceTable table = enumerate_faces(4);
  const ChainComplex complex(table);
  std::vector<bool> members(table.size(), true);
  members[table.id(0, 0)] = false;
  try {
    homology(complex, members, true);
    FAIL() << "expected an error";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), OracleError::Code::kNotClosed);
  }
}

TEST(ClassIndependence, BoundaryIsZeroClass) {
  const FaceTable table = enumerate_faces(4);
  const ChainComplex complex(table);
  const std::vector<bool> all(table.size(), true);
  const ChainVector b = complex.boundary_of(table.id(3, 0));
  const IndependenceVerdict v = class_independence({b}, complex, all);
  EXPECT_FALSE(v.independent);
  EXPECT_FALSE(v.basis());
}

TEST(ClassIndependence, RejectsNonCycles) {
  const FaceTable table = enumerate_faces(4);
  const ChainComplex complex(table);
  const std::vector<bool> all(table.size(), true);
  ChainVector c(1);
  c.add(0, 1);
  try {
    class_independence({c}, complex, all);
    FAIL() << "expected an error";
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), OracleError::Code::kNotCycles);
  }
}

// In the boundary sphere of the four-dimensional half cube the boundary of the
// top cell generates the top homology, while twice it does not.
TEST(ClassIndependence, DetectsIndexTwoSublattice) {
  const FaceTable table = enumerate_faces(4);
  const ChainComplex complex(table);
  std::vector<bool> sphere(table.size(), true);
  sphere[table.id(4, 0)] = false;
  const ChainVector top = complex.boundary_of(table.id(4, 0));
  EXPECT_TRUE(class_independence({top}, complex, sphere).basis());
  ChainVector twice(3);
  twice.add_scaled(top, 2);
  const IndependenceVerdict v = class_independence({twice}, complex, sphere);
  EXPECT_TRUE(v.independent);
  EXPECT_FALSE(v.generating);
}
