#include <gtest/gtest.h>

#include <sstream>

#include "halfcube/face_table.hpp"
#include "halfcube/io.hpp"
#include "json.hpp"

using namespace halfcube;

TEST(FaceLines, Format) {
  EXPECT_EQ(io::face_line(FaceSeq::raw("010**1*010")), R"({"seq":"010**1*010","dim":3,"kind":"halfcube"})");
  EXPECT_EQ(io::face_line(FaceSeq::empty()), R"({"seq":"EMPTY","dim":-1,"kind":"empty"})");
  EXPECT_EQ(io::face_line(FaceSeq::raw("I1O0100")), R"({"seq":"I1O0100","dim":1,"kind":"edge"})");
}

TEST(FaceLines, RoundTrip) {
  const FaceTable table = enumerate_faces(5);
  std::vector<FaceSeq> faces;
  for (FaceId id = 0; id < table.size(); ++id) faces.push_back(table.face(id));
  std::stringstream buffer;
  io::write_faces(buffer, faces);
  EXPECT_EQ(io::read_faces(buffer, 5), faces);
}

TEST(FaceLines, RejectsInconsistentLine) {
  std::stringstream buffer(R"({"seq":"0000","dim":1,"kind":"vertex"})");
  EXPECT_THROW(io::read_faces(buffer, 4), std::runtime_error);
}

TEST(BoundaryLines, RoundTrip) {
  const FaceTable table = enumerate_faces(5);
  const ChainComplex complex(table);
  for (int d = 0; d <= 5; ++d) {
    std::stringstream buffer;
    io::write_boundary(buffer, complex.boundary(d), 5);
    std::string header;
    std::getline(buffer, header);
    const auto h = nlohmann::json::parse(header);
    EXPECT_EQ(h["dim"], d);
    EXPECT_EQ(h["rows"], table.count(d - 1));
    EXPECT_EQ(h["cols"], table.count(d));
    EXPECT_EQ(h["n"], 5);
    buffer.seekg(0);
    EXPECT_EQ(io::read_boundary(buffer), complex.boundary(d));
  }
}

TEST(MatchingLines, Format) {
  const FaceTable table = enumerate_faces(4);
  const FaceLattice lattice(table);
  const MorseMatching m = build_matching(table, lattice);
  std::stringstream buffer;
  io::write_matching(buffer, m, table);
  std::string first;
  std::getline(buffer, first);
  EXPECT_EQ(first, R"({"face":"EMPTY","partner":"0000","rule":11})");
  std::size_t lines = 1;
  for (std::string line; std::getline(buffer, line);) ++lines;
  EXPECT_EQ(lines, table.size());
}

TEST(AcyclicityJson, Format) {
  AcyclicityReport r;
  r.n = 4;
  r.layers.push_back({-1, 9, 8, std::nullopt});
  r.layers.push_back({0, 3, 3, std::vector<FaceSeq>{FaceSeq::raw("0000"), FaceSeq::raw("IO00"), FaceSeq::raw("0000")}});
  EXPECT_EQ(io::acyclicity_json(r),
            R"({"n":4,"layers":[{"p":-1,"nodes":9,"edges":8,"cycle":null},)"
            R"({"p":0,"nodes":3,"edges":3,"cycle":["0000","IO00","0000"]}]})");
}

TEST(BasisLines, Format) {
  const FaceTable table = enumerate_faces(4);
  const FaceLattice lattice(table);
  const ChainComplex complex(table);
  const MorseMatching m = build_matching(table, lattice);
  const HomologyBasis basis = homology_basis(build_subcomplex(3, table, lattice, m), complex);
  std::stringstream buffer;
  io::write_basis(buffer, basis, table);
  std::size_t lines = 0;
  for (std::string line; std::getline(buffer, line); ++lines) {
    const auto j = nlohmann::ordered_json::parse(line);
    EXPECT_EQ(j.begin().key(), "bface");
    EXPECT_EQ(j["bface"], basis.faces[lines].text());
    EXPECT_EQ(j["chain"].size(), 4u);
    for (const auto& term : j["chain"]) {
      EXPECT_TRUE(term["coeff"] == 1 || term["coeff"] == -1);
      EXPECT_EQ(term.begin().key(), "face");
    }
  }
  EXPECT_EQ(lines, 7u);
}

TEST(HomologyJson, Format) {
  HomologyReport r;
  r.label = "C_{5,3}";
  r.degrees.push_back({1, 10, 3, 7, 0, {}});
  r.degrees.push_back({2, 80, 40, 9, 31, {}});
  EXPECT_EQ(io::homology_json(r), R"({"subset":"C_{5,3}","betti":{"2":31},"torsion":{}})");
  r.degrees.push_back({3, 5, 0, 3, 0, {BigInt(2)}});
  EXPECT_EQ(io::homology_json(r), R"({"subset":"C_{5,3}","betti":{"2":31},"torsion":{"3":[2]}})");
}
