#include "halfcube/io.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace halfcube::io {

using ordered_json = nlohmann::ordered_json;

namespace {

// Coefficients are emitted as JSON integers when they fit, as strings otherwise.
ordered_json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

}  // namespace

std::string face_line(const FaceSeq& f) {
  const FaceKind kind = classify(f);
  ordered_json j;
  j["seq"] = f.text();
  j["dim"] = kind.dim;
  j["kind"] = std::string(shape_name(kind.shape));
  return j.dump();
}

void write_faces(std::ostream& out, std::span<const FaceSeq> faces) {
  for (const FaceSeq& f : faces) out << face_line(f) << '\n';
}

std::vector<FaceSeq> read_faces(std::istream& in, int n) {
  std::vector<FaceSeq> faces;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    FaceSeq f = parse_seq(j.at("seq").get<std::string>(), n);
    const FaceKind kind = classify(f);
    if (j.at("dim").get<int>() != kind.dim || j.at("kind").get<std::string>() != shape_name(kind.shape)) {
      throw std::runtime_error("face line disagrees with its sequence: " + line);
    }
    faces.push_back(std::move(f));
  }
  return faces;
}

void write_boundary(std::ostream& out, const BoundaryMatrix& m, int n) {
  ordered_json header;
  header["dim"] = m.dim();
  header["rows"] = m.rows();
  header["cols"] = m.cols();
  header["n"] = n;
  out << header.dump() << '\n';
  for (std::size_t col = 0; col < m.cols(); ++col) {
    for (const auto& e : m.column(col)) {
      ordered_json t;
      t["row"] = e.row;
      t["col"] = col;
      t["val"] = static_cast<int>(e.value);
      out << t.dump() << '\n';
    }
  }
}

BoundaryMatrix read_boundary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("missing boundary header");
  const auto header = nlohmann::json::parse(line);
  const int dim = header.at("dim").get<int>();
  const auto rows = header.at("rows").get<std::size_t>();
  const auto cols = header.at("cols").get<std::size_t>();
  std::vector<std::vector<BoundaryMatrix::Entry>> columns(cols);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto t = nlohmann::json::parse(line);
    const auto row = t.at("row").get<std::uint32_t>();
    const auto col = t.at("col").get<std::size_t>();
    const int val = t.at("val").get<int>();
    if (row >= rows || col >= cols || (val != 1 && val != -1)) throw std::runtime_error("bad triplet: " + line);
    columns[col].push_back({row, static_cast<std::int8_t>(val)});
  }
  for (auto& c : columns) {
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  }
  return BoundaryMatrix(dim, rows, std::move(columns));
}

void write_matching(std::ostream& out, const MorseMatching& m, const FaceTable& table) {
  for (FaceId id = 0; id < table.size(); ++id) {
    ordered_json j;
    j["face"] = table.face(id).text();
    if (m.is_paired(id)) {
      j["partner"] = table.face(m.partner(id)).text();
      j["rule"] = m.rule(id);
    } else {
      j["partner"] = nullptr;
      j["rule"] = nullptr;
    }
    out << j.dump() << '\n';
  }
}

std::string acyclicity_json(const AcyclicityReport& report) {
  ordered_json j;
  j["n"] = report.n;
  j["layers"] = ordered_json::array();
  for (const LayerReport& layer : report.layers) {
    ordered_json l;
    l["p"] = layer.p;
    l["nodes"] = layer.nodes;
    l["edges"] = layer.edges;
    if (layer.cycle) {
      l["cycle"] = ordered_json::array();
      for (const FaceSeq& f : *layer.cycle) l["cycle"].push_back(f.text());
    } else {
      l["cycle"] = nullptr;
    }
    j["layers"].push_back(std::move(l));
  }
  return j.dump();
}

void write_basis(std::ostream& out, const HomologyBasis& basis, const FaceTable& table) {
  for (std::size_t i = 0; i < basis.faces.size(); ++i) {
    ordered_json j;
    j["bface"] = basis.faces[i].text();
    j["chain"] = ordered_json::array();
    for (const auto& [index, coeff] : basis.chains[i].terms()) {
      ordered_json term;
      term["face"] = table.face(table.id(basis.degree, index)).text();
      term["coeff"] = big_to_json(coeff);
      j["chain"].push_back(std::move(term));
    }
    out << j.dump() << '\n';
  }
}

std::string homology_json(const HomologyReport& report) {
  ordered_json j;
  j["subset"] = report.label;
  j["betti"] = ordered_json::object();
  j["torsion"] = ordered_json::object();
  for (const HomologyEntry& e : report.degrees) {
    if (e.betti != 0) j["betti"][std::to_string(e.degree)] = e.betti;
    if (!e.torsion.empty()) {
      ordered_json t = ordered_json::array();
      for (const BigInt& d : e.torsion) t.push_back(big_to_json(d));
      j["torsion"][std::to_string(e.degree)] = std::move(t);
    }
  }
  return j.dump();
}

}  // namespace halfcube::io
