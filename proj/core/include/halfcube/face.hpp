#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace halfcube {

/// One coordinate of a face sequence.
///
/// Digits follow the vertex convention: 0 is the coordinate +1, 1 is -1.
/// Underlined digits mark the mask of a simplex-shaped face, stars the mask
/// of a half-cube-shaped face.
enum class Symbol : std::uint8_t { kPlain0, kPlain1, kUnd0, kUnd1, kStar };

constexpr char to_char(Symbol s) {
  switch (s) {
    case Symbol::kPlain0: return '0';
    case Symbol::kPlain1: return '1';
    case Symbol::kUnd0: return 'O';
    case Symbol::kUnd1: return 'I';
    case Symbol::kStar: return '*';
  }
  return '?';
}

constexpr std::optional<Symbol> symbol_from_char(char c) {
  switch (c) {
    case '0': return Symbol::kPlain0;
    case '1': return Symbol::kPlain1;
    case 'O': return Symbol::kUnd0;
    case 'I': return Symbol::kUnd1;
    case '*': return Symbol::kStar;
    default: return std::nullopt;
  }
}

constexpr bool is_underlined(Symbol s) { return s == Symbol::kUnd0 || s == Symbol::kUnd1; }
constexpr bool is_one(Symbol s) { return s == Symbol::kPlain1 || s == Symbol::kUnd1; }

class FaceError : public std::runtime_error {
 public:
  enum class Code {
    kBadSymbol,
    kBadLength,
    kBadParity,
    kNonCanonicalEdge,
    kMixedMask,
    kTooFewStars,
    kSingleUnderline,
    kNotKType,
    kNTooSmall,
    kNTooLarge,
  };

  FaceError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

enum class Shape : std::uint8_t { kEmpty, kVertex, kEdge, kSimplex, kHalfCube };

/// Shape plus dimension. Triangles are `{kSimplex, 2}`.
struct FaceKind {
  Shape shape = Shape::kEmpty;
  int dim = -1;

  friend bool operator==(const FaceKind&, const FaceKind&) = default;
};

std::string_view shape_name(Shape shape);

/// A face of the half cube in sequence form, or the empty face.
///
/// The sequence is stored as its text form, so ordering and hashing are the
/// lexicographic order and string hash of the text. A default-constructed
/// FaceSeq is the empty face. Construction through `FaceSeq::raw` only checks
/// the alphabet; `parse_seq` enforces the full face invariants.
class FaceSeq {
 public:
  FaceSeq() = default;

  static FaceSeq empty() { return {}; }
  /// Alphabet check only. Accepts "EMPTY".
  static FaceSeq raw(std::string_view text);
  static FaceSeq from_symbols(const std::vector<Symbol>& symbols);

  bool is_empty() const { return text_.empty(); }
  /// Number of coordinates (0 for the empty face).
  int size() const { return static_cast<int>(text_.size()); }
  Symbol operator[](int i) const { return *symbol_from_char(text_[static_cast<std::size_t>(i)]); }
  void set(int i, Symbol s) { text_[static_cast<std::size_t>(i)] = to_char(s); }

  /// Canonical text; "EMPTY" for the empty face.
  std::string text() const { return is_empty() ? std::string("EMPTY") : text_; }
  const std::string& symbols_text() const { return text_; }

  friend bool operator==(const FaceSeq&, const FaceSeq&) = default;
  friend std::strong_ordering operator<=>(const FaceSeq& a, const FaceSeq& b) {
    if (!a.is_empty() && !b.is_empty()) return a.text_ <=> b.text_;
    return a.text() <=> b.text();
  }

 private:
  explicit FaceSeq(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

/// Parses and validates a face of the n-dimensional half cube.
FaceSeq parse_seq(std::string_view text, int n);

FaceKind classify(const FaceSeq& f);

/// Mask positions (0-based): underlined coordinates for simplex-shaped
/// faces and edges, star coordinates for half-cube-shaped faces.
std::vector<int> mask_of(const FaceSeq& f);

/// Vertices as vertex sequences, sorted.
std::vector<FaceSeq> vertices_of(const FaceSeq& f);

/// Codimension-1 faces, canonical, sorted and deduplicated.
std::vector<FaceSeq> facets(const FaceSeq& f);

/// Brings an edge in either representation to the one whose rightmost
/// underlined symbol is an underlined 0.
FaceSeq canonical_edge(const FaceSeq& f);

struct TotalAndU {
  int total = 0;
  std::string u;
};

/// Total (sum of 1-based positions holding a 1 or underlined 1) and the
/// sequence with underlines erased. Defined for vertices and simplex-shaped
/// faces (edges in either representation).
TotalAndU total_and_u(const FaceSeq& f);

/// Coordinates in {+1, -1} of a vertex sequence.
std::vector<int> vertex_point(const FaceSeq& vertex);

/// Position of the rightmost 1 or underlined 1, or -1.
int rightmost_one(const FaceSeq& f);

}  // namespace halfcube

template <>
struct std::hash<halfcube::FaceSeq> {
  std::size_t operator()(const halfcube::FaceSeq& f) const noexcept {
    return std::hash<std::string>{}(f.symbols_text());
  }
};
