#include "halfcube/face.hpp"

#include <algorithm>
#include <bit>

namespace halfcube {

namespace {

struct SymbolCounts {
  int underlined = 0;
  int stars = 0;
  int ones = 0;
};

SymbolCounts count_symbols(const FaceSeq& f) {
  SymbolCounts c;
  for (int i = 0; i < f.size(); ++i) {
    const Symbol s = f[i];
    if (is_underlined(s)) ++c.underlined;
    if (s == Symbol::kStar) ++c.stars;
    if (is_one(s)) ++c.ones;
  }
  return c;
}

Symbol underline(int digit) { return digit ? Symbol::kUnd1 : Symbol::kUnd0; }
Symbol plain(int digit) { return digit ? Symbol::kPlain1 : Symbol::kPlain0; }
int digit_of(Symbol s) { return is_one(s) ? 1 : 0; }

FaceSeq toggled_vertex(const FaceSeq& base, int pos) {
  FaceSeq v = base;
  for (int i = 0; i < v.size(); ++i) v.set(i, plain(digit_of(v[i])));
  v.set(pos, plain(1 - digit_of(base[pos])));
  return v;
}

void sort_unique(std::vector<FaceSeq>& faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
}

// All fillings of `positions` with symbols built by `make(digit)` so that
// the total count of 1s in the whole sequence has parity `parity`.
std::vector<FaceSeq> parity_fillings(const FaceSeq& f, const std::vector<int>& positions,
                                     Symbol (*make)(int), int parity) {
  int fixed_ones = 0;
  for (int i = 0; i < f.size(); ++i) {
    if (is_one(f[i])) ++fixed_ones;
  }
  std::vector<FaceSeq> out;
  const auto m = positions.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    if ((fixed_ones + std::popcount(bits)) % 2 != parity) continue;
    FaceSeq g = f;
    for (std::size_t j = 0; j < m; ++j) g.set(positions[j], make(static_cast<int>((bits >> j) & 1U)));
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::kEmpty: return "empty";
    case Shape::kVertex: return "vertex";
    case Shape::kEdge: return "edge";
    case Shape::kSimplex: return "simplex";
    case Shape::kHalfCube: return "halfcube";
  }
  return "?";
}

FaceSeq FaceSeq::raw(std::string_view text) {
  if (text == "EMPTY") return {};
  std::string s(text);
  for (const char c : s) {
    if (!symbol_from_char(c)) {
      throw FaceError(FaceError::Code::kBadSymbol, "unknown symbol '" + std::string(1, c) + "' in " + s);
    }
  }
  if (s.empty()) throw FaceError(FaceError::Code::kBadLength, "empty sequence");
  return FaceSeq(std::move(s));
}

FaceSeq FaceSeq::from_symbols(const std::vector<Symbol>& symbols) {
  std::string s;
  s.reserve(symbols.size());
  for (const Symbol sym : symbols) s.push_back(to_char(sym));
  return FaceSeq(std::move(s));
}

FaceSeq parse_seq(std::string_view text, int n) {
  if (n < 4) throw FaceError(FaceError::Code::kNTooSmall, "n must be at least 4");
  FaceSeq f = FaceSeq::raw(text);
  if (f.is_empty()) return f;
  const std::string t(text);
  if (f.size() != n) {
    throw FaceError(FaceError::Code::kBadLength,
                    t + " has " + std::to_string(f.size()) + " symbols, expected " + std::to_string(n));
  }
  const SymbolCounts c = count_symbols(f);
  if (c.underlined > 0 && c.stars > 0) {
    throw FaceError(FaceError::Code::kMixedMask, t + " mixes stars and underlined symbols");
  }
  if (c.stars > 0) {
    if (c.stars < 3) throw FaceError(FaceError::Code::kTooFewStars, t + " has fewer than 3 stars");
    return f;
  }
  if (c.underlined == 0) {
    if (c.ones % 2 != 0) throw FaceError(FaceError::Code::kBadParity, t + ": vertex with an odd number of 1s");
    return f;
  }
  if (c.underlined == 1) {
    throw FaceError(FaceError::Code::kSingleUnderline, t + " has a single underlined symbol");
  }
  if (c.ones % 2 == 0) {
    throw FaceError(FaceError::Code::kBadParity, t + ": simplex-shaped face with an even number of 1s");
  }
  if (c.underlined == 2 && f[mask_of(f).back()] == Symbol::kUnd1) {
    throw FaceError(FaceError::Code::kNonCanonicalEdge, t + ": rightmost underlined symbol of an edge must be O");
  }
  return f;
}

FaceKind classify(const FaceSeq& f) {
  if (f.is_empty()) return {Shape::kEmpty, -1};
  const SymbolCounts c = count_symbols(f);
  if (c.stars > 0) return {Shape::kHalfCube, c.stars};
  switch (c.underlined) {
    case 0: return {Shape::kVertex, 0};
    case 2: return {Shape::kEdge, 1};
    default: return {Shape::kSimplex, c.underlined - 1};
  }
}

std::vector<int> mask_of(const FaceSeq& f) {
  std::vector<int> mask;
  for (int i = 0; i < f.size(); ++i) {
    const Symbol s = f[i];
    if (is_underlined(s) || s == Symbol::kStar) mask.push_back(i);
  }
  return mask;
}

std::vector<FaceSeq> vertices_of(const FaceSeq& f) {
  const FaceKind kind = classify(f);
  std::vector<FaceSeq> out;
  switch (kind.shape) {
    case Shape::kEmpty:
      return out;
    case Shape::kVertex:
      out.push_back(f);
      return out;
    case Shape::kEdge:
    case Shape::kSimplex:
      for (const int i : mask_of(f)) out.push_back(toggled_vertex(f, i));
      break;
    case Shape::kHalfCube:
      out = parity_fillings(f, mask_of(f), plain, 0);
      break;
  }
  sort_unique(out);
  return out;
}

std::vector<FaceSeq> facets(const FaceSeq& f) {
  const FaceKind kind = classify(f);
  std::vector<FaceSeq> out;
  switch (kind.shape) {
    case Shape::kEmpty:
      return out;
    case Shape::kVertex:
      out.push_back(FaceSeq::empty());
      return out;
    case Shape::kEdge:
      return vertices_of(f);
    case Shape::kSimplex:
      for (const int i : mask_of(f)) {
        FaceSeq g = f;
        g.set(i, plain(digit_of(f[i])));
        out.push_back(kind.dim == 2 ? canonical_edge(g) : g);
      }
      break;
    case Shape::kHalfCube: {
      const std::vector<int> mask = mask_of(f);
      out = parity_fillings(f, mask, underline, 1);
      if (kind.dim >= 4) {
        for (const int i : mask) {
          for (const int digit : {0, 1}) {
            FaceSeq g = f;
            g.set(i, plain(digit));
            out.push_back(std::move(g));
          }
        }
      }
      break;
    }
  }
  sort_unique(out);
  return out;
}

FaceSeq canonical_edge(const FaceSeq& f) {
  const std::vector<int> mask = mask_of(f);
  if (mask.empty() || f[mask.back()] != Symbol::kUnd1) return f;
  FaceSeq g = f;
  for (const int i : mask) g.set(i, underline(1 - digit_of(f[i])));
  return g;
}

TotalAndU total_and_u(const FaceSeq& f) {
  const FaceKind kind = classify(f);
  if (kind.shape == Shape::kEmpty || kind.shape == Shape::kHalfCube) {
    throw FaceError(FaceError::Code::kNotKType, f.text() + " is not a vertex or simplex-shaped face");
  }
  TotalAndU r;
  r.u.reserve(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) {
    if (is_one(f[i])) r.total += i + 1;
    r.u.push_back(is_one(f[i]) ? '1' : '0');
  }
  return r;
}

std::vector<int> vertex_point(const FaceSeq& vertex) {
  std::vector<int> p(static_cast<std::size_t>(vertex.size()));
  for (int i = 0; i < vertex.size(); ++i) p[static_cast<std::size_t>(i)] = is_one(vertex[i]) ? -1 : 1;
  return p;
}

int rightmost_one(const FaceSeq& f) {
  for (int i = f.size() - 1; i >= 0; --i) {
    if (is_one(f[i])) return i;
  }
  return -1;
}

}  // namespace halfcube
