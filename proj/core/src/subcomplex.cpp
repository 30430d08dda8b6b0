#include "halfcube/subcomplex.hpp"

#include <algorithm>

namespace halfcube {

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void require_betti_range(int n, int k) {
  if (k < 3 || k > n) {
    throw SubcomplexError(SubcomplexError::Code::kBadRange,
                          "Betti formulas need 3 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
}

bool is_removed(const FaceSeq& f, int k) {
  const FaceKind kind = classify(f);
  return kind.shape == Shape::kHalfCube && kind.dim >= k;
}

[[noreturn]] void broken(const std::string& what) {
  throw SubcomplexError(SubcomplexError::Code::kInvariantBroken, what);
}

}  // namespace

SubcomplexSpec build_subcomplex(int k, const FaceTable& table, const FaceLattice& lattice,
                                const MorseMatching& matching) {
  const int n = table.n();
  if (k < 3 || k >= n) {
    throw SubcomplexError(SubcomplexError::Code::kBadRange,
                          "subcomplex needs 3 <= k < n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  SubcomplexSpec spec;
  spec.n = n;
  spec.k = k;
  spec.members.assign(table.size(), false);
  for (FaceId id = 0; id < table.size(); ++id) spec.members[id] = !is_removed(table.face(id), k);

  for (FaceId id = 0; id < table.size(); ++id) {
    if (!spec.members[id]) continue;
    for (const FaceId g : lattice.facets(id)) {
      if (!spec.members[g]) broken(table.face(id).text() + " has facet " + table.face(g).text() + " outside Y");
    }
  }

  spec.restricted = matching.restricted_to(spec.members);
  for (FaceId id = 0; id < table.size(); ++id) {
    if (!spec.members[id] || spec.restricted.is_paired(id)) continue;
    spec.unmatched.push_back(id);
    if (!matching.is_paired(id)) broken(table.face(id).text() + " is unpaired in the full matching");
    spec.external.push_back(matching.partner(id));
  }

  for (const FaceId id : spec.unmatched) {
    if (table.dim_of(id) != k - 1) broken("unmatched face " + table.face(id).text() + " has dimension != k-1");
  }
  for (const FaceId id : spec.external) {
    const FaceKind kind = classify(table.face(id));
    if (kind.shape != Shape::kHalfCube || kind.dim != k) {
      broken("external partner " + table.face(id).text() + " is not a k-dimensional half cube");
    }
    for (const FaceId g : lattice.facets(id)) {
      if (!spec.members[g]) broken("external partner " + table.face(id).text() + " has a facet outside Y");
    }
  }
  std::sort(spec.external.begin(), spec.external.end());
  return spec;
}

std::vector<FaceSeq> basis_faces(int k, const FaceTable& table) {
  std::vector<FaceSeq> out;
  for (const FaceSeq& f : table.faces(k)) {
    const FaceKind kind = classify(f);
    if (kind.shape != Shape::kHalfCube) continue;
    const std::vector<int> mask = mask_of(f);
    if (rightmost_one(f) < mask.back()) out.push_back(f);
  }
  return out;  // table order is lexicographic
}

HomologyBasis homology_basis(const SubcomplexSpec& spec, const ChainComplex& complex) {
  const FaceTable& table = complex.table();
  HomologyBasis basis;
  basis.degree = spec.k - 1;
  basis.faces = basis_faces(spec.k, table);
  for (const FaceSeq& b : basis.faces) {
    ChainVector chain = complex.boundary_of(table.id_of(b));
    for (const auto& [index, coeff] : chain.terms()) {
      if (!spec.members[table.id(basis.degree, index)]) {
        throw SubcomplexError(SubcomplexError::Code::kSupportLeak,
                              "boundary of " + b.text() + " touches " +
                                  table.face(table.id(basis.degree, index)).text() + " outside the subcomplex");
      }
    }
    if (!complex.apply_boundary(chain).is_zero()) {
      throw SubcomplexError(SubcomplexError::Code::kInvariantBroken, "boundary of " + b.text() + " is not a cycle");
    }
    basis.chains.push_back(std::move(chain));
  }
  return basis;
}

BigInt betti_eq11(int n, int k) {
  require_betti_range(n, k);
  BigInt sum = 0;
  for (int i = k; i <= n; ++i) sum += binomial(n, i) * binomial(i - 1, k - 1);
  return sum;
}

BigInt betti_eq12(int n, int k) {
  require_betti_range(n, k);
  BigInt sum = 0;
  for (int i = k; i <= n; ++i) sum += (BigInt(1) << (i - k)) * binomial(i - 1, k - 1);
  return sum;
}

}  // namespace halfcube
