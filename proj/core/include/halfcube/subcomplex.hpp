#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfcube/bigint.hpp"
#include "halfcube/chain_complex.hpp"
#include "halfcube/face_table.hpp"
#include "halfcube/morse.hpp"

namespace halfcube {

class SubcomplexError : public std::runtime_error {
 public:
  enum class Code { kBadRange, kInvariantBroken, kSupportLeak };

  SubcomplexError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// The subcomplex C_{n,k}: every face except the half-cube-shaped faces of
/// dimension >= k, with the matching restricted to it.
struct SubcomplexSpec {
  int n = 0;
  int k = 0;
  std::vector<bool> members;     // indexed by FaceId
  MorseMatching restricted;      // pairs with both faces in the subcomplex
  std::vector<FaceId> unmatched;  // faces of the subcomplex left unpaired
  std::vector<FaceId> external;   // their partners under the full matching

  std::string label() const { return "C_{" + std::to_string(n) + "," + std::to_string(k) + "}"; }
};

/// Builds C_{n,k} for 3 <= k < n and checks its invariants: closed under
/// facets, unmatched faces all of dimension k-1, partners all k-dimensional
/// half cubes whose facets lie in the subcomplex.
SubcomplexSpec build_subcomplex(int k, const FaceTable& table, const FaceLattice& lattice,
                                const MorseMatching& matching);

/// k-dimensional half-cube-shaped faces with no 1 to the right of the
/// rightmost star, in lexicographic order.
std::vector<FaceSeq> basis_faces(int k, const FaceTable& table);

struct HomologyBasis {
  int degree = 0;  // k - 1
  std::vector<FaceSeq> faces;
  std::vector<ChainVector> chains;  // chains[i] is the boundary of faces[i]
};

/// Boundaries of the basis faces; each is checked to be a cycle supported
/// in the subcomplex.
HomologyBasis homology_basis(const SubcomplexSpec& spec, const ChainComplex& complex);

/// sum_{i=k}^{n} C(n,i) C(i-1,k-1), for 3 <= k <= n.
BigInt betti_eq11(int n, int k);
/// sum_{i=1}^{n} 2^{i-k} C(i-1,k-1), terms with i < k being zero.
BigInt betti_eq12(int n, int k);

}  // namespace halfcube
