#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "halfcube/chain_complex.hpp"
#include "halfcube/face.hpp"
#include "halfcube/face_table.hpp"
#include "halfcube/morse.hpp"
#include "halfcube/snf.hpp"
#include "halfcube/subcomplex.hpp"

// Interchange formats. Every JSON-lines writer emits one compact object per
// line with keys in a fixed order.
namespace halfcube::io {

/// {"seq":"010**1*010","dim":3,"kind":"halfcube"}
std::string face_line(const FaceSeq& f);
void write_faces(std::ostream& out, std::span<const FaceSeq> faces);
/// Reads face lines written by write_faces and validates each sequence for n.
std::vector<FaceSeq> read_faces(std::istream& in, int n);

/// Header {"dim":d,"rows":R,"cols":C,"n":n} followed by {"row":i,"col":j,"val":v}
/// triplets in column-major order.
void write_boundary(std::ostream& out, const BoundaryMatrix& m, int n);
BoundaryMatrix read_boundary(std::istream& in);

/// {"face":"...","partner":"...","rule":9}; unpaired faces get "partner":null.
void write_matching(std::ostream& out, const MorseMatching& m, const FaceTable& table);

/// {"n":..,"layers":[{"p":..,"nodes":..,"edges":..,"cycle":null}]}
std::string acyclicity_json(const AcyclicityReport& report);

/// {"bface":"0*1*10*","chain":[{"face":"...","coeff":-1},...]}
void write_basis(std::ostream& out, const HomologyBasis& basis, const FaceTable& table);

/// {"subset":"C_{5,3}","betti":{"2":31},"torsion":{}}; only nonzero Betti
/// numbers and nonempty torsion lists appear.
std::string homology_json(const HomologyReport& report);

}  // namespace halfcube::io
