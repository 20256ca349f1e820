#pragma once

#include <string>
#include <vector>

#include "stendo/fdalgebra.hpp"

namespace stendo {

// Quiver with relations. Paths multiply in function-composition order:
// "b*a" is the path that follows a first, then b, and is a cycle at the
// source of a when b ends there.
struct QuiverPresentation {
  std::vector<std::string> vertices;
  struct Arrow {
    std::string name;
    int source;  // vertex index
    int target;
  };
  std::vector<Arrow> arrows;
  // Relations as strings over arrow names, e.g. "b*a" or "a*b - b*a".
  // Every term must be a path of length >= 2 and all terms parallel.
  std::vector<std::string> relations;
  int nilpotency_bound = 0;  // N with J^N = 0
};

// Builds the quotient of the path algebra by the relation ideal.
// Basis elements are surviving paths (labels carry the path strings);
// idempotents are the trivial paths, the radical is spanned by the
// positive-length basis paths.
//
// Throws InputError for malformed/non-admissible relations and
// Inconclusive when the path space fails to vanish at the stated
// nilpotency bound.
FDAlgebra algebra_from_quiver(Fp F, const QuiverPresentation& Q);

// Preprojective algebra presentation of the A_2 graph (two vertices,
// arrows both ways, both length-2 cycles zero).
QuiverPresentation preprojective_a2();

// One vertex, one loop x, relation x^n = 0; models k[x]/(x^n).
QuiverPresentation loop_with_nilpotency(int n);

}  // namespace stendo
