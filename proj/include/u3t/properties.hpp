#pragma once

// Inductive invariants of the xavier-winning endgame, stated for an anchor
// (f, g) with A = {0..8} \ {f, 4, g}. They are evaluated on positions where O
// is to move, i.e. right after one of X's endgame moves.
//
//   P1  i in A, X on (i,f) and (i,g)       => O on (f,i) and (g,i)
//   P2  i in A, X on exactly one of them    => it is (i,f), O holds exactly one
//                                              of (f,i),(g,i), and if that one
//                                              is (g,i) then O must play in f
//   P3  i in A, X on neither               => O on neither (f,i) nor (g,i)
//   P4  O must play in field f or g (and that field has room)
//   P5  O plays in f iff exactly one i in A has O on (g,i) with (f,i) empty;
//       O plays in g iff no such i exists
//   P6  O only ever played in fields f, 4, g; X never played (f,i) or (g,i)

#include <array>
#include <string>
#include <vector>

#include "u3t/engine.hpp"
#include "u3t/strategies.hpp"

namespace u3t {

struct PropertyWitness {
  int property = 0;  // 1..6
  int field = -1;    // the offending i, or the forced field for P4/P5 (-1 if none)
  friend bool operator==(const PropertyWitness&, const PropertyWitness&) = default;
};

struct PropertyVector {
  std::array<bool, 6> holds{true, true, true, true, true, true};  // holds[k] is P(k+1)
  AnchorPair anchor;
  std::vector<PropertyWitness> witnesses;

  bool all() const;
  bool p(int k) const { return holds[k - 1]; }
};

PropertyVector check_properties(const BoardState& state, AnchorPair anchor);

std::string describe(const PropertyVector& pv);

std::array<int, kFields> count_x_per_field(const BoardState& state);

}  // namespace u3t
