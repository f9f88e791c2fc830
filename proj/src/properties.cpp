#include "u3t/properties.hpp"

#include <bit>
#include <stdexcept>

namespace u3t {

bool PropertyVector::all() const {
  for (bool h : holds) {
    if (!h) return false;
  }
  return true;
}

PropertyVector check_properties(const BoardState& state, AnchorPair anchor) {
  if (anchor.f == 4 || anchor.f < 0 || anchor.f >= kFields || anchor.g != 8 - anchor.f) {
    throw std::invalid_argument("anchor must satisfy f != 4 and g = 8 - f");
  }
  const int f = anchor.f, g = anchor.g;
  PropertyVector pv;
  pv.anchor = anchor;
  auto fail = [&](int property, int field) {
    pv.holds[property - 1] = false;
    pv.witnesses.push_back({property, field});
  };
  auto is = [&](int field, int spot, Cell c) { return state.cell(CellAddr(field, spot)) == c; };

  const std::optional<int> forced = state.to_move() == Mark::O ? state.forced_field() : std::nullopt;
  int verifying = 0;  // i in A with O on (g,i) and (f,i) empty

  for (int i = 0; i < kFields; ++i) {
    if (!anchor.in_a(i)) continue;
    const bool x_if = is(i, f, Cell::X), x_ig = is(i, g, Cell::X);
    const bool o_fi = is(f, i, Cell::O), o_gi = is(g, i, Cell::O);

    if (x_if && x_ig && !(o_fi && o_gi)) fail(1, i);
    if (x_if != x_ig) {
      const bool ok = x_if && (o_fi != o_gi) && (!o_gi || forced == f);
      if (!ok) fail(2, i);
    }
    if (!x_if && !x_ig && (o_fi || o_gi)) fail(3, i);

    if (o_gi && is(f, i, Cell::Empty)) ++verifying;
  }

  if (!forced || (*forced != f && *forced != g)) fail(4, forced.value_or(-1));

  const bool p5 = (forced == f) == (verifying == 1) && (forced != g || verifying == 0);
  if (!p5) fail(5, forced.value_or(-1));

  bool p6 = true;
  int p6_field = -1;
  for (int field = 0; field < kFields && p6; ++field) {
    if (field != f && field != 4 && field != g && state.marks(Mark::O, field) != 0) {
      p6 = false;
      p6_field = field;
    }
  }
  for (int i = 0; i < kFields && p6; ++i) {
    if (anchor.in_a(i) && (is(f, i, Cell::X) || is(g, i, Cell::X))) {
      p6 = false;
      p6_field = i;
    }
  }
  if (!p6) fail(6, p6_field);
  return pv;
}

std::string describe(const PropertyVector& pv) {
  std::string out;
  for (int k = 1; k <= 6; ++k) {
    if (!out.empty()) out += ' ';
    out += "P" + std::to_string(k) + (pv.p(k) ? "=1" : "=0");
  }
  for (const PropertyWitness& w : pv.witnesses) {
    out += " [P" + std::to_string(w.property) + "@" + std::to_string(w.field) + "]";
  }
  return out;
}

std::array<int, kFields> count_x_per_field(const BoardState& state) {
  std::array<int, kFields> out{};
  for (int f = 0; f < kFields; ++f) out[f] = std::popcount(state.marks(Mark::X, f));
  return out;
}

}  // namespace u3t
