#include "u3t/render.hpp"

namespace u3t {

namespace {

std::string field_list(const BoardState& s, FieldStatus want) {
  std::string out;
  for (int f = 0; f < kFields; ++f) {
    if (s.field_status(f) != want) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(f);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

std::string render_board(const BoardState& state) {
  const auto active = state.terminal() ? std::nullopt : state.forced_field();
  const bool free_choice = !state.terminal() && !active;
  std::string out;
  for (int row = 0; row < 9; ++row) {
    if (row == 3 || row == 6) out += "------+-------+------\n";
    for (int col = 0; col < 9; ++col) {
      if (col == 3 || col == 6) out += "| ";
      const int field = (row / 3) * 3 + col / 3;
      const int spot = (row % 3) * 3 + col % 3;
      char c = '.';
      switch (state.cell(CellAddr(field, spot))) {
        case Cell::X:
          c = 'X';
          break;
        case Cell::O:
          c = 'O';
          break;
        case Cell::Empty:
          if ((active && *active == field) || (free_choice && !state.field_full(field))) c = '*';
          break;
      }
      out += c;
      if (col != 8) out += ' ';
    }
    out += '\n';
  }
  return out;
}

std::string render_status(const BoardState& state) {
  std::string out = "ply " + std::to_string(state.ply());
  if (state.terminal()) {
    out += "  result " + std::string(to_string(state.status()));
  } else {
    out += "  to move " + std::string(to_string(state.to_move()));
    out += "  active " + (state.forced_field() ? std::to_string(*state.forced_field()) : std::string("any"));
  }
  out += "  won X " + field_list(state, FieldStatus::WonX) + "  won O " + field_list(state, FieldStatus::WonO);
  return out;
}

}  // namespace u3t
