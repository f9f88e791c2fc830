#pragma once

// Plain-text board, field 0 top-left and row-major inside each field:
//
//   X . . | . . . | . . .
//   ...
//   ------+-------+------
//
// Empty cells of the active field print as '*', the others as '.'.

#include <string>

#include "u3t/engine.hpp"

namespace u3t {

std::string render_board(const BoardState& state);

// One line: ply, side to move or result, active field, won fields.
std::string render_status(const BoardState& state);

}  // namespace u3t
