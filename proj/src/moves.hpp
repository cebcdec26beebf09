#pragma once

#include <array>

#include "passloc/walks.hpp"

namespace passloc::detail {

struct Move {
  int dx;
  int dy;
};

// Native move vectors for p1..p4, by lattice and level parity.
struct MoveTable {
  Lattice kind = Lattice::diagonal;
  int y = 1;
  std::array<std::array<Move, 4>, 2> by_parity{};

  static MoveTable build(Lattice kind, int y) {
    MoveTable t;
    t.kind = kind;
    t.y = y;
    for (int par = 0; par < 2; ++par) {
      auto& m = t.by_parity[static_cast<size_t>(par)];
      switch (kind) {
        case Lattice::diagonal:
          m = {{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
          break;
        case Lattice::standard:
          m = {{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
          break;
        case Lattice::honeycomb:
          if (par == 0) m = {{{1, 1}, {-1, 1}, {0, 0}, {0, -1}}};
          else m = {{{0, 0}, {0, 1}, {-1, -1}, {1, -1}}};
          break;
      }
    }
    return t;
  }

  const Move* at(long level) const { return by_parity[static_cast<size_t>(level & 1)].data(); }

  // Displacement at absorption to the reported index.
  long index_of(long dx) const {
    switch (kind) {
      case Lattice::standard:
        return dx;
      case Lattice::honeycomb:
        return floor_div(dx + floor_div(y, 2) - y, 2);
      case Lattice::diagonal:
        break;
    }
    return floor_div(dx - y, 2);
  }
};

}  // namespace passloc::detail
