#pragma once

#include <string>
#include <vector>

#include "mbd/position.hpp"
#include "mbd/value.hpp"

namespace mbd {

enum class GadgetKind { X, Y, Z, W, Rho, W4prime, W6prime };

struct GadgetSpec {
  GadgetKind kind = GadgetKind::X;
  int m = 1;

  /// Throws std::invalid_argument when m is outside the gadget's range.
  void validate() const;
  std::string name() const;
  bool operator==(const GadgetSpec&) const = default;
};

/// Parses "rho:5", "X:13", "Wprime:6" (primed W accepts 4 and 6).
GadgetSpec parse_gadget(const std::string& text);

/// A gadget board: the 2 x m grid on u_1..u_m (indices 0..m-1) and v_1..v_m
/// (indices m..2m-1). W boards append v_0 as the last index, adjacent to v_1.
struct Gadget {
  GadgetSpec spec;
  Position position;
  /// W'_4 only: the first Staller claim is followed by a Dominator skip and
  /// may not be taken from this set.
  VertexSet excluded_first;
  bool dominator_skips_first = false;

  int u(int i) const;
  int v(int i) const;
  int v0() const;
  int columns() const { return spec.m; }

  /// For W'_4: every position after an allowed first Staller claim and the
  /// Dominator skip. Otherwise just the position itself.
  std::vector<Position> opening_positions() const;
};

Gadget build_gadget(const GadgetSpec& spec);

/// Closed-form values of the gadget lemmas (primed kinds: the claimed upper bound).
GameValue gadget_expected_value(const GadgetSpec& spec);

/// Graph of a W_m board (2 x m grid plus v_0 on v_1).
Graph make_w_board(int m);

}  // namespace mbd
