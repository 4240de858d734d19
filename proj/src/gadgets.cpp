#include "mbd/gadgets.hpp"

#include <algorithm>
#include <cctype>

namespace mbd {

namespace {

std::string kind_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::X: return "X";
    case GadgetKind::Y: return "Y";
    case GadgetKind::Z: return "Z";
    case GadgetKind::W: return "W";
    case GadgetKind::Rho: return "rho";
    case GadgetKind::W4prime:
    case GadgetKind::W6prime: return "Wprime";
  }
  return "?";
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

void GadgetSpec::validate() const {
  auto fail = [&](const std::string& why) { throw std::invalid_argument(name() + ": " + why); };
  switch (kind) {
    case GadgetKind::X:
    case GadgetKind::Z:
    case GadgetKind::W:
      if (m < 1) fail("m must be at least 1");
      break;
    case GadgetKind::Y:
      if (m < 3) fail("m must be at least 3");
      break;
    case GadgetKind::Rho:
      if (m < 2) fail("m must be at least 2");
      break;
    case GadgetKind::W4prime:
      if (m != 4) fail("W'_4 has m = 4");
      break;
    case GadgetKind::W6prime:
      if (m != 6) fail("W'_6 has m = 6");
      break;
  }
  const int order = 2 * m + (kind == GadgetKind::W || kind == GadgetKind::W4prime ||
                             kind == GadgetKind::W6prime);
  if (order > Graph::kMaxVertices) fail("board exceeds the 64-vertex capacity");
}

std::string GadgetSpec::name() const { return kind_name(kind) + ":" + std::to_string(m); }

GadgetSpec parse_gadget(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("gadget name needs kind:m, got '" + text + "'");
  const std::string kind = lower(text.substr(0, colon));
  int m = 0;
  try {
    std::size_t used = 0;
    m = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad gadget size in '" + text + "'");
  }
  GadgetSpec spec;
  spec.m = m;
  if (kind == "x") spec.kind = GadgetKind::X;
  else if (kind == "y") spec.kind = GadgetKind::Y;
  else if (kind == "z") spec.kind = GadgetKind::Z;
  else if (kind == "w") spec.kind = GadgetKind::W;
  else if (kind == "rho") spec.kind = GadgetKind::Rho;
  else if (kind == "wprime") spec.kind = m == 6 ? GadgetKind::W6prime : GadgetKind::W4prime;
  else throw std::invalid_argument("unknown gadget kind '" + text.substr(0, colon) + "'");
  spec.validate();
  return spec;
}

Graph make_w_board(int m) {
  Grid2 grid(m);
  auto edges = grid.graph().edges();
  const int v0 = 2 * m;
  edges.emplace_back(grid.v(1), v0);
  auto labels = grid.graph().labels();
  labels.push_back("v0");
  return Graph(2 * m + 1, edges, std::move(labels));
}

int Gadget::u(int i) const {
  if (i < 1 || i > spec.m) throw std::out_of_range("gadget column out of range");
  return i - 1;
}

int Gadget::v(int i) const {
  if (i < 1 || i > spec.m) throw std::out_of_range("gadget column out of range");
  return spec.m + i - 1;
}

int Gadget::v0() const {
  if (position.graph().order() != 2 * spec.m + 1) throw std::logic_error("gadget has no v0");
  return 2 * spec.m;
}

std::vector<Position> Gadget::opening_positions() const {
  if (!dominator_skips_first) return {position};
  std::vector<Position> out;
  for (int s : position.free() - excluded_first) {
    out.push_back(position.apply(Move::claim(s)).pass());
  }
  return out;
}

Gadget build_gadget(const GadgetSpec& spec) {
  spec.validate();
  const int m = spec.m;
  Gadget g;
  g.spec = spec;
  const bool w_board = spec.kind == GadgetKind::W || spec.kind == GadgetKind::W4prime ||
                       spec.kind == GadgetKind::W6prime;
  auto graph = std::make_shared<const Graph>(w_board ? make_w_board(m) : Grid2(m).graph());
  auto u = [](int i) { return i - 1; };
  auto v = [m](int i) { return m + i - 1; };
  VertexSet stall;
  VertexSet predom;
  Player first = Player::Dominator;
  switch (spec.kind) {
    case GadgetKind::X:
      predom = VertexSet::of({u(1)});
      break;
    case GadgetKind::Y:
      stall = VertexSet::of({v(2)});
      predom = VertexSet::of({u(1), u(m), v(m)});
      break;
    case GadgetKind::Z:
      predom = VertexSet::of({u(1), v(1)});
      first = Player::Staller;
      break;
    case GadgetKind::W:
      predom = VertexSet::of({u(1), 2 * m});
      first = Player::Staller;
      break;
    case GadgetKind::Rho:
      stall = VertexSet::of({v(2)});
      predom = VertexSet::of({u(1)});
      break;
    case GadgetKind::W4prime:
      predom = VertexSet::of({u(1), 2 * m});
      first = Player::Staller;
      g.excluded_first = VertexSet::of({u(3), v(3), u(4), v(4)});
      g.dominator_skips_first = true;
      break;
    case GadgetKind::W6prime:
      // s_1 = v_2 is already on the board and Dominator has skipped.
      stall = VertexSet::of({v(2)});
      predom = VertexSet::of({u(1), 2 * m});
      first = Player::Staller;
      break;
  }
  g.position = Position(graph, stall, predom, first);
  return g;
}

GameValue gadget_expected_value(const GadgetSpec& spec) {
  spec.validate();
  const int m = spec.m;
  switch (spec.kind) {
    case GadgetKind::X:
      if (m == 1) return GameValue::dominator_in(1);
      if (m <= 5) return GameValue::dominator_in(m - 1);
      return GameValue::dominator_in(m - 2);
    case GadgetKind::Y:
    case GadgetKind::Z:
      return GameValue::dominator_in(m - 1);
    case GadgetKind::W:
      return GameValue::dominator_in(m <= 3 ? m : m - 1);
    case GadgetKind::Rho:
      return GameValue::dominator_in(m);
    case GadgetKind::W4prime:
      return GameValue::dominator_in(4);
    case GadgetKind::W6prime:
      return GameValue::dominator_in(6);
  }
  return GameValue::staller_win();
}

}  // namespace mbd
