#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbd/certify.hpp"
#include "mbd/characterization.hpp"
#include "mbd/gadgets.hpp"
#include "mbd/lemmas.hpp"
#include "mbd/products.hpp"
#include "mbd/solver.hpp"
#include "mbd/strategy.hpp"

namespace mbd {

using json = nlohmann::json;

/// A parsed board description.
struct Board {
  std::string spec;
  /// The opening position. Gadgets fix their own first mover; plain graphs
  /// start with Dominator to move.
  Position start;
  std::optional<GadgetSpec> gadget;
  /// Set for grid2:n.
  std::optional<int> grid_columns;
  /// Same board with `first` to move (gadgets keep their pre-claims).
  Position with_first(Player first) const;
};

/// Grammar: path:n, cycle:n, complete:n, empty:n, grid2:n, prod(A,B),
/// edges:n:a-b;c-d;..., and the gadget names rho:m, X:m, Y:m, Z:m, W:m,
/// Wprime:m. Throws std::invalid_argument with the offending token.
Board parse_board(const std::string& text);
Graph parse_graph(const std::string& text);

/// Vertex by label ("u3") or decimal index.
int parse_vertex(const Graph& g, const std::string& token);

Player parse_player(const std::string& text);

json to_json(const Graph& g);
json to_json(GameValue v);
json to_json(const Position& p);
json to_json(const GameRecord& r);
json to_json(const SolveReport& r);
json to_json(const CertificateReport& r);
json to_json(const BoundReport& r);
json to_json(const LemmaCheck& c);
json to_json(const LemmaReport& r);
json to_json(const StructureCheck& s, const Graph& g);
json to_json(const Theorem1Verdict& v);
json to_json(const CorpusRow& row);
json to_json(const CalGLemmaRow& row);
json to_json(const Trap& t, const Graph& g);

/// Provenance block embedded in every emitted artifact. Two runs with the same
/// arguments produce identical JSON apart from the `timestamp` object.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> arguments;
  std::vector<std::uint64_t> seeds;
  std::uint64_t node_limit = 0;
  int workers = 1;
  std::vector<std::string> outputs;
  std::string started_at;
  double wall_clock_seconds = 0;
  std::string tool_version;
};

json to_json(const RunManifest& m);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mbd
