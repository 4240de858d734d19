#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace mbd {

/// Result of optimal play: Staller isolates a vertex, or Dominator wins
/// using `k` further claims.
class GameValue {
 public:
  static constexpr int kStallerWin = 255;

  constexpr GameValue() = default;
  static constexpr GameValue staller_win() { return GameValue(kStallerWin); }
  static constexpr GameValue dominator_in(int k) { return GameValue(k); }
  /// Raw encoding used by the search: 0..254 claims, 255 Staller win.
  static constexpr GameValue from_raw(int raw) { return GameValue(raw); }

  constexpr bool is_staller_win() const { return raw_ == kStallerWin; }
  constexpr bool is_dominator_win() const { return raw_ != kStallerWin; }
  /// Number of Dominator claims; only meaningful for a Dominator win.
  constexpr int claims() const { return raw_; }
  constexpr int raw() const { return raw_; }

  /// Ordered from Dominator's point of view: smaller is better for him.
  constexpr auto operator<=>(const GameValue&) const = default;

  std::string to_string() const {
    return is_staller_win() ? "StallerWin" : "DominatorWinIn(" + std::to_string(raw_) + ")";
  }

 private:
  constexpr explicit GameValue(int raw) : raw_(static_cast<std::uint8_t>(raw)) {}
  std::uint8_t raw_ = 0;
};

}  // namespace mbd
