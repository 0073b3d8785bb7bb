/*
 * SPDX-License-Identifier: Apache-2.0
 */
#ifndef FOGRAN_SCHEME_HPP
#define FOGRAN_SCHEME_HPP

#include <string>

#include "fogran/errors.hpp"

namespace fogran {

enum class Direction { kUplink, kDownlink };

/// How URLLC and eMBB share the frame.
///  - kOma: URLLC rides dedicated mini-slots, one every access_latency.
///  - kNomaTin: mixed mini-slots, URLLC treated as noise at the BBU.
///  - kNomaPuncturing: ENs (UL) or users (DL) blank mini-slots that carry a
///    URLLC packet.
///  - kNomaSic: UL only, BBU cancels decoded URLLC before eMBB decoding.
///  - kNomaSuperposition: DL only, EN splits power between the two services.
enum class Multiplexing {
  kOma,
  kNomaTin,
  kNomaPuncturing,
  kNomaSic,
  kNomaSuperposition,
};

struct SchemeConfig {
  Direction direction = Direction::kUplink;
  Multiplexing multiplexing = Multiplexing::kOma;
  /// URLLC access latency in mini-slots; meaningful for kOma only.
  int access_latency = 2;

  bool is_oma() const { return multiplexing == Multiplexing::kOma; }

  /// Mini-slots a URLLC packet may wait for its transmission opportunity.
  /// Grant-free non-orthogonal access transmits immediately.
  int effective_latency() const { return is_oma() ? access_latency : 1; }
};

inline bool scheme_valid(const SchemeConfig& s) {
  if (s.is_oma() && s.access_latency < 1) return false;
  if (s.multiplexing == Multiplexing::kNomaSic &&
      s.direction != Direction::kUplink)
    return false;
  if (s.multiplexing == Multiplexing::kNomaSuperposition &&
      s.direction != Direction::kDownlink)
    return false;
  if (s.multiplexing == Multiplexing::kNomaTin &&
      s.direction != Direction::kUplink)
    return false;
  return true;
}

inline std::string direction_token(Direction d) {
  return d == Direction::kUplink ? "ul" : "dl";
}

inline std::string multiplexing_token(Multiplexing m) {
  switch (m) {
    case Multiplexing::kOma:
      return "homa";
    case Multiplexing::kNomaTin:
      return "tin";
    case Multiplexing::kNomaPuncturing:
      return "punct";
    case Multiplexing::kNomaSic:
      return "sic";
    case Multiplexing::kNomaSuperposition:
      return "superpos";
  }
  return "unknown";
}

inline std::string scheme_token(const SchemeConfig& s) {
  return direction_token(s.direction) + "_" + multiplexing_token(s.multiplexing);
}

/// Parses tokens of the form "<ul|dl>_<homa|tin|punct|sic|superpos>".
/// Throws InvalidParameterError listing the valid tokens otherwise.
SchemeConfig parse_scheme(const std::string& token);

}  // namespace fogran

#endif  // FOGRAN_SCHEME_HPP
