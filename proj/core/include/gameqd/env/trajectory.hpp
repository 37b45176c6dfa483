#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gameqd {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class EventKind : std::uint8_t { kPoint = 0, kRebound = 1, kCapture = 2 };

std::string_view to_string(EventKind kind) noexcept;

// `entity` indexes Trajectory::roles. For points and rebounds it is the
// scoring/rebounding paddle, for captures the captured entity. `value` holds
// the ball speed after a rebound and is zero otherwise.
struct DuelEvent {
  int step = 0;
  int entity = 0;
  EventKind kind = EventKind::kPoint;
  double value = 0.0;

  friend bool operator==(const DuelEvent&, const DuelEvent&) = default;
};

// Entity positions recorded after every step, steps x roles, row-major.
struct Trajectory {
  int steps = 0;
  std::vector<std::string> roles;
  std::vector<Vec2> positions;
  std::vector<DuelEvent> events;

  std::size_t entity_count() const noexcept { return roles.size(); }
  const Vec2& at(int step, std::size_t entity) const {
    return positions[static_cast<std::size_t>(step) * roles.size() + entity];
  }
};

bool operator==(const Vec2& a, const Vec2& b) noexcept;
bool operator==(const Trajectory& a, const Trajectory& b) noexcept;

}  // namespace gameqd
