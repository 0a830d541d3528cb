#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "ainfer/types.hpp"

namespace ainfer {

// Integer-millisecond discrete-event clock. Time only moves through
// advance_to; events at equal times fire in insertion order, which is
// what makes whole runs bit-reproducible.
class VirtualClock {
 public:
  using Callback = std::function<void()>;

  TimeMs now() const { return now_; }

  // Schedules cb at time `at` (>= now; earlier times are clamped to now).
  void schedule(TimeMs at, Callback cb);

  // Fires every event with time <= t, in (time, seq) order, including
  // events scheduled by callbacks while advancing. now() ends at t.
  void advance_to(TimeMs t);

  std::size_t pending() const { return heap_.size(); }

 private:
  struct Event {
    TimeMs at;
    std::uint64_t seq;
    Callback cb;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  TimeMs now_ = 0;
  std::uint64_t next_seq_ = 0;
};

}  // namespace ainfer
