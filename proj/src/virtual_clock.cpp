#include "ainfer/virtual_clock.hpp"

namespace ainfer {

void VirtualClock::schedule(TimeMs at, Callback cb) {
  heap_.push(Event{at < now_ ? now_ : at, next_seq_++, std::move(cb)});
}

void VirtualClock::advance_to(TimeMs t) {
  while (!heap_.empty() && heap_.top().at <= t) {
    // Copy out before pop so callbacks may schedule freely.
    Event ev = heap_.top();
    heap_.pop();
    if (ev.at > now_) now_ = ev.at;
    ev.cb();
  }
  if (t > now_) now_ = t;
}

}  // namespace ainfer
