#include "ainfer/action_queue.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ainfer {
namespace {

ActionChunk make_chunk(Tick start, int count, double value, std::uint64_t id = 1) {
  ActionChunk chunk;
  chunk.start_timestep = start;
  chunk.chunk_id = id;
  for (int k = 0; k < count; ++k) chunk.actions.push_back(Action{{value}});
  return chunk;
}

ActionQueue queue_from(Tick start, int count, double value, std::uint64_t id = 0) {
  ActionQueue q;
  q.merge_chunk(make_chunk(start, count, value, id), start, AggregationPolicy::replace());
  return q;
}

void expect_contiguous(const ActionQueue& q) {
  const auto& entries = q.entries();
  for (std::size_t i = 1; i < entries.size(); ++i)
    ASSERT_EQ(entries[i].timestep, entries[i - 1].timestep + 1);
}

// ── pop_front ────────────────────────────────────────────────────────────────

TEST(PopFront, SingleElement) {
  ActionQueue q = queue_from(7, 1, 3.5);
  const auto popped = q.pop_front();
  ASSERT_TRUE(popped.has_value());
  EXPECT_EQ(popped->timestep, 7);
  EXPECT_DOUBLE_EQ(popped->action.values[0], 3.5);
  EXPECT_TRUE(q.empty());
}

TEST(PopFront, EmptySignalsIdle) {
  ActionQueue q;
  EXPECT_FALSE(q.pop_front().has_value());
}

TEST(PopFront, FiftyEntries) {
  ActionQueue q = queue_from(0, 50, 1.0);
  const auto popped = q.pop_front();
  ASSERT_TRUE(popped.has_value());
  EXPECT_EQ(popped->timestep, 0);
  EXPECT_EQ(q.size(), 49u);
}

// ── below_threshold ──────────────────────────────────────────────────────────

TEST(BelowThreshold, JustUnderTrigger) {
  EXPECT_TRUE(ActionQueue::below_threshold(34, 50, 0.7));  // 34 < 35
}

TEST(BelowThreshold, AtBoundaryDoesNotTrigger) {
  EXPECT_FALSE(ActionQueue::below_threshold(35, 50, 0.7));  // 35 not < 35
}

TEST(BelowThreshold, GZeroNeverTriggers) {
  EXPECT_FALSE(ActionQueue::below_threshold(0, 50, 0.0));  // 0 < 0 is false
  EXPECT_FALSE(ActionQueue::below_threshold(1, 50, 0.0));
}

TEST(BelowThreshold, GOne) {
  EXPECT_TRUE(ActionQueue::below_threshold(49, 50, 1.0));
  EXPECT_FALSE(ActionQueue::below_threshold(50, 50, 1.0));
}

TEST(BelowThreshold, EmptyQueuePositiveG) {
  EXPECT_TRUE(ActionQueue::below_threshold(0, 50, 0.01));
}

TEST(BelowThreshold, MonotoneInSize) {
  for (int n : {10, 25, 50})
    for (double g : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
      bool prev = true;
      for (int size = 0; size <= n; ++size) {
        const bool cur = ActionQueue::below_threshold(size, n, g);
        EXPECT_TRUE(prev || !cur) << "not monotone at size " << size;
        prev = cur;
      }
    }
}

// ── merge_chunk ──────────────────────────────────────────────────────────────

TEST(MergeChunk, ReplaceWholeWindow) {
  // Old values on 45..49; incoming 50 actions from 45 replace them all.
  ActionQueue q = queue_from(45, 5, 1.0);
  const MergeStats stats =
      q.merge_chunk(make_chunk(45, 50, 2.0, 2), 45, AggregationPolicy::replace());
  EXPECT_EQ(q.size(), 50u);
  EXPECT_EQ(q.front_timestep(), 45);
  EXPECT_EQ(q.end_timestep(), 94);
  EXPECT_EQ(stats.dropped_stale, 0u);
  EXPECT_EQ(stats.overlapped, 5u);
  EXPECT_EQ(stats.appended, 45u);
  for (const auto& entry : q.entries()) EXPECT_DOUBLE_EQ(entry.action.values[0], 2.0);
  expect_contiguous(q);
}

TEST(MergeChunk, IntoEmptyQueueVerbatim) {
  ActionQueue q;
  q.merge_chunk(make_chunk(100, 50, 4.0), 100, AggregationPolicy::replace());
  EXPECT_EQ(q.size(), 50u);
  EXPECT_EQ(q.front_timestep(), 100);
  EXPECT_EQ(q.end_timestep(), 149);
  expect_contiguous(q);
}

TEST(MergeChunk, ExpBlendOverlap) {
  ActionQueue q = queue_from(10, 1, 1.0);
  q.merge_chunk(make_chunk(10, 1, 0.0, 2), 10, AggregationPolicy::blend(0.5));
  ASSERT_EQ(q.size(), 1u);
  EXPECT_DOUBLE_EQ(q.entries()[0].action.values[0], 0.5);  // 0.5*1.0 + 0.5*0.0
}

TEST(MergeChunk, StalePrefixDropped) {
  // Incoming 90..139 at tick 100: the first 10 are already in the past.
  ActionQueue q;
  const MergeStats stats =
      q.merge_chunk(make_chunk(90, 50, 1.0), 100, AggregationPolicy::replace());
  EXPECT_EQ(stats.dropped_stale, 10u);
  EXPECT_EQ(q.front_timestep(), 100);
  EXPECT_EQ(q.end_timestep(), 139);
  EXPECT_EQ(q.size(), 40u);
}

TEST(MergeChunk, FullyStaleIsNoop) {
  ActionQueue q = queue_from(100, 5, 1.0);
  const MergeStats stats =
      q.merge_chunk(make_chunk(10, 20, 2.0, 3), 100, AggregationPolicy::replace());
  EXPECT_EQ(stats.dropped_stale, 20u);
  EXPECT_EQ(stats.size_after, 5u);
  for (const auto& entry : q.entries()) EXPECT_DOUBLE_EQ(entry.action.values[0], 1.0);
}

TEST(MergeChunk, GapIsAnError) {
  ActionQueue q = queue_from(10, 5, 1.0);  // 10..14
  EXPECT_THROW(q.merge_chunk(make_chunk(16, 5, 2.0), 10, AggregationPolicy::replace()),
               GapError);
  // start == end+1 is fine (pure append).
  EXPECT_NO_THROW(q.merge_chunk(make_chunk(15, 5, 2.0), 10, AggregationPolicy::replace()));
  EXPECT_EQ(q.end_timestep(), 19);
}

TEST(MergeChunk, ReplaceIsIdempotent) {
  ActionQueue q1 = queue_from(20, 30, 1.0);
  ActionQueue q2 = queue_from(20, 30, 1.0);
  const auto incoming = make_chunk(35, 50, 9.0, 7);
  q1.merge_chunk(incoming, 40, AggregationPolicy::replace());
  q2.merge_chunk(incoming, 40, AggregationPolicy::replace());
  q2.merge_chunk(incoming, 40, AggregationPolicy::replace());
  ASSERT_EQ(q1.size(), q2.size());
  for (std::size_t i = 0; i < q1.size(); ++i) {
    EXPECT_EQ(q1.entries()[i].timestep, q2.entries()[i].timestep);
    EXPECT_DOUBLE_EQ(q1.entries()[i].action.values[0], q2.entries()[i].action.values[0]);
  }
}

TEST(MergeChunk, HorizonEndIsMaxOfBoth) {
  // Incoming shorter than the queue: end stays at the queue's end.
  ActionQueue q = queue_from(10, 40, 1.0);  // 10..49
  q.merge_chunk(make_chunk(10, 5, 2.0, 2), 10, AggregationPolicy::replace());
  EXPECT_EQ(q.end_timestep(), 49);
  // Incoming longer: end extends.
  q.merge_chunk(make_chunk(30, 50, 3.0, 3), 30, AggregationPolicy::replace());
  EXPECT_EQ(q.end_timestep(), 79);
}

// Random pop/merge sequences keep the queue contiguous, strictly
// increasing, and never below the current tick after a merge.
TEST(MergeChunk, PropertyRandomOpsKeepInvariants) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 200; ++round) {
    ActionQueue q;
    Tick tick = 0;
    std::uint64_t next_id = 1;
    const int n = 1 + static_cast<int>(rng() % 60);
    for (int step = 0; step < 120; ++step) {
      const bool merge = (rng() % 3) == 0;
      if (merge) {
        // Chunks start at or before the tick, occasionally in the future
        // of the queue end to provoke gap checks.
        const Tick start = tick - static_cast<Tick>(rng() % 10);
        const int len = 1 + static_cast<int>(rng() % n);
        const auto policy = (rng() % 2) == 0 ? AggregationPolicy::replace()
                                             : AggregationPolicy::blend(0.25);
        try {
          q.merge_chunk(make_chunk(std::max<Tick>(start, 0), len, 1.0, next_id++), tick,
                        policy);
        } catch (const GapError&) {
          // Legal outcome for a wild chunk; queue must stay intact.
        }
      } else {
        q.pop_front();
        ++tick;
      }
      expect_contiguous(q);
      // Span bound: size never exceeds the covered timestep span.
      if (!q.empty()) {
        EXPECT_EQ(static_cast<Tick>(q.size()), q.end_timestep() - q.front_timestep() + 1);
      }
    }
  }
}

// Merging never leaves an action behind the merge tick.
TEST(MergeChunk, NoStaleEntriesSurviveMerge) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    ActionQueue q;
    const Tick tick = static_cast<Tick>(rng() % 200);
    const Tick start = std::max<Tick>(0, tick - static_cast<Tick>(rng() % 60));
    const int len = 1 + static_cast<int>(rng() % 80);
    q.merge_chunk(make_chunk(start, len, 1.0), tick, AggregationPolicy::replace());
    if (!q.empty()) {
      EXPECT_GE(q.front_timestep(), tick);
    }
  }
}

}  // namespace
}  // namespace ainfer
