#pragma once

#include <cstdint>

namespace rvsim {

// Zero-issue cycles are attributed to exactly one cause (the oldest blocker).
struct StallBreakdown {
  uint64_t fetch = 0;
  uint64_t raw = 0;
  uint64_t waw = 0;
  uint64_t structural = 0;
  uint64_t wb_contention = 0;
  uint64_t dcache = 0;

  uint64_t total() const { return fetch + raw + waw + structural + wb_contention + dcache; }
};

struct Stats {
  uint64_t cycles = 0;
  uint64_t retired = 0;

  uint64_t full_issue_cycles = 0;
  uint64_t partial_issue_cycles = 0;
  StallBreakdown stalls;

  uint64_t branches = 0;            // conditional branches retired
  uint64_t mispredicts = 0;         // direction mispredicts
  uint64_t jump_mispredicts = 0;    // jalr target mispredicts / btb misses

  uint64_t icache_hits = 0;
  uint64_t icache_misses = 0;
  uint64_t dcache_hits = 0;
  uint64_t dcache_misses = 0;       // primary misses
  uint64_t mshr_merges = 0;         // secondary misses folded into a pending fill
  uint64_t mshr_full_events = 0;
  uint64_t prefetches_issued = 0;

  uint64_t mem_bytes_read = 0;
  uint64_t mem_bytes_written = 0;

  uint64_t wb_stall_events = 0;     // writeback-port arbitration losses
  uint64_t misaligned_accesses = 0;

  // region of interest (between marker stores); whole run if no markers seen
  bool roi_seen = false;
  uint64_t roi_cycles = 0;
  uint64_t roi_retired = 0;
  uint64_t roi_branches = 0;
  uint64_t roi_mispredicts = 0;
  uint64_t roi_bytes_read = 0;
  uint64_t roi_bytes_written = 0;

  double ipc() const { return cycles ? static_cast<double>(retired) / cycles : 0.0; }
  double roi_ipc() const {
    if (!roi_seen) return ipc();
    return roi_cycles ? static_cast<double>(roi_retired) / roi_cycles : 0.0;
  }
  double bandwidth_bytes_per_cycle() const {
    const uint64_t c = roi_seen ? roi_cycles : cycles;
    const uint64_t b = roi_seen ? roi_bytes_read + roi_bytes_written
                                : mem_bytes_read + mem_bytes_written;
    return c ? static_cast<double>(b) / c : 0.0;
  }
};

}  // namespace rvsim
