#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "rvsim/stats.hpp"

namespace rvsim {

struct MemConfig {
  uint32_t latency_cycles = 20;
  uint32_t bytes_per_cycle = 8;
  uint32_t max_inflight = 32;
};

// Fixed-latency main memory with one data channel that serializes transfers
// at bytes_per_cycle in arrival order. Byte counters advance when a transfer
// completes, so ROI windows see traffic where it actually lands.
class MainMemory {
 public:
  struct TraceEntry {
    uint64_t submit_cycle;
    uint64_t done_cycle;
    uint32_t addr;
    uint32_t bytes;
    bool is_write;
  };

  MainMemory(const MemConfig& cfg, Stats* stats) : cfg_(cfg), stats_(stats) {}

  // Returns the completion cycle, or nullopt if the in-flight queue is full.
  std::optional<uint64_t> try_submit(uint64_t cycle, uint32_t addr, uint32_t bytes, bool is_write) {
    if (inflight_.size() >= cfg_.max_inflight) return std::nullopt;
    const uint64_t start = std::max(cycle + cfg_.latency_cycles, channel_free_);
    const uint64_t xfer = (bytes + cfg_.bytes_per_cycle - 1) / cfg_.bytes_per_cycle;
    const uint64_t done = start + xfer;
    channel_free_ = done;
    inflight_.push_back({done, bytes, is_write});
    if (trace_enabled) trace.push_back({cycle, done, addr, bytes, is_write});
    return done;
  }

  void tick(uint64_t cycle) {
    while (!inflight_.empty() && inflight_.front().done <= cycle) {
      const auto& p = inflight_.front();
      if (p.is_write)
        stats_->mem_bytes_written += p.bytes;
      else
        stats_->mem_bytes_read += p.bytes;
      inflight_.pop_front();
    }
  }

  size_t inflight() const { return inflight_.size(); }

  bool trace_enabled = false;
  std::vector<TraceEntry> trace;

 private:
  struct Pending {
    uint64_t done;
    uint32_t bytes;
    bool is_write;
  };

  MemConfig cfg_;
  Stats* stats_;
  uint64_t channel_free_ = 0;
  std::deque<Pending> inflight_;  // completes in submission order
};

enum class WritePolicy : uint8_t { WriteBack, WriteThrough };
enum class DCacheKind : uint8_t { Legacy, Hpd };

struct CacheConfig {
  uint32_t size_bytes = 32768;
  uint32_t ways = 8;
  uint32_t line_bytes = 64;
  WritePolicy policy = WritePolicy::WriteBack;
  DCacheKind kind = DCacheKind::Hpd;
  uint32_t mshr_depth = 8;
  bool prefetch = false;
  uint32_t prefetch_degree = 2;

  uint32_t num_sets() const { return size_bytes / (ways * line_bytes); }
};

// Tag/valid/dirty array with true-LRU replacement.
class CacheSets {
 public:
  struct Line {
    bool valid = false;
    bool dirty = false;
    uint32_t tag = 0;
    uint32_t lru = 0;  // 0 = most recently used
  };

  CacheSets(uint32_t sets, uint32_t ways, uint32_t line_bytes)
      : sets_(sets), ways_(ways), line_bytes_(line_bytes), lines_(sets * ways) {
    for (uint32_t s = 0; s < sets; ++s)
      for (uint32_t w = 0; w < ways; ++w) line(s, w).lru = w;
  }

  uint32_t set_of(uint32_t line_addr) const { return line_addr % sets_; }
  uint32_t tag_of(uint32_t line_addr) const { return line_addr / sets_; }

  Line& line(uint32_t set, uint32_t way) { return lines_[set * ways_ + way]; }
  const Line& line(uint32_t set, uint32_t way) const { return lines_[set * ways_ + way]; }

  std::optional<uint32_t> lookup(uint32_t line_addr) const {
    const uint32_t s = set_of(line_addr), t = tag_of(line_addr);
    for (uint32_t w = 0; w < ways_; ++w) {
      const Line& l = line(s, w);
      if (l.valid && l.tag == t) return w;
    }
    return std::nullopt;
  }

  void touch(uint32_t set, uint32_t way) {
    const uint32_t old = line(set, way).lru;
    for (uint32_t w = 0; w < ways_; ++w) {
      Line& l = line(set, w);
      if (l.lru < old) ++l.lru;
    }
    line(set, way).lru = 0;
  }

  // Install a line; returns the evicted dirty line address if any.
  std::optional<uint32_t> install(uint32_t line_addr, bool dirty, bool promote) {
    const uint32_t s = set_of(line_addr);
    uint32_t victim = 0;
    bool found_invalid = false;
    for (uint32_t w = 0; w < ways_; ++w) {
      if (!line(s, w).valid) {
        victim = w;
        found_invalid = true;
        break;
      }
    }
    if (!found_invalid) {
      for (uint32_t w = 0; w < ways_; ++w)
        if (line(s, w).lru == ways_ - 1) victim = w;
    }
    Line& l = line(s, victim);
    std::optional<uint32_t> evicted;
    if (l.valid && l.dirty) evicted = l.tag * sets_ + s;
    l.valid = true;
    l.dirty = dirty;
    l.tag = tag_of(line_addr);
    if (promote)
      touch(s, victim);
    else
      demote(s, victim);
    return evicted;
  }

  uint32_t sets() const { return sets_; }
  uint32_t ways() const { return ways_; }
  uint32_t line_bytes() const { return line_bytes_; }

  template <typename Fn>
  void for_each_line(Fn&& fn) {
    for (uint32_t s = 0; s < sets_; ++s)
      for (uint32_t w = 0; w < ways_; ++w) fn(line(s, w), s, w);
  }

 private:
  // place at LRU without disturbing the other ranks (prefetch installs)
  void demote(uint32_t set, uint32_t way) {
    const uint32_t old = line(set, way).lru;
    for (uint32_t w = 0; w < ways_; ++w) {
      Line& l = line(set, w);
      if (l.lru > old) --l.lru;
    }
    line(set, way).lru = ways_ - 1;
  }

  uint32_t sets_, ways_, line_bytes_;
  std::vector<Line> lines_;
};

struct DcacheAccess {
  uint32_t addr = 0;
  uint32_t size = 4;
  bool is_store = false;
};

struct DcacheResult {
  bool accepted = false;
  bool hit = false;
  bool merged = false;           // folded into a pending fill
  bool rejected_mshr_full = false;
  uint64_t response_cycle = 0;   // loads: data ready; stores: meaningless past acceptance
};

// Common interface for the two interchangeable data-cache timing models.
class DCacheModel {
 public:
  virtual ~DCacheModel() = default;
  virtual DcacheResult try_access(const DcacheAccess& req, uint64_t cycle) = 0;
  virtual void tick(uint64_t cycle) = 0;
  virtual void drain(Stats* stats) = 0;  // flush dirty lines, accounting only
  virtual DCacheKind kind() const = 0;
  virtual CacheSets& sets() = 0;
};

// Blocking write-back cache: a miss occupies the whole cache until the fill
// (and any dirty-victim writeback) completes; nothing else is accepted.
class LegacyDCache : public DCacheModel {
 public:
  LegacyDCache(const CacheConfig& cfg, MainMemory* mem, Stats* stats)
      : cfg_(cfg), sets_(cfg.num_sets(), cfg.ways, cfg.line_bytes), mem_(mem), stats_(stats) {}

  static constexpr uint32_t kHitLatency = 2;

  DcacheResult try_access(const DcacheAccess& req, uint64_t cycle) override {
    DcacheResult res;
    if (cycle < busy_until_ || last_access_cycle_ == cycle) return res;
    const uint32_t line = req.addr / cfg_.line_bytes;

    if (auto way = sets_.lookup(line)) {
      // write-through stores forward to memory even on a hit
      if (req.is_store && cfg_.policy == WritePolicy::WriteThrough) {
        if (!mem_->try_submit(cycle + kHitLatency, req.addr, req.size, true)) return res;
      }
      last_access_cycle_ = cycle;
      sets_.touch(sets_.set_of(line), *way);
      if (req.is_store && cfg_.policy == WritePolicy::WriteBack)
        sets_.line(sets_.set_of(line), *way).dirty = true;
      res.accepted = true;
      res.hit = true;
      res.response_cycle = cycle + kHitLatency;
      ++stats_->dcache_hits;
      return res;
    }

    if (req.is_store && cfg_.policy == WritePolicy::WriteThrough) {
      // no allocate on write miss
      if (!mem_->try_submit(cycle + kHitLatency, req.addr, req.size, true)) return res;
      last_access_cycle_ = cycle;
      res.accepted = true;
      res.response_cycle = cycle + kHitLatency;
      ++stats_->dcache_misses;
      return res;
    }

    // allocate: fill first, then the victim writeback; both must finish
    // before the cache unblocks
    const auto fill = mem_->try_submit(cycle + kHitLatency, line * cfg_.line_bytes, cfg_.line_bytes, false);
    if (!fill) return res;
    uint64_t ready = *fill;
    const bool dirty = req.is_store && cfg_.policy == WritePolicy::WriteBack;
    if (auto evicted = sets_.install(line, dirty, true)) {
      const auto wb = mem_->try_submit(cycle + kHitLatency, *evicted * cfg_.line_bytes, cfg_.line_bytes, true);
      // queue depth is sized so a blocking cache can always stage fill+wb
      if (wb) ready = std::max(ready, *wb);
    }
    last_access_cycle_ = cycle;
    busy_until_ = ready;
    res.accepted = true;
    res.response_cycle = ready;
    ++stats_->dcache_misses;
    return res;
  }

  void tick(uint64_t) override {}

  void drain(Stats* stats) override {
    sets_.for_each_line([&](CacheSets::Line& l, uint32_t, uint32_t) {
      if (l.valid && l.dirty) {
        stats->mem_bytes_written += cfg_.line_bytes;
        l.dirty = false;
      }
    });
  }

  DCacheKind kind() const override { return DCacheKind::Legacy; }
  CacheSets& sets() override { return sets_; }
  uint64_t busy_until() const { return busy_until_; }

 private:
  CacheConfig cfg_;
  CacheSets sets_;
  MainMemory* mem_;
  Stats* stats_;
  uint64_t busy_until_ = 0;
  uint64_t last_access_cycle_ = ~0ull;
};

struct MshrWaiter {
  uint64_t request_id;
  uint32_t offset;
  bool is_write;
};

struct MshrEntry {
  uint32_t line_addr = 0;
  uint64_t fill_ready = 0;
  bool dirty_on_fill = false;
  bool prefetch = false;
  std::vector<MshrWaiter> waiters;  // arrival order
};

// Stride-confidence prefetcher with a next-line prior.
class StridePrefetcher {
 public:
  explicit StridePrefetcher(uint32_t degree = 2) : degree_(degree) {}

  std::vector<uint32_t> on_demand_miss(uint32_t miss_line) {
    std::vector<uint32_t> out;
    if (last_miss_line_) {
      const int32_t s = static_cast<int32_t>(miss_line) - static_cast<int32_t>(*last_miss_line_);
      if (s == stride_ && s != 0) {
        confidence_ = std::min(3, confidence_ + 1);
      } else {
        stride_ = s;
        confidence_ = s != 0 ? 1 : 0;
      }
    }
    last_miss_line_ = miss_line;
    if (confidence_ >= 2) {
      for (uint32_t k = 1; k <= degree_; ++k)
        out.push_back(miss_line + static_cast<uint32_t>(k * stride_));
    }
    return out;
  }

  int confidence() const { return confidence_; }
  int32_t stride() const { return stride_; }

 private:
  uint32_t degree_;
  std::optional<uint32_t> last_miss_line_;
  int32_t stride_ = 1;  // next-line prior
  int confidence_ = 0;
};

// Non-blocking 3-stage pipelined cache: hits keep flowing under outstanding
// misses, secondary misses merge into the pending MSHR entry, and fills
// install out of request order as memory returns them.
class HpdDCache : public DCacheModel {
 public:
  HpdDCache(const CacheConfig& cfg, MainMemory* mem, Stats* stats)
      : cfg_(cfg),
        sets_(cfg.num_sets(), cfg.ways, cfg.line_bytes),
        mem_(mem),
        stats_(stats),
        prefetcher_(cfg.prefetch_degree) {}

  static constexpr uint32_t kPipelineLatency = 2;  // accept, lookup, respond

  DcacheResult try_access(const DcacheAccess& req, uint64_t cycle) override {
    DcacheResult res;
    if (last_access_cycle_ == cycle) return res;  // one demand request per cycle per port
    const uint32_t line = req.addr / cfg_.line_bytes;

    if (auto way = sets_.lookup(line)) {
      if (req.is_store && cfg_.policy == WritePolicy::WriteThrough) {
        if (!mem_->try_submit(cycle + kPipelineLatency, req.addr, req.size, true)) return res;
      }
      last_access_cycle_ = cycle;
      sets_.touch(sets_.set_of(line), *way);
      if (req.is_store && cfg_.policy == WritePolicy::WriteBack)
        sets_.line(sets_.set_of(line), *way).dirty = true;
      res.accepted = true;
      res.hit = true;
      res.response_cycle = cycle + kPipelineLatency;
      ++stats_->dcache_hits;
      return res;
    }

    if (req.is_store && cfg_.policy == WritePolicy::WriteThrough) {
      if (!mem_->try_submit(cycle + kPipelineLatency, req.addr, req.size, true)) return res;
      last_access_cycle_ = cycle;
      res.accepted = true;
      res.response_cycle = cycle + kPipelineLatency;
      ++stats_->dcache_misses;
      return res;
    }

    if (auto it = mshr_.find(line); it != mshr_.end()) {
      // secondary miss: merge, no new memory request
      MshrEntry& e = it->second;
      last_access_cycle_ = cycle;
      e.waiters.push_back({next_request_id_++, req.addr % cfg_.line_bytes, req.is_store});
      if (req.is_store && cfg_.policy == WritePolicy::WriteBack) e.dirty_on_fill = true;
      if (e.prefetch) e.prefetch = false;  // now demand-owned: promote on fill
      res.accepted = true;
      res.merged = true;
      res.response_cycle = std::max(e.fill_ready, cycle + static_cast<uint64_t>(kPipelineLatency));
      ++stats_->mshr_merges;
      return res;
    }

    if (mshr_.size() >= cfg_.mshr_depth) {
      res.rejected_mshr_full = true;
      ++stats_->mshr_full_events;
      return res;
    }

    const auto fill = mem_->try_submit(cycle + kPipelineLatency, line * cfg_.line_bytes, cfg_.line_bytes, false);
    if (!fill) return res;
    last_access_cycle_ = cycle;
    MshrEntry e;
    e.line_addr = line;
    e.fill_ready = *fill;
    e.dirty_on_fill = req.is_store && cfg_.policy == WritePolicy::WriteBack;
    e.waiters.push_back({next_request_id_++, req.addr % cfg_.line_bytes, req.is_store});
    mshr_.emplace(line, std::move(e));
    res.accepted = true;
    res.response_cycle = *fill;
    ++stats_->dcache_misses;

    if (cfg_.prefetch) {
      for (uint32_t pl : prefetcher_.on_demand_miss(line)) prefetch_queue_.push_back(pl);
    }
    return res;
  }

  void tick(uint64_t cycle) override {
    // fills install in fill_ready order; evicted dirty victims go back to memory
    for (auto it = mshr_.begin(); it != mshr_.end();) {
      if (it->second.fill_ready <= cycle) {
        const MshrEntry& e = it->second;
        if (auto evicted = sets_.install(e.line_addr, e.dirty_on_fill, !e.prefetch)) {
          pending_evictions_.push_back(*evicted);
        }
        it = mshr_.erase(it);
      } else {
        ++it;
      }
    }
    while (!pending_evictions_.empty()) {
      if (!mem_->try_submit(cycle, pending_evictions_.front() * cfg_.line_bytes, cfg_.line_bytes, true))
        break;
      pending_evictions_.pop_front();
    }
    // prefetch port: one issue per cycle
    if (!prefetch_queue_.empty()) {
      const uint32_t line = prefetch_queue_.front();
      prefetch_queue_.pop_front();
      if (!sets_.lookup(line) && !mshr_.count(line)) {
        if (mshr_.size() < cfg_.mshr_depth) {
          if (auto fill = mem_->try_submit(cycle, line * cfg_.line_bytes, cfg_.line_bytes, false)) {
            MshrEntry e;
            e.line_addr = line;
            e.fill_ready = *fill;
            e.prefetch = true;  // installs clean, not LRU-promoted, no waiters
            mshr_.emplace(line, std::move(e));
            ++stats_->prefetches_issued;
          } else {
            prefetch_queue_.push_front(line);  // memory queue full: retry
          }
        }
        // MSHR full: prefetch dropped
      }
    }
  }

  void drain(Stats* stats) override {
    sets_.for_each_line([&](CacheSets::Line& l, uint32_t, uint32_t) {
      if (l.valid && l.dirty) {
        stats->mem_bytes_written += cfg_.line_bytes;
        l.dirty = false;
      }
    });
  }

  DCacheKind kind() const override { return DCacheKind::Hpd; }
  CacheSets& sets() override { return sets_; }

  size_t mshr_live() const { return mshr_.size(); }
  const std::map<uint32_t, MshrEntry>& mshr() const { return mshr_; }
  const StridePrefetcher& prefetcher() const { return prefetcher_; }

 private:
  CacheConfig cfg_;
  CacheSets sets_;
  MainMemory* mem_;
  Stats* stats_;
  StridePrefetcher prefetcher_;
  std::map<uint32_t, MshrEntry> mshr_;  // keyed by line: one entry per line
  std::deque<uint32_t> prefetch_queue_;
  std::deque<uint32_t> pending_evictions_;
  uint64_t last_access_cycle_ = ~0ull;
  uint64_t next_request_id_ = 0;
};

inline std::unique_ptr<DCacheModel> make_dcache(const CacheConfig& cfg, MainMemory* mem, Stats* stats) {
  if (cfg.kind == DCacheKind::Legacy) return std::make_unique<LegacyDCache>(cfg, mem, stats);
  return std::make_unique<HpdDCache>(cfg, mem, stats);
}

// Blocking instruction cache with a 1-cycle hit path; misses go through the
// shared memory model one fill at a time.
class ICacheModel {
 public:
  ICacheModel(const CacheConfig& cfg, MainMemory* mem, Stats* stats)
      : cfg_(cfg), sets_(cfg.num_sets(), cfg.ways, cfg.line_bytes), mem_(mem), stats_(stats) {}

  // True when the line holding addr can serve a fetch this cycle.
  bool available(uint32_t addr, uint64_t cycle) {
    const uint32_t line = addr / cfg_.line_bytes;
    if (auto way = sets_.lookup(line)) {
      sets_.touch(sets_.set_of(line), *way);
      return true;
    }
    request_fill(line, cycle);
    return false;
  }

  bool present(uint32_t addr) const { return sets_.lookup(addr / cfg_.line_bytes).has_value(); }

  void tick(uint64_t cycle) {
    if (fill_pending_ && fill_ready_ <= cycle) {
      sets_.install(fill_line_, false, true);
      fill_pending_ = false;
    }
  }

  CacheSets& sets() { return sets_; }

 private:
  void request_fill(uint32_t line, uint64_t cycle) {
    if (fill_pending_) return;  // blocking: one outstanding fill
    if (auto done = mem_->try_submit(cycle + 1, line * cfg_.line_bytes, cfg_.line_bytes, false)) {
      fill_pending_ = true;
      fill_line_ = line;
      fill_ready_ = *done;
      ++stats_->icache_misses;
    }
  }

  CacheConfig cfg_;
  CacheSets sets_;
  MainMemory* mem_;
  Stats* stats_;
  bool fill_pending_ = false;
  uint32_t fill_line_ = 0;
  uint64_t fill_ready_ = 0;
};

}  // namespace rvsim
