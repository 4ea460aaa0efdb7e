#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "rvsim/isa.hpp"

namespace rvsim {

enum class PredictorKind : uint8_t { Bimodal, TwoLevel };

struct PredictorConfig {
  PredictorKind kind = PredictorKind::TwoLevel;
  uint32_t entries = 128;      // power of two
  uint32_t history_bits = 3;   // two-level only
};

inline void saturate_update(uint8_t& ctr, bool taken) {
  if (taken) {
    if (ctr < 3) ++ctr;
  } else {
    if (ctr > 0) --ctr;
  }
}

// One 2-bit counter per entry, indexed by pc bits [k+1:2].
class BimodalTable {
 public:
  explicit BimodalTable(uint32_t entries = 128) : counters_(entries, 1) {}

  bool predict(uint32_t pc) const { return counters_[index(pc)] >= 2; }
  void update(uint32_t pc, bool taken) { saturate_update(counters_[index(pc)], taken); }

  uint32_t index(uint32_t pc) const { return (pc >> 2) & (static_cast<uint32_t>(counters_.size()) - 1); }
  const std::vector<uint8_t>& counters() const { return counters_; }

 private:
  std::vector<uint8_t> counters_;
};

// Per-entry private history (default 128 entries x 3 bits), each entry with
// its own 2^h pattern table of 2-bit counters. History keeps the newest
// outcome in the LSB. Counters start weakly-not-taken, histories at zero.
class TwoLevelPredictor {
 public:
  explicit TwoLevelPredictor(uint32_t entries = 128, uint32_t history_bits = 3)
      : history_bits_(history_bits),
        history_(entries, 0),
        pattern_(entries * (1u << history_bits), 1) {}

  bool predict(uint32_t pc) const {
    const uint32_t e = index(pc);
    return counter_at(e, history_[e]) >= 2;
  }

  void update(uint32_t pc, bool taken) {
    const uint32_t e = index(pc);
    const uint8_t h = history_[e];
    saturate_update(pattern_[e * (1u << history_bits_) + h], taken);
    history_[e] = static_cast<uint8_t>(((h << 1) | (taken ? 1 : 0)) & ((1u << history_bits_) - 1));
  }

  uint32_t index(uint32_t pc) const { return (pc >> 1) & (static_cast<uint32_t>(history_.size()) - 1); }
  uint8_t history_at(uint32_t entry) const { return history_[entry]; }
  uint8_t counter_at(uint32_t entry, uint8_t hist) const {
    return pattern_[entry * (1u << history_bits_) + hist];
  }
  const std::vector<uint8_t>& histories() const { return history_; }
  const std::vector<uint8_t>& counters() const { return pattern_; }

 private:
  uint32_t history_bits_;
  std::vector<uint8_t> history_;
  std::vector<uint8_t> pattern_;
};

// Direction predictor facade used by the frontend.
class DirectionPredictor {
 public:
  explicit DirectionPredictor(const PredictorConfig& cfg = {})
      : kind_(cfg.kind),
        bimodal_(cfg.entries),
        two_level_(cfg.entries, cfg.history_bits) {}

  bool predict(uint32_t pc) const {
    return kind_ == PredictorKind::Bimodal ? bimodal_.predict(pc) : two_level_.predict(pc);
  }
  void update(uint32_t pc, bool taken) {
    if (kind_ == PredictorKind::Bimodal)
      bimodal_.update(pc, taken);
    else
      two_level_.update(pc, taken);
  }

  PredictorKind kind() const { return kind_; }
  const BimodalTable& bimodal() const { return bimodal_; }
  const TwoLevelPredictor& two_level() const { return two_level_; }

 private:
  PredictorKind kind_;
  BimodalTable bimodal_;
  TwoLevelPredictor two_level_;
};

enum class BtbKind : uint8_t { Branch, Jump };

// Direct-mapped, full-tag target buffer. Only consulted at fetch for
// register-indirect jumps; direct targets come from the decoded immediate.
class Btb {
 public:
  explicit Btb(uint32_t entries = 64) : entries_(entries) {}

  struct Hit {
    uint32_t target;
    BtbKind kind;
  };

  std::optional<Hit> lookup(uint32_t pc) const {
    const Entry& e = entries_[index(pc)];
    if (e.valid && e.tag == tag(pc)) return Hit{e.target, e.kind};
    return std::nullopt;
  }

  void update(uint32_t pc, uint32_t target, BtbKind kind) {
    Entry& e = entries_[index(pc)];
    e.valid = true;
    e.tag = tag(pc);
    e.target = target;
    e.kind = kind;
  }

 private:
  struct Entry {
    bool valid = false;
    uint32_t tag = 0;
    uint32_t target = 0;
    BtbKind kind = BtbKind::Branch;
  };

  uint32_t index(uint32_t pc) const { return (pc >> 1) & (static_cast<uint32_t>(entries_.size()) - 1); }
  uint32_t tag(uint32_t pc) const { return pc >> 1; }

  std::vector<Entry> entries_;
};

}  // namespace rvsim
