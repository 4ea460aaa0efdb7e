#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rvsim/mem.hpp"

namespace rvsim {

// Reserved device addresses (stores bypass the data cache).
constexpr uint32_t kRoiMarkerAddr = 0x8000F000;
constexpr uint32_t kRoiBegin = 1;
constexpr uint32_t kRoiEnd = 2;

struct ProgramSegment {
  uint32_t addr = 0;
  std::vector<uint8_t> bytes;
};

struct ProgramImage {
  std::vector<ProgramSegment> segments;
  uint32_t entry_pc = 0;
  std::optional<uint32_t> tohost_addr;
  std::string name = "program";

  void add_segment(uint32_t addr, std::vector<uint8_t> bytes) {
    segments.push_back({addr, std::move(bytes)});
  }

  void load_into(SparseMemory& mem) const {
    for (const auto& s : segments) mem.write_block(s.addr, s.bytes.data(), s.bytes.size());
  }

  bool contains(uint32_t addr) const {
    for (const auto& s : segments)
      if (addr >= s.addr && addr < s.addr + s.bytes.size()) return true;
    return false;
  }
};

}  // namespace rvsim
