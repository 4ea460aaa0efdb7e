#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>

namespace rvsim {

// Sparse byte-addressable 32-bit space: 4 KiB pages allocated on first
// write, reads of untouched bytes return zero.
class SparseMemory {
 public:
  static constexpr uint32_t kPageBytes = 4096;

  uint8_t load8(uint32_t addr) const {
    const auto it = pages_.find(addr / kPageBytes);
    if (it == pages_.end()) return 0;
    return (*it->second)[addr % kPageBytes];
  }

  void store8(uint32_t addr, uint8_t v) { page(addr / kPageBytes)[addr % kPageBytes] = v; }

  uint16_t load16(uint32_t addr) const {
    return static_cast<uint16_t>(load8(addr) | (load8(addr + 1) << 8));
  }
  uint32_t load32(uint32_t addr) const {
    return static_cast<uint32_t>(load16(addr)) | (static_cast<uint32_t>(load16(addr + 2)) << 16);
  }
  void store16(uint32_t addr, uint16_t v) {
    store8(addr, v & 0xFF);
    store8(addr + 1, v >> 8);
  }
  void store32(uint32_t addr, uint32_t v) {
    store16(addr, static_cast<uint16_t>(v));
    store16(addr + 2, static_cast<uint16_t>(v >> 16));
  }

  uint32_t load(uint32_t addr, uint32_t size) const {
    switch (size) {
      case 1: return load8(addr);
      case 2: return load16(addr);
      default: return load32(addr);
    }
  }
  void store(uint32_t addr, uint32_t size, uint32_t v) {
    switch (size) {
      case 1: store8(addr, static_cast<uint8_t>(v)); break;
      case 2: store16(addr, static_cast<uint16_t>(v)); break;
      default: store32(addr, v); break;
    }
  }

  void write_block(uint32_t addr, const uint8_t* data, size_t n) {
    for (size_t i = 0; i < n; ++i) store8(addr + static_cast<uint32_t>(i), data[i]);
  }

  bool page_mapped(uint32_t addr) const { return pages_.count(addr / kPageBytes) != 0; }

  // Full-image equality; pages absent on one side compare as all-zero.
  bool equals(const SparseMemory& other) const {
    return covers(other) && other.covers(*this);
  }

  template <typename Fn>
  void first_difference(const SparseMemory& other, Fn&& on_diff) const {
    for (const auto& [pno, pg] : pages_) {
      for (uint32_t i = 0; i < kPageBytes; ++i) {
        const uint32_t addr = pno * kPageBytes + i;
        if ((*pg)[i] != other.load8(addr)) {
          on_diff(addr, (*pg)[i], other.load8(addr));
          return;
        }
      }
    }
    for (const auto& [pno, pg] : other.pages_) {
      if (pages_.count(pno)) continue;
      for (uint32_t i = 0; i < kPageBytes; ++i) {
        const uint32_t addr = pno * kPageBytes + i;
        if ((*pg)[i] != 0) {
          on_diff(addr, 0, (*pg)[i]);
          return;
        }
      }
    }
  }

 private:
  using Page = std::array<uint8_t, kPageBytes>;

  bool covers(const SparseMemory& other) const {
    for (const auto& [pno, pg] : pages_) {
      for (uint32_t i = 0; i < kPageBytes; ++i) {
        if ((*pg)[i] != other.load8(pno * kPageBytes + i)) return false;
      }
    }
    return true;
  }

  Page& page(uint32_t pno) {
    auto& p = pages_[pno];
    if (!p) {
      p = std::make_unique<Page>();
      p->fill(0);
    }
    return *p;
  }

  // ordered map keeps iteration (image compare, serialization) deterministic
  std::map<uint32_t, std::unique_ptr<Page>> pages_;

 public:
  SparseMemory() = default;
  SparseMemory(const SparseMemory& o) { *this = o; }
  SparseMemory& operator=(const SparseMemory& o) {
    pages_.clear();
    for (const auto& [pno, pg] : o.pages_) pages_[pno] = std::make_unique<Page>(*pg);
    return *this;
  }
  SparseMemory(SparseMemory&&) = default;
  SparseMemory& operator=(SparseMemory&&) = default;
};

}  // namespace rvsim
