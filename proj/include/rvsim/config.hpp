#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rvsim/isa.hpp"
#include "rvsim/memsys.hpp"
#include "rvsim/predictor.hpp"

namespace rvsim {

struct FuLatencies {
  uint32_t mul = 2;
  uint32_t div = 21;      // iterative, unpipelined
  uint32_t fpu_add = 3;   // also fmul; pipelined
  uint32_t fpu_div = 11;  // unpipelined
};

struct IssueConfig {
  uint32_t width = 2;              // 1 or 2
  bool renaming_enabled = true;
  bool alu_alu_forwarding = true;
  bool fpu_present = true;
  uint32_t scoreboard_depth = 8;
  uint32_t max_unresolved_branches = 2;
  FuLatencies latencies;
};

struct SimConfig {
  std::string name = "custom";
  IssueConfig issue;
  PredictorConfig bp;
  uint32_t btb_entries = 64;
  CacheConfig dcache;
  CacheConfig icache{16384, 4, 64, WritePolicy::WriteBack, DCacheKind::Legacy, 1, false, 0};
  MemConfig mem;
  bool lsu_output_register = true;  // +1 cycle on load data
  uint64_t max_cycles = 100'000'000;
  uint64_t deadlock_cycles = 10'000;
  bool cosim_enabled = false;
  bool trace_enabled = false;

  IsaFeatures isa() const {
    IsaFeatures f;
    f.f = issue.fpu_present;
    return f;
  }
};

// The paper's three core variants as named feature matrices.
inline SimConfig preset_config(const std::string& name) {
  SimConfig c;
  c.name = name;
  if (name == "cva6") {
    c.issue.width = 1;
    c.issue.renaming_enabled = false;
    c.issue.alu_alu_forwarding = false;
    c.issue.fpu_present = true;
    c.bp.kind = PredictorKind::Bimodal;
    c.dcache.kind = DCacheKind::Legacy;
  } else if (name == "cva6s") {
    c.issue.width = 2;
    c.issue.renaming_enabled = false;
    c.issue.alu_alu_forwarding = false;
    c.issue.fpu_present = false;  // no F extension in this variant
    c.bp.kind = PredictorKind::Bimodal;
    c.dcache.kind = DCacheKind::Legacy;
  } else if (name == "cva6s+") {
    c.issue.width = 2;
    c.issue.renaming_enabled = true;
    c.issue.alu_alu_forwarding = true;
    c.issue.fpu_present = true;
    c.bp.kind = PredictorKind::TwoLevel;
    c.dcache.kind = DCacheKind::Hpd;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return c;
}

// Flat `key = value` configuration, shared by config files and CLI overrides.
inline void apply_config_key(SimConfig& c, const std::string& key, const std::string& value) {
  auto as_bool = [&]() {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw std::invalid_argument("bad boolean for " + key + ": " + value);
  };
  auto as_u32 = [&]() { return static_cast<uint32_t>(std::stoul(value)); };
  auto as_u64 = [&]() { return static_cast<uint64_t>(std::stoull(value)); };

  if (key == "issue.width") c.issue.width = as_u32();
  else if (key == "issue.renaming") c.issue.renaming_enabled = as_bool();
  else if (key == "issue.alu_forwarding") c.issue.alu_alu_forwarding = as_bool();
  else if (key == "issue.fpu") c.issue.fpu_present = as_bool();
  else if (key == "issue.scoreboard_depth") c.issue.scoreboard_depth = as_u32();
  else if (key == "issue.max_unresolved_branches") c.issue.max_unresolved_branches = as_u32();
  else if (key == "lat.mul") c.issue.latencies.mul = as_u32();
  else if (key == "lat.div") c.issue.latencies.div = as_u32();
  else if (key == "lat.fpu_add") c.issue.latencies.fpu_add = as_u32();
  else if (key == "lat.fpu_div") c.issue.latencies.fpu_div = as_u32();
  else if (key == "lsu.output_register") c.lsu_output_register = as_bool();
  else if (key == "bp.kind") {
    if (value == "bimodal") c.bp.kind = PredictorKind::Bimodal;
    else if (value == "two-level") c.bp.kind = PredictorKind::TwoLevel;
    else throw std::invalid_argument("bad bp.kind: " + value);
  } else if (key == "bp.entries") c.bp.entries = as_u32();
  else if (key == "bp.history_bits") c.bp.history_bits = as_u32();
  else if (key == "btb.entries") c.btb_entries = as_u32();
  else if (key == "dcache.kind") {
    if (value == "legacy") c.dcache.kind = DCacheKind::Legacy;
    else if (value == "hpd") c.dcache.kind = DCacheKind::Hpd;
    else throw std::invalid_argument("bad dcache.kind: " + value);
  } else if (key == "dcache.size") c.dcache.size_bytes = as_u32();
  else if (key == "dcache.ways") c.dcache.ways = as_u32();
  else if (key == "dcache.line") c.dcache.line_bytes = as_u32();
  else if (key == "dcache.policy") {
    if (value == "write-back") c.dcache.policy = WritePolicy::WriteBack;
    else if (value == "write-through") c.dcache.policy = WritePolicy::WriteThrough;
    else throw std::invalid_argument("bad dcache.policy: " + value);
  } else if (key == "dcache.mshr") c.dcache.mshr_depth = as_u32();
  else if (key == "dcache.prefetch") c.dcache.prefetch = as_bool();
  else if (key == "icache.size") c.icache.size_bytes = as_u32();
  else if (key == "icache.ways") c.icache.ways = as_u32();
  else if (key == "mem.latency") c.mem.latency_cycles = as_u32();
  else if (key == "mem.bytes_per_cycle") c.mem.bytes_per_cycle = as_u32();
  else if (key == "max_cycles") c.max_cycles = as_u64();
  else if (key == "deadlock_cycles") c.deadlock_cycles = as_u64();
  else if (key == "cosim") c.cosim_enabled = as_bool();
  else throw std::invalid_argument("unknown config key: " + key);
}

// Parse flat `key = value` text; '#' starts a comment.
inline void parse_config_text(SimConfig& c, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing '='");
    apply_config_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

// Echo of the effective configuration under the documented key names.
inline std::map<std::string, std::string> config_echo(const SimConfig& c) {
  std::map<std::string, std::string> m;
  auto b = [](bool v) { return v ? std::string("true") : std::string("false"); };
  m["preset"] = c.name;
  m["issue.width"] = std::to_string(c.issue.width);
  m["issue.renaming"] = b(c.issue.renaming_enabled);
  m["issue.alu_forwarding"] = b(c.issue.alu_alu_forwarding);
  m["issue.fpu"] = b(c.issue.fpu_present);
  m["bp.kind"] = c.bp.kind == PredictorKind::Bimodal ? "bimodal" : "two-level";
  m["bp.entries"] = std::to_string(c.bp.entries);
  m["bp.history_bits"] = std::to_string(c.bp.history_bits);
  m["btb.entries"] = std::to_string(c.btb_entries);
  m["dcache.kind"] = c.dcache.kind == DCacheKind::Legacy ? "legacy" : "hpd";
  m["dcache.size"] = std::to_string(c.dcache.size_bytes);
  m["dcache.ways"] = std::to_string(c.dcache.ways);
  m["dcache.policy"] = c.dcache.policy == WritePolicy::WriteBack ? "write-back" : "write-through";
  m["dcache.mshr"] = std::to_string(c.dcache.mshr_depth);
  m["dcache.prefetch"] = b(c.dcache.prefetch);
  m["icache.size"] = std::to_string(c.icache.size_bytes);
  m["icache.ways"] = std::to_string(c.icache.ways);
  m["lsu.output_register"] = b(c.lsu_output_register);
  m["mem.latency"] = std::to_string(c.mem.latency_cycles);
  m["mem.bytes_per_cycle"] = std::to_string(c.mem.bytes_per_cycle);
  return m;
}

}  // namespace rvsim
