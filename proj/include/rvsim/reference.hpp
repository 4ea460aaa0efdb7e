#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rvsim/decode.hpp"
#include "rvsim/exec.hpp"
#include "rvsim/mem.hpp"

namespace rvsim {

// One retired instruction, the unit of co-simulation comparison.
struct RetireRecord {
  uint32_t pc = 0;
  Mnemonic mnemonic = Mnemonic::ILLEGAL;
  uint8_t rd = 0;
  bool rd_fp = false;
  std::optional<uint32_t> wb_value;
  std::optional<uint32_t> mem_addr;
  std::optional<uint32_t> mem_data;  // store data (write) or loaded value (read)
  std::optional<bool> is_branch_taken;

  bool operator==(const RetireRecord& o) const {
    return pc == o.pc && mnemonic == o.mnemonic && rd == o.rd && rd_fp == o.rd_fp &&
           wb_value == o.wb_value && mem_addr == o.mem_addr && mem_data == o.mem_data &&
           is_branch_taken == o.is_branch_taken;
  }
};

enum class StopKind : uint8_t {
  Running,
  Ebreak,
  Ecall,
  TohostWrite,
  Trap,
  StepLimit,
};

struct StopInfo {
  StopKind kind = StopKind::Running;
  TrapCause trap = TrapCause::None;
  uint32_t pc = 0;          // pc of the terminating instruction / trap
  uint32_t exit_code = 0;   // from tohost writes

  bool is_exit() const { return kind != StopKind::Running; }
  bool operator==(const StopInfo& o) const {
    return kind == o.kind && trap == o.trap && pc == o.pc && exit_code == o.exit_code;
  }
};

// Architectural state of the golden model. x[0] always reads zero.
struct ArchState {
  uint32_t pc = 0;
  uint32_t x[32] = {};
  uint32_t f[32] = {};
  SparseMemory mem;
  std::optional<uint32_t> reservation;
  uint64_t retired = 0;

  uint32_t reg(uint8_t i) const { return i == 0 ? 0 : x[i]; }
  void set_reg(uint8_t i, uint32_t v) {
    if (i != 0) x[i] = v;
  }
};

struct StepResult {
  StopInfo stop;             // Running if the instruction retired normally
  RetireRecord record;       // valid unless stop.kind == Trap with no retirement
  bool retired = false;
};

class Reference {
 public:
  ArchState state;
  IsaFeatures isa;
  std::optional<uint32_t> tohost_addr;
  uint64_t misaligned_accesses = 0;

  DecodedInst fetch_decode(uint32_t pc) const {
    if ((state.mem.load16(pc) & 3) != 3) return decode16(state.mem.load16(pc), pc);
    return decode32(state.mem.load32(pc), pc);
  }

  // Execute exactly one instruction. EBREAK/ECALL/tohost writes retire and
  // then stop the run; traps stop without retiring.
  StepResult step() {
    StepResult res;
    if (state.pc & 1) {
      res.stop = {StopKind::Trap, TrapCause::MisalignedFetch, state.pc, 0};
      return res;
    }
    const DecodedInst d = fetch_decode(state.pc);
    if (d.mnemonic == Mnemonic::ILLEGAL || !isa.allows(d)) {
      res.stop = {StopKind::Trap, TrapCause::IllegalInstruction, state.pc, 0};
      return res;
    }

    RetireRecord& rec = res.record;
    rec.pc = d.pc;
    rec.mnemonic = d.mnemonic;
    rec.rd = d.rd;
    rec.rd_fp = d.rd_fp;

    uint32_t next_pc = d.pc + d.size_bytes;
    const uint32_t a = d.rs1_fp ? state.f[d.rs1] : state.reg(d.rs1);
    const uint32_t b = d.rs2_fp ? state.f[d.rs2] : state.reg(d.rs2);

    auto write_rd = [&](uint32_t v) {
      if (d.rd_fp) {
        state.f[d.rd] = v;
        rec.wb_value = v;
      } else {
        state.set_reg(d.rd, v);
        if (d.rd != 0) rec.wb_value = v;
      }
    };
    auto do_store = [&](uint32_t addr, uint32_t size, uint32_t data) {
      if (addr % size != 0) ++misaligned_accesses;
      state.mem.store(addr, size, data);
      state.reservation.reset();  // any store breaks an open reservation
      rec.mem_addr = addr;
      rec.mem_data = data;
      if (tohost_addr && addr == *tohost_addr) {
        res.stop = {StopKind::TohostWrite, TrapCause::None, d.pc,
                    (data & 1) ? (data >> 1) : data};
      }
    };

    switch (d.opclass) {
      case OpClass::ALU:
        write_rd(exec::int_op(d.mnemonic, a, b, d.imm, d.pc));
        break;
      case OpClass::MUL:
      case OpClass::DIV:
        write_rd(exec::int_op(d.mnemonic, a, b, d.imm, d.pc));
        break;
      case OpClass::BRANCH: {
        const bool taken = exec::branch_taken(d.mnemonic, a, b);
        rec.is_branch_taken = taken;
        if (taken) next_pc = d.pc + static_cast<uint32_t>(d.imm);
        break;
      }
      case OpClass::JUMP: {
        uint32_t target;
        if (d.mnemonic == Mnemonic::JAL) {
          target = d.pc + static_cast<uint32_t>(d.imm);
        } else {
          target = (a + static_cast<uint32_t>(d.imm)) & ~1u;
        }
        write_rd(d.pc + d.size_bytes);
        rec.is_branch_taken = true;
        next_pc = target;
        break;
      }
      case OpClass::LOAD: {
        const uint32_t addr = a + static_cast<uint32_t>(d.imm);
        const uint32_t size = d.mem_size();
        if (addr % size != 0) ++misaligned_accesses;
        const uint32_t raw = state.mem.load(addr, size);
        const uint32_t v = exec::sign_extend_load(d.mnemonic, raw);
        rec.mem_addr = addr;
        rec.mem_data = v;
        write_rd(v);
        break;
      }
      case OpClass::FLOAD: {
        const uint32_t addr = a + static_cast<uint32_t>(d.imm);
        if (addr % 4 != 0) ++misaligned_accesses;
        const uint32_t v = state.mem.load32(addr);
        rec.mem_addr = addr;
        rec.mem_data = v;
        write_rd(v);
        break;
      }
      case OpClass::STORE:
        do_store(a + static_cast<uint32_t>(d.imm), d.mem_size(), b);
        break;
      case OpClass::FSTORE:
        do_store(a + static_cast<uint32_t>(d.imm), 4, b);
        break;
      case OpClass::AMO: {
        const uint32_t addr = a;
        if (d.mnemonic == Mnemonic::LR_W) {
          const uint32_t v = state.mem.load32(addr);
          state.reservation = addr;
          rec.mem_addr = addr;
          rec.mem_data = v;
          write_rd(v);
        } else if (d.mnemonic == Mnemonic::SC_W) {
          const bool success = state.reservation && *state.reservation == addr;
          if (success) {
            do_store(addr, 4, b);
          } else {
            state.reservation.reset();
          }
          write_rd(success ? 0 : 1);
        } else {
          const uint32_t loaded = state.mem.load32(addr);
          const uint32_t newval = exec::amo_op(d.mnemonic, loaded, b);
          do_store(addr, 4, newval);
          write_rd(loaded);
        }
        break;
      }
      case OpClass::CSR: {
        const uint32_t v = exec::csr_read(d.imm, state.retired);
        write_rd(v);
        break;
      }
      case OpClass::FPU: {
        write_rd(exec::fpu_op(d.mnemonic, a, b));
        break;
      }
      case OpClass::SYSTEM:
        if (d.mnemonic == Mnemonic::EBREAK) {
          res.stop = {StopKind::Ebreak, TrapCause::None, d.pc, 0};
        } else if (d.mnemonic == Mnemonic::ECALL) {
          res.stop = {StopKind::Ecall, TrapCause::None, d.pc, 0};
        }
        // FENCE: no-op
        break;
    }

    state.pc = next_pc;
    state.retired += 1;
    res.retired = true;
    return res;
  }

  // Run until the exit protocol fires or max_steps instructions retired.
  StopInfo run(uint64_t max_steps, std::vector<RetireRecord>* log = nullptr) {
    for (uint64_t i = 0; i < max_steps; ++i) {
      StepResult r = step();
      if (r.retired && log) log->push_back(r.record);
      if (r.stop.is_exit()) return r.stop;
    }
    return {StopKind::StepLimit, TrapCause::None, state.pc, 0};
  }
};

}  // namespace rvsim
