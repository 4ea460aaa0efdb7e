#pragma once

#include <optional>

#include "rvsim/isa.hpp"

namespace rvsim {

namespace detail {

inline int32_t sext(uint32_t v, int bits) {
  uint32_t m = 1u << (bits - 1);
  return static_cast<int32_t>((v ^ m) - m);
}

inline uint32_t bits(uint32_t v, int hi, int lo) {
  return (v >> lo) & ((1u << (hi - lo + 1)) - 1);
}

}  // namespace detail

// Decode a 32-bit encoding. Unknown patterns (including bitmanip and
// privileged instructions) come back as ILLEGAL.
inline DecodedInst decode32(uint32_t insn, uint32_t pc) {
  using detail::bits;
  using detail::sext;

  DecodedInst d;
  d.raw = insn;
  d.pc = pc;
  d.size_bytes = 4;
  d.rd = static_cast<uint8_t>(bits(insn, 11, 7));
  d.rs1 = static_cast<uint8_t>(bits(insn, 19, 15));
  d.rs2 = static_cast<uint8_t>(bits(insn, 24, 20));
  const uint32_t opcode = bits(insn, 6, 0);
  const uint32_t f3 = bits(insn, 14, 12);
  const uint32_t f7 = bits(insn, 31, 25);

  const int32_t imm_i = sext(insn >> 20, 12);
  const int32_t imm_s = sext((bits(insn, 31, 25) << 5) | bits(insn, 11, 7), 12);
  const int32_t imm_b = sext((bits(insn, 31, 31) << 12) | (bits(insn, 7, 7) << 11) |
                             (bits(insn, 30, 25) << 5) | (bits(insn, 11, 8) << 1), 13);
  const int32_t imm_u = static_cast<int32_t>(insn & 0xFFFFF000u);
  const int32_t imm_j = sext((bits(insn, 31, 31) << 20) | (bits(insn, 19, 12) << 12) |
                             (bits(insn, 20, 20) << 11) | (bits(insn, 30, 21) << 1), 21);

  auto ok = [&](Mnemonic m, OpClass c, int32_t imm) {
    d.mnemonic = m;
    d.opclass = c;
    d.imm = imm;
    return d;
  };
  auto illegal = [&]() {
    d = DecodedInst{};
    d.raw = insn;
    d.pc = pc;
    d.size_bytes = 4;
    return d;
  };

  switch (opcode) {
    case 0x37: return ok(Mnemonic::LUI, OpClass::ALU, imm_u);
    case 0x17: return ok(Mnemonic::AUIPC, OpClass::ALU, imm_u);
    case 0x6F: return ok(Mnemonic::JAL, OpClass::JUMP, imm_j);
    case 0x67:
      if (f3 != 0) return illegal();
      return ok(Mnemonic::JALR, OpClass::JUMP, imm_i);
    case 0x63:
      switch (f3) {
        case 0: return ok(Mnemonic::BEQ, OpClass::BRANCH, imm_b);
        case 1: return ok(Mnemonic::BNE, OpClass::BRANCH, imm_b);
        case 4: return ok(Mnemonic::BLT, OpClass::BRANCH, imm_b);
        case 5: return ok(Mnemonic::BGE, OpClass::BRANCH, imm_b);
        case 6: return ok(Mnemonic::BLTU, OpClass::BRANCH, imm_b);
        case 7: return ok(Mnemonic::BGEU, OpClass::BRANCH, imm_b);
        default: return illegal();
      }
    case 0x03:
      switch (f3) {
        case 0: return ok(Mnemonic::LB, OpClass::LOAD, imm_i);
        case 1: return ok(Mnemonic::LH, OpClass::LOAD, imm_i);
        case 2: return ok(Mnemonic::LW, OpClass::LOAD, imm_i);
        case 4: return ok(Mnemonic::LBU, OpClass::LOAD, imm_i);
        case 5: return ok(Mnemonic::LHU, OpClass::LOAD, imm_i);
        default: return illegal();
      }
    case 0x23:
      switch (f3) {
        case 0: return ok(Mnemonic::SB, OpClass::STORE, imm_s);
        case 1: return ok(Mnemonic::SH, OpClass::STORE, imm_s);
        case 2: return ok(Mnemonic::SW, OpClass::STORE, imm_s);
        default: return illegal();
      }
    case 0x13:
      switch (f3) {
        case 0: return ok(Mnemonic::ADDI, OpClass::ALU, imm_i);
        case 2: return ok(Mnemonic::SLTI, OpClass::ALU, imm_i);
        case 3: return ok(Mnemonic::SLTIU, OpClass::ALU, imm_i);
        case 4: return ok(Mnemonic::XORI, OpClass::ALU, imm_i);
        case 6: return ok(Mnemonic::ORI, OpClass::ALU, imm_i);
        case 7: return ok(Mnemonic::ANDI, OpClass::ALU, imm_i);
        case 1:
          if (f7 != 0) return illegal();
          return ok(Mnemonic::SLLI, OpClass::ALU, static_cast<int32_t>(d.rs2));
        case 5:
          if (f7 == 0x00) return ok(Mnemonic::SRLI, OpClass::ALU, static_cast<int32_t>(d.rs2));
          if (f7 == 0x20) return ok(Mnemonic::SRAI, OpClass::ALU, static_cast<int32_t>(d.rs2));
          return illegal();
        default: return illegal();
      }
    case 0x33:
      if (f7 == 0x01) {
        switch (f3) {
          case 0: return ok(Mnemonic::MUL, OpClass::MUL, 0);
          case 1: return ok(Mnemonic::MULH, OpClass::MUL, 0);
          case 2: return ok(Mnemonic::MULHSU, OpClass::MUL, 0);
          case 3: return ok(Mnemonic::MULHU, OpClass::MUL, 0);
          case 4: return ok(Mnemonic::DIV, OpClass::DIV, 0);
          case 5: return ok(Mnemonic::DIVU, OpClass::DIV, 0);
          case 6: return ok(Mnemonic::REM, OpClass::DIV, 0);
          case 7: return ok(Mnemonic::REMU, OpClass::DIV, 0);
        }
        return illegal();
      }
      if (f7 == 0x00) {
        switch (f3) {
          case 0: return ok(Mnemonic::ADD, OpClass::ALU, 0);
          case 1: return ok(Mnemonic::SLL, OpClass::ALU, 0);
          case 2: return ok(Mnemonic::SLT, OpClass::ALU, 0);
          case 3: return ok(Mnemonic::SLTU, OpClass::ALU, 0);
          case 4: return ok(Mnemonic::XOR, OpClass::ALU, 0);
          case 5: return ok(Mnemonic::SRL, OpClass::ALU, 0);
          case 6: return ok(Mnemonic::OR, OpClass::ALU, 0);
          case 7: return ok(Mnemonic::AND, OpClass::ALU, 0);
        }
        return illegal();
      }
      if (f7 == 0x20) {
        if (f3 == 0) return ok(Mnemonic::SUB, OpClass::ALU, 0);
        if (f3 == 5) return ok(Mnemonic::SRA, OpClass::ALU, 0);
        return illegal();
      }
      return illegal();
    case 0x0F:
      // FENCE / FENCE.I both behave as ordering no-ops on a single hart
      if (f3 == 0 || f3 == 1) return ok(Mnemonic::FENCE, OpClass::SYSTEM, 0);
      return illegal();
    case 0x73:
      if (f3 == 0) {
        if (insn == 0x00000073) return ok(Mnemonic::ECALL, OpClass::SYSTEM, 0);
        if (insn == 0x00100073) return ok(Mnemonic::EBREAK, OpClass::SYSTEM, 0);
        return illegal();  // privileged (mret/wfi/sfence...)
      }
      {
        const int32_t csr = static_cast<int32_t>(bits(insn, 31, 20));
        switch (f3) {
          case 1: return ok(Mnemonic::CSRRW, OpClass::CSR, csr);
          case 2: return ok(Mnemonic::CSRRS, OpClass::CSR, csr);
          case 3: return ok(Mnemonic::CSRRC, OpClass::CSR, csr);
          case 5: return ok(Mnemonic::CSRRWI, OpClass::CSR, csr);
          case 6: return ok(Mnemonic::CSRRSI, OpClass::CSR, csr);
          case 7: return ok(Mnemonic::CSRRCI, OpClass::CSR, csr);
          default: return illegal();
        }
      }
    case 0x2F: {
      if (f3 != 2) return illegal();
      const uint32_t f5 = bits(insn, 31, 27);
      switch (f5) {
        case 0x02:
          if (d.rs2 != 0) return illegal();
          return ok(Mnemonic::LR_W, OpClass::AMO, 0);
        case 0x03: return ok(Mnemonic::SC_W, OpClass::AMO, 0);
        case 0x01: return ok(Mnemonic::AMOSWAP_W, OpClass::AMO, 0);
        case 0x00: return ok(Mnemonic::AMOADD_W, OpClass::AMO, 0);
        case 0x04: return ok(Mnemonic::AMOXOR_W, OpClass::AMO, 0);
        case 0x0C: return ok(Mnemonic::AMOAND_W, OpClass::AMO, 0);
        case 0x08: return ok(Mnemonic::AMOOR_W, OpClass::AMO, 0);
        case 0x10: return ok(Mnemonic::AMOMIN_W, OpClass::AMO, 0);
        case 0x14: return ok(Mnemonic::AMOMAX_W, OpClass::AMO, 0);
        case 0x18: return ok(Mnemonic::AMOMINU_W, OpClass::AMO, 0);
        case 0x1C: return ok(Mnemonic::AMOMAXU_W, OpClass::AMO, 0);
        default: return illegal();
      }
    }
    case 0x07:
      if (f3 != 2) return illegal();
      d.rd_fp = true;
      return ok(Mnemonic::FLW, OpClass::FLOAD, imm_i);
    case 0x27:
      if (f3 != 2) return illegal();
      d.rs2_fp = true;
      return ok(Mnemonic::FSW, OpClass::FSTORE, imm_s);
    case 0x53: {
      // single-precision subset only; fmt field must be 00
      if (bits(insn, 26, 25) != 0) return illegal();
      switch (bits(insn, 31, 27)) {
        case 0x00: d.rd_fp = d.rs1_fp = d.rs2_fp = true; return ok(Mnemonic::FADD_S, OpClass::FPU, 0);
        case 0x01: d.rd_fp = d.rs1_fp = d.rs2_fp = true; return ok(Mnemonic::FSUB_S, OpClass::FPU, 0);
        case 0x02: d.rd_fp = d.rs1_fp = d.rs2_fp = true; return ok(Mnemonic::FMUL_S, OpClass::FPU, 0);
        case 0x03: d.rd_fp = d.rs1_fp = d.rs2_fp = true; return ok(Mnemonic::FDIV_S, OpClass::FPU, 0);
        case 0x04:
          d.rd_fp = d.rs1_fp = d.rs2_fp = true;
          if (f3 == 0) return ok(Mnemonic::FSGNJ_S, OpClass::FPU, 0);
          if (f3 == 1) return ok(Mnemonic::FSGNJN_S, OpClass::FPU, 0);
          if (f3 == 2) return ok(Mnemonic::FSGNJX_S, OpClass::FPU, 0);
          return illegal();
        case 0x18:
          d.rs1_fp = true;
          if (d.rs2 == 0) return ok(Mnemonic::FCVT_W_S, OpClass::FPU, 0);
          if (d.rs2 == 1) return ok(Mnemonic::FCVT_WU_S, OpClass::FPU, 0);
          return illegal();
        case 0x1A:
          d.rd_fp = true;
          if (d.rs2 == 0) return ok(Mnemonic::FCVT_S_W, OpClass::FPU, 0);
          if (d.rs2 == 1) return ok(Mnemonic::FCVT_S_WU, OpClass::FPU, 0);
          return illegal();
        case 0x1C:
          if (d.rs2 != 0 || f3 != 0) return illegal();
          d.rs1_fp = true;
          return ok(Mnemonic::FMV_X_W, OpClass::FPU, 0);
        case 0x1E:
          if (d.rs2 != 0 || f3 != 0) return illegal();
          d.rd_fp = true;
          return ok(Mnemonic::FMV_W_X, OpClass::FPU, 0);
        case 0x14:
          d.rs1_fp = d.rs2_fp = true;
          if (f3 == 2) return ok(Mnemonic::FEQ_S, OpClass::FPU, 0);
          if (f3 == 1) return ok(Mnemonic::FLT_S, OpClass::FPU, 0);
          if (f3 == 0) return ok(Mnemonic::FLE_S, OpClass::FPU, 0);
          return illegal();
        default: return illegal();
      }
    }
    default:
      return illegal();
  }
}

// Decode a 16-bit RV32C encoding, expanding to the 32-bit semantic
// equivalent (size_bytes stays 2).
inline DecodedInst decode16(uint16_t insn, uint32_t pc) {
  using detail::bits;
  using detail::sext;

  DecodedInst d;
  d.raw = insn;
  d.pc = pc;
  d.size_bytes = 2;

  auto ok = [&](Mnemonic m, OpClass c, uint8_t rd, uint8_t rs1, uint8_t rs2, int32_t imm) {
    d.mnemonic = m;
    d.opclass = c;
    d.rd = rd;
    d.rs1 = rs1;
    d.rs2 = rs2;
    d.imm = imm;
    return d;
  };
  auto illegal = [&]() { d = DecodedInst{}; d.raw = insn; d.pc = pc; d.size_bytes = 2; return d; };

  const uint32_t w = insn;
  const uint32_t op = w & 3;
  const uint32_t f3 = bits(w, 15, 13);
  const uint8_t rdc = static_cast<uint8_t>(8 + bits(w, 4, 2));    // rd'/rs2'
  const uint8_t rs1c = static_cast<uint8_t>(8 + bits(w, 9, 7));   // rs1'/rd'
  const uint8_t rfull = static_cast<uint8_t>(bits(w, 11, 7));

  if (w == 0) return illegal();  // defined illegal encoding

  if (op == 0) {
    switch (f3) {
      case 0: {  // c.addi4spn
        const uint32_t imm = (bits(w, 12, 11) << 4) | (bits(w, 10, 7) << 6) |
                             (bits(w, 6, 6) << 2) | (bits(w, 5, 5) << 3);
        if (imm == 0) return illegal();
        return ok(Mnemonic::ADDI, OpClass::ALU, rdc, 2, 0, static_cast<int32_t>(imm));
      }
      case 2: {  // c.lw
        const uint32_t imm = (bits(w, 12, 10) << 3) | (bits(w, 6, 6) << 2) | (bits(w, 5, 5) << 6);
        return ok(Mnemonic::LW, OpClass::LOAD, rdc, rs1c, 0, static_cast<int32_t>(imm));
      }
      case 3: {  // c.flw (RV32FC)
        const uint32_t imm = (bits(w, 12, 10) << 3) | (bits(w, 6, 6) << 2) | (bits(w, 5, 5) << 6);
        d.rd_fp = true;
        return ok(Mnemonic::FLW, OpClass::FLOAD, rdc, rs1c, 0, static_cast<int32_t>(imm));
      }
      case 6: {  // c.sw
        const uint32_t imm = (bits(w, 12, 10) << 3) | (bits(w, 6, 6) << 2) | (bits(w, 5, 5) << 6);
        return ok(Mnemonic::SW, OpClass::STORE, 0, rs1c, rdc, static_cast<int32_t>(imm));
      }
      case 7: {  // c.fsw
        const uint32_t imm = (bits(w, 12, 10) << 3) | (bits(w, 6, 6) << 2) | (bits(w, 5, 5) << 6);
        d.rs2_fp = true;
        return ok(Mnemonic::FSW, OpClass::FSTORE, 0, rs1c, rdc, static_cast<int32_t>(imm));
      }
      default:
        return illegal();  // c.fld/c.fsd need D
    }
  }

  if (op == 1) {
    switch (f3) {
      case 0: {  // c.nop / c.addi
        const int32_t imm = sext((bits(w, 12, 12) << 5) | bits(w, 6, 2), 6);
        return ok(Mnemonic::ADDI, OpClass::ALU, rfull, rfull, 0, imm);
      }
      case 1: {  // c.jal (RV32)
        const int32_t imm = sext((bits(w, 12, 12) << 11) | (bits(w, 11, 11) << 4) |
                                 (bits(w, 10, 9) << 8) | (bits(w, 8, 8) << 10) |
                                 (bits(w, 7, 7) << 6) | (bits(w, 6, 6) << 7) |
                                 (bits(w, 5, 3) << 1) | (bits(w, 2, 2) << 5), 12);
        return ok(Mnemonic::JAL, OpClass::JUMP, 1, 0, 0, imm);
      }
      case 2: {  // c.li
        const int32_t imm = sext((bits(w, 12, 12) << 5) | bits(w, 6, 2), 6);
        return ok(Mnemonic::ADDI, OpClass::ALU, rfull, 0, 0, imm);
      }
      case 3: {
        if (rfull == 2) {  // c.addi16sp
          const int32_t imm = sext((bits(w, 12, 12) << 9) | (bits(w, 4, 3) << 7) |
                                   (bits(w, 5, 5) << 6) | (bits(w, 2, 2) << 5) |
                                   (bits(w, 6, 6) << 4), 10);
          if (imm == 0) return illegal();
          return ok(Mnemonic::ADDI, OpClass::ALU, 2, 2, 0, imm);
        }
        // c.lui
        const int32_t imm = sext((bits(w, 12, 12) << 17) | (bits(w, 6, 2) << 12), 18);
        if (imm == 0) return illegal();
        return ok(Mnemonic::LUI, OpClass::ALU, rfull, 0, 0, imm);
      }
      case 4: {
        const uint32_t sub = bits(w, 11, 10);
        if (sub == 0 || sub == 1) {  // c.srli / c.srai
          if (bits(w, 12, 12) != 0) return illegal();  // shamt[5] reserved on RV32
          const int32_t sh = static_cast<int32_t>(bits(w, 6, 2));
          return ok(sub == 0 ? Mnemonic::SRLI : Mnemonic::SRAI, OpClass::ALU, rs1c, rs1c, 0, sh);
        }
        if (sub == 2) {  // c.andi
          const int32_t imm = sext((bits(w, 12, 12) << 5) | bits(w, 6, 2), 6);
          return ok(Mnemonic::ANDI, OpClass::ALU, rs1c, rs1c, 0, imm);
        }
        if (bits(w, 12, 12) != 0) return illegal();  // c.subw/c.addw are RV64
        switch (bits(w, 6, 5)) {
          case 0: return ok(Mnemonic::SUB, OpClass::ALU, rs1c, rs1c, rdc, 0);
          case 1: return ok(Mnemonic::XOR, OpClass::ALU, rs1c, rs1c, rdc, 0);
          case 2: return ok(Mnemonic::OR, OpClass::ALU, rs1c, rs1c, rdc, 0);
          case 3: return ok(Mnemonic::AND, OpClass::ALU, rs1c, rs1c, rdc, 0);
        }
        return illegal();
      }
      case 5: {  // c.j
        const int32_t imm = sext((bits(w, 12, 12) << 11) | (bits(w, 11, 11) << 4) |
                                 (bits(w, 10, 9) << 8) | (bits(w, 8, 8) << 10) |
                                 (bits(w, 7, 7) << 6) | (bits(w, 6, 6) << 7) |
                                 (bits(w, 5, 3) << 1) | (bits(w, 2, 2) << 5), 12);
        return ok(Mnemonic::JAL, OpClass::JUMP, 0, 0, 0, imm);
      }
      case 6:
      case 7: {  // c.beqz / c.bnez
        const int32_t imm = sext((bits(w, 12, 12) << 8) | (bits(w, 11, 10) << 3) |
                                 (bits(w, 6, 5) << 6) | (bits(w, 4, 3) << 1) |
                                 (bits(w, 2, 2) << 5), 9);
        return ok(f3 == 6 ? Mnemonic::BEQ : Mnemonic::BNE, OpClass::BRANCH, 0, rs1c, 0, imm);
      }
    }
    return illegal();
  }

  // op == 2
  switch (f3) {
    case 0: {  // c.slli
      if (bits(w, 12, 12) != 0) return illegal();
      const int32_t sh = static_cast<int32_t>(bits(w, 6, 2));
      return ok(Mnemonic::SLLI, OpClass::ALU, rfull, rfull, 0, sh);
    }
    case 2: {  // c.lwsp
      if (rfull == 0) return illegal();
      const uint32_t imm = (bits(w, 12, 12) << 5) | (bits(w, 6, 4) << 2) | (bits(w, 3, 2) << 6);
      return ok(Mnemonic::LW, OpClass::LOAD, rfull, 2, 0, static_cast<int32_t>(imm));
    }
    case 3: {  // c.flwsp
      const uint32_t imm = (bits(w, 12, 12) << 5) | (bits(w, 6, 4) << 2) | (bits(w, 3, 2) << 6);
      d.rd_fp = true;
      return ok(Mnemonic::FLW, OpClass::FLOAD, rfull, 2, 0, static_cast<int32_t>(imm));
    }
    case 4: {
      const uint8_t rs2 = static_cast<uint8_t>(bits(w, 6, 2));
      if (bits(w, 12, 12) == 0) {
        if (rs2 == 0) {  // c.jr
          if (rfull == 0) return illegal();
          return ok(Mnemonic::JALR, OpClass::JUMP, 0, rfull, 0, 0);
        }
        return ok(Mnemonic::ADD, OpClass::ALU, rfull, 0, rs2, 0);  // c.mv
      }
      if (rs2 == 0) {
        if (rfull == 0) return ok(Mnemonic::EBREAK, OpClass::SYSTEM, 0, 0, 0, 0);  // c.ebreak
        return ok(Mnemonic::JALR, OpClass::JUMP, 1, rfull, 0, 0);  // c.jalr
      }
      return ok(Mnemonic::ADD, OpClass::ALU, rfull, rfull, rs2, 0);  // c.add
    }
    case 6: {  // c.swsp
      const uint32_t imm = (bits(w, 12, 9) << 2) | (bits(w, 8, 7) << 6);
      return ok(Mnemonic::SW, OpClass::STORE, 0, 2, static_cast<uint8_t>(bits(w, 6, 2)), static_cast<int32_t>(imm));
    }
    case 7: {  // c.fswsp
      const uint32_t imm = (bits(w, 12, 9) << 2) | (bits(w, 8, 7) << 6);
      d.rs2_fp = true;
      return ok(Mnemonic::FSW, OpClass::FSTORE, 0, 2, static_cast<uint8_t>(bits(w, 6, 2)), static_cast<int32_t>(imm));
    }
    default:
      return illegal();  // c.fldsp/c.fsdsp need D
  }
}

enum class DecodeStatus : uint8_t { Ok, Truncated };

struct DecodeResult {
  DecodeStatus status = DecodeStatus::Ok;
  DecodedInst inst;  // valid when status == Ok (ILLEGAL mnemonic is still Ok)
};

// Decode one instruction from a 64-bit fetch window at an even byte offset.
// Truncated means a 32-bit encoding straddles the window end and the caller
// must refetch from inst.pc.
inline DecodeResult decode(const RawFetchWord& window, uint32_t offset) {
  DecodeResult r;
  const uint32_t pc = window.base_pc + offset;
  const uint16_t lo = static_cast<uint16_t>(window.bytes >> (8 * offset));
  if ((lo & 3) != 3) {
    r.inst = decode16(lo, pc);
    return r;
  }
  if (offset + 4 > 8) {
    r.status = DecodeStatus::Truncated;
    r.inst.pc = pc;
    return r;
  }
  const uint32_t word = static_cast<uint32_t>(window.bytes >> (8 * offset));
  r.inst = decode32(word, pc);
  return r;
}

}  // namespace rvsim
