#pragma once

#include "rvsim/fp.hpp"
#include "rvsim/isa.hpp"

namespace rvsim {
namespace exec {

// Integer ALU / MUL / DIV semantics, shared by the reference interpreter and
// the timing pipeline so the two can never drift apart arithmetically.
inline uint32_t int_op(Mnemonic m, uint32_t a, uint32_t b, int32_t imm, uint32_t pc) {
  const auto sa = static_cast<int32_t>(a);
  const auto sb = static_cast<int32_t>(b);
  switch (m) {
    case Mnemonic::LUI: return static_cast<uint32_t>(imm);
    case Mnemonic::AUIPC: return pc + static_cast<uint32_t>(imm);
    case Mnemonic::ADDI: return a + static_cast<uint32_t>(imm);
    case Mnemonic::SLTI: return sa < imm ? 1 : 0;
    case Mnemonic::SLTIU: return a < static_cast<uint32_t>(imm) ? 1 : 0;
    case Mnemonic::XORI: return a ^ static_cast<uint32_t>(imm);
    case Mnemonic::ORI: return a | static_cast<uint32_t>(imm);
    case Mnemonic::ANDI: return a & static_cast<uint32_t>(imm);
    case Mnemonic::SLLI: return a << (imm & 31);
    case Mnemonic::SRLI: return a >> (imm & 31);
    case Mnemonic::SRAI: return static_cast<uint32_t>(sa >> (imm & 31));
    case Mnemonic::ADD: return a + b;
    case Mnemonic::SUB: return a - b;
    case Mnemonic::SLL: return a << (b & 31);
    case Mnemonic::SLT: return sa < sb ? 1 : 0;
    case Mnemonic::SLTU: return a < b ? 1 : 0;
    case Mnemonic::XOR: return a ^ b;
    case Mnemonic::SRL: return a >> (b & 31);
    case Mnemonic::SRA: return static_cast<uint32_t>(sa >> (b & 31));
    case Mnemonic::OR: return a | b;
    case Mnemonic::AND: return a & b;
    case Mnemonic::MUL: return a * b;
    case Mnemonic::MULH: return static_cast<uint32_t>((static_cast<int64_t>(sa) * static_cast<int64_t>(sb)) >> 32);
    case Mnemonic::MULHSU: return static_cast<uint32_t>((static_cast<int64_t>(sa) * static_cast<uint64_t>(b)) >> 32);
    case Mnemonic::MULHU: return static_cast<uint32_t>((static_cast<uint64_t>(a) * static_cast<uint64_t>(b)) >> 32);
    case Mnemonic::DIV:
      if (b == 0) return 0xFFFFFFFFu;
      if (a == 0x80000000u && b == 0xFFFFFFFFu) return a;  // overflow -> dividend
      return static_cast<uint32_t>(sa / sb);
    case Mnemonic::DIVU:
      return b == 0 ? 0xFFFFFFFFu : a / b;
    case Mnemonic::REM:
      if (b == 0) return a;
      if (a == 0x80000000u && b == 0xFFFFFFFFu) return 0;
      return static_cast<uint32_t>(sa % sb);
    case Mnemonic::REMU:
      return b == 0 ? a : a % b;
    default:
      return 0;
  }
}

inline bool branch_taken(Mnemonic m, uint32_t a, uint32_t b) {
  switch (m) {
    case Mnemonic::BEQ: return a == b;
    case Mnemonic::BNE: return a != b;
    case Mnemonic::BLT: return static_cast<int32_t>(a) < static_cast<int32_t>(b);
    case Mnemonic::BGE: return static_cast<int32_t>(a) >= static_cast<int32_t>(b);
    case Mnemonic::BLTU: return a < b;
    case Mnemonic::BGEU: return a >= b;
    default: return false;
  }
}

// Non-memory FPU ops; a/b are raw register bit patterns.
inline uint32_t fpu_op(Mnemonic m, uint32_t a, uint32_t b) {
  switch (m) {
    case Mnemonic::FADD_S: return fp::add(a, b);
    case Mnemonic::FSUB_S: return fp::sub(a, b);
    case Mnemonic::FMUL_S: return fp::mul(a, b);
    case Mnemonic::FDIV_S: return fp::div(a, b);
    case Mnemonic::FSGNJ_S: return fp::sgnj(a, b);
    case Mnemonic::FSGNJN_S: return fp::sgnjn(a, b);
    case Mnemonic::FSGNJX_S: return fp::sgnjx(a, b);
    case Mnemonic::FCVT_W_S: return fp::cvt_w_s(a);
    case Mnemonic::FCVT_WU_S: return fp::cvt_wu_s(a);
    case Mnemonic::FCVT_S_W: return fp::cvt_s_w(a);
    case Mnemonic::FCVT_S_WU: return fp::cvt_s_wu(a);
    case Mnemonic::FMV_X_W: return a;
    case Mnemonic::FMV_W_X: return a;
    case Mnemonic::FEQ_S: return fp::feq(a, b);
    case Mnemonic::FLT_S: return fp::flt(a, b);
    case Mnemonic::FLE_S: return fp::fle(a, b);
    default: return 0;
  }
}

inline uint32_t amo_op(Mnemonic m, uint32_t loaded, uint32_t src) {
  switch (m) {
    case Mnemonic::AMOSWAP_W: return src;
    case Mnemonic::AMOADD_W: return loaded + src;
    case Mnemonic::AMOXOR_W: return loaded ^ src;
    case Mnemonic::AMOAND_W: return loaded & src;
    case Mnemonic::AMOOR_W: return loaded | src;
    case Mnemonic::AMOMIN_W:
      return static_cast<int32_t>(loaded) < static_cast<int32_t>(src) ? loaded : src;
    case Mnemonic::AMOMAX_W:
      return static_cast<int32_t>(loaded) > static_cast<int32_t>(src) ? loaded : src;
    case Mnemonic::AMOMINU_W: return loaded < src ? loaded : src;
    case Mnemonic::AMOMAXU_W: return loaded > src ? loaded : src;
    default: return loaded;
  }
}

// Counter CSRs read the retired-instruction count; everything else reads 0.
// Writes are ignored (rd still gets the read value).
inline uint32_t csr_read(int32_t csr, uint64_t retired) {
  switch (csr) {
    case 0xC00:  // cycle
    case 0xC01:  // time
    case 0xC02:  // instret
      return static_cast<uint32_t>(retired);
    case 0xC80:  // cycleh
    case 0xC81:  // timeh
    case 0xC82:  // instreth
      return static_cast<uint32_t>(retired >> 32);
    default:
      return 0;
  }
}

inline uint32_t sign_extend_load(Mnemonic m, uint32_t raw) {
  switch (m) {
    case Mnemonic::LB: return static_cast<uint32_t>(static_cast<int32_t>(static_cast<int8_t>(raw)));
    case Mnemonic::LH: return static_cast<uint32_t>(static_cast<int32_t>(static_cast<int16_t>(raw)));
    case Mnemonic::LBU: return raw & 0xFF;
    case Mnemonic::LHU: return raw & 0xFFFF;
    default: return raw;
  }
}

}  // namespace exec
}  // namespace rvsim
