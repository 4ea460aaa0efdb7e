#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rvsim {

// 32-bit instruction encoders. Field names follow the base ISA formats.
namespace enc {

inline uint32_t r_type(uint32_t f7, uint32_t rs2, uint32_t rs1, uint32_t f3, uint32_t rd, uint32_t op) {
  return (f7 << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) | (rd << 7) | op;
}
inline uint32_t i_type(int32_t imm, uint32_t rs1, uint32_t f3, uint32_t rd, uint32_t op) {
  return (static_cast<uint32_t>(imm & 0xFFF) << 20) | (rs1 << 15) | (f3 << 12) | (rd << 7) | op;
}
inline uint32_t s_type(int32_t imm, uint32_t rs2, uint32_t rs1, uint32_t f3, uint32_t op) {
  const uint32_t u = static_cast<uint32_t>(imm);
  return (((u >> 5) & 0x7F) << 25) | (rs2 << 20) | (rs1 << 15) | (f3 << 12) | ((u & 0x1F) << 7) | op;
}
inline uint32_t b_type(int32_t imm, uint32_t rs2, uint32_t rs1, uint32_t f3) {
  const uint32_t u = static_cast<uint32_t>(imm);
  return (((u >> 12) & 1) << 31) | (((u >> 5) & 0x3F) << 25) | (rs2 << 20) | (rs1 << 15) |
         (f3 << 12) | (((u >> 1) & 0xF) << 8) | (((u >> 11) & 1) << 7) | 0x63;
}
inline uint32_t u_type(int32_t imm_hi20, uint32_t rd, uint32_t op) {
  return (static_cast<uint32_t>(imm_hi20) & 0xFFFFF000u) | (rd << 7) | op;
}
inline uint32_t j_type(int32_t imm, uint32_t rd) {
  const uint32_t u = static_cast<uint32_t>(imm);
  return (((u >> 20) & 1) << 31) | (((u >> 1) & 0x3FF) << 21) | (((u >> 11) & 1) << 20) |
         (((u >> 12) & 0xFF) << 12) | (rd << 7) | 0x6F;
}

inline uint32_t add(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 0, rd, 0x33); }
inline uint32_t sub(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x20, rs2, rs1, 0, rd, 0x33); }
inline uint32_t sll(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 1, rd, 0x33); }
inline uint32_t slt(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 2, rd, 0x33); }
inline uint32_t sltu(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 3, rd, 0x33); }
inline uint32_t xor_(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 4, rd, 0x33); }
inline uint32_t srl(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 5, rd, 0x33); }
inline uint32_t sra(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x20, rs2, rs1, 5, rd, 0x33); }
inline uint32_t or_(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 6, rd, 0x33); }
inline uint32_t and_(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x00, rs2, rs1, 7, rd, 0x33); }

inline uint32_t addi(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 0, rd, 0x13); }
inline uint32_t slti(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 2, rd, 0x13); }
inline uint32_t sltiu(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 3, rd, 0x13); }
inline uint32_t xori(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 4, rd, 0x13); }
inline uint32_t ori(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 6, rd, 0x13); }
inline uint32_t andi(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 7, rd, 0x13); }
inline uint32_t slli(uint32_t rd, uint32_t rs1, uint32_t sh) { return i_type(static_cast<int32_t>(sh), rs1, 1, rd, 0x13); }
inline uint32_t srli(uint32_t rd, uint32_t rs1, uint32_t sh) { return i_type(static_cast<int32_t>(sh), rs1, 5, rd, 0x13); }
inline uint32_t srai(uint32_t rd, uint32_t rs1, uint32_t sh) { return i_type(static_cast<int32_t>(sh | 0x400), rs1, 5, rd, 0x13); }

inline uint32_t lui(uint32_t rd, int32_t hi) { return u_type(hi, rd, 0x37); }
inline uint32_t auipc(uint32_t rd, int32_t hi) { return u_type(hi, rd, 0x17); }
inline uint32_t jal(uint32_t rd, int32_t off) { return j_type(off, rd); }
inline uint32_t jalr(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 0, rd, 0x67); }

inline uint32_t beq(uint32_t rs1, uint32_t rs2, int32_t off) { return b_type(off, rs2, rs1, 0); }
inline uint32_t bne(uint32_t rs1, uint32_t rs2, int32_t off) { return b_type(off, rs2, rs1, 1); }
inline uint32_t blt(uint32_t rs1, uint32_t rs2, int32_t off) { return b_type(off, rs2, rs1, 4); }
inline uint32_t bge(uint32_t rs1, uint32_t rs2, int32_t off) { return b_type(off, rs2, rs1, 5); }
inline uint32_t bltu(uint32_t rs1, uint32_t rs2, int32_t off) { return b_type(off, rs2, rs1, 6); }
inline uint32_t bgeu(uint32_t rs1, uint32_t rs2, int32_t off) { return b_type(off, rs2, rs1, 7); }

inline uint32_t lb(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 0, rd, 0x03); }
inline uint32_t lh(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 1, rd, 0x03); }
inline uint32_t lw(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 2, rd, 0x03); }
inline uint32_t lbu(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 4, rd, 0x03); }
inline uint32_t lhu(uint32_t rd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 5, rd, 0x03); }
inline uint32_t sb(uint32_t rs2, uint32_t rs1, int32_t imm) { return s_type(imm, rs2, rs1, 0, 0x23); }
inline uint32_t sh(uint32_t rs2, uint32_t rs1, int32_t imm) { return s_type(imm, rs2, rs1, 1, 0x23); }
inline uint32_t sw(uint32_t rs2, uint32_t rs1, int32_t imm) { return s_type(imm, rs2, rs1, 2, 0x23); }

inline uint32_t mul(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 0, rd, 0x33); }
inline uint32_t mulh(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 1, rd, 0x33); }
inline uint32_t mulhsu(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 2, rd, 0x33); }
inline uint32_t mulhu(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 3, rd, 0x33); }
inline uint32_t div(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 4, rd, 0x33); }
inline uint32_t divu(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 5, rd, 0x33); }
inline uint32_t rem(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 6, rd, 0x33); }
inline uint32_t remu(uint32_t rd, uint32_t rs1, uint32_t rs2) { return r_type(0x01, rs2, rs1, 7, rd, 0x33); }

inline uint32_t ecall() { return 0x00000073; }
inline uint32_t ebreak() { return 0x00100073; }
inline uint32_t fence() { return 0x0000000F; }
inline uint32_t nop() { return addi(0, 0, 0); }

inline uint32_t csrrw(uint32_t rd, uint32_t csr, uint32_t rs1) { return i_type(static_cast<int32_t>(csr), rs1, 1, rd, 0x73); }
inline uint32_t csrrs(uint32_t rd, uint32_t csr, uint32_t rs1) { return i_type(static_cast<int32_t>(csr), rs1, 2, rd, 0x73); }

inline uint32_t amo(uint32_t f5, uint32_t rd, uint32_t rs1, uint32_t rs2) {
  return r_type((f5 << 2), rs2, rs1, 2, rd, 0x2F);  // aq/rl = 0
}
inline uint32_t lr_w(uint32_t rd, uint32_t rs1) { return amo(0x02, rd, rs1, 0); }
inline uint32_t sc_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x03, rd, rs1, rs2); }
inline uint32_t amoswap_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x01, rd, rs1, rs2); }
inline uint32_t amoadd_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x00, rd, rs1, rs2); }
inline uint32_t amoxor_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x04, rd, rs1, rs2); }
inline uint32_t amoand_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x0C, rd, rs1, rs2); }
inline uint32_t amoor_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x08, rd, rs1, rs2); }
inline uint32_t amomin_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x10, rd, rs1, rs2); }
inline uint32_t amomax_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x14, rd, rs1, rs2); }
inline uint32_t amominu_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x18, rd, rs1, rs2); }
inline uint32_t amomaxu_w(uint32_t rd, uint32_t rs1, uint32_t rs2) { return amo(0x1C, rd, rs1, rs2); }

inline uint32_t flw(uint32_t frd, uint32_t rs1, int32_t imm) { return i_type(imm, rs1, 2, frd, 0x07); }
inline uint32_t fsw(uint32_t frs2, uint32_t rs1, int32_t imm) { return s_type(imm, frs2, rs1, 2, 0x27); }
inline uint32_t fp_r(uint32_t f5, uint32_t rs2, uint32_t rs1, uint32_t rm, uint32_t rd) {
  return r_type(f5 << 2, rs2, rs1, rm, rd, 0x53);
}
inline uint32_t fadd_s(uint32_t rd, uint32_t rs1, uint32_t rs2) { return fp_r(0x00, rs2, rs1, 0, rd); }
inline uint32_t fsub_s(uint32_t rd, uint32_t rs1, uint32_t rs2) { return fp_r(0x01, rs2, rs1, 0, rd); }
inline uint32_t fmul_s(uint32_t rd, uint32_t rs1, uint32_t rs2) { return fp_r(0x02, rs2, rs1, 0, rd); }
inline uint32_t fdiv_s(uint32_t rd, uint32_t rs1, uint32_t rs2) { return fp_r(0x03, rs2, rs1, 0, rd); }
inline uint32_t fsgnj_s(uint32_t rd, uint32_t rs1, uint32_t rs2) { return fp_r(0x04, rs2, rs1, 0, rd); }
inline uint32_t fsgnjn_s(uint32_t rd, uint32_t rs1, uint32_t rs2) { return fp_r(0x04, rs2, rs1, 1, rd); }
inline uint32_t fsgnjx_s(uint32_t rd, uint32_t rs1, uint32_t rs2) { return fp_r(0x04, rs2, rs1, 2, rd); }
inline uint32_t fcvt_w_s(uint32_t rd, uint32_t frs1) { return fp_r(0x18, 0, frs1, 1, rd); }
inline uint32_t fcvt_wu_s(uint32_t rd, uint32_t frs1) { return fp_r(0x18, 1, frs1, 1, rd); }
inline uint32_t fcvt_s_w(uint32_t frd, uint32_t rs1) { return fp_r(0x1A, 0, rs1, 0, frd); }
inline uint32_t fcvt_s_wu(uint32_t frd, uint32_t rs1) { return fp_r(0x1A, 1, rs1, 0, frd); }
inline uint32_t fmv_x_w(uint32_t rd, uint32_t frs1) { return fp_r(0x1C, 0, frs1, 0, rd); }
inline uint32_t fmv_w_x(uint32_t frd, uint32_t rs1) { return fp_r(0x1E, 0, rs1, 0, frd); }
inline uint32_t feq_s(uint32_t rd, uint32_t frs1, uint32_t frs2) { return fp_r(0x14, frs2, frs1, 2, rd); }
inline uint32_t flt_s(uint32_t rd, uint32_t frs1, uint32_t frs2) { return fp_r(0x14, frs2, frs1, 1, rd); }
inline uint32_t fle_s(uint32_t rd, uint32_t frs1, uint32_t frs2) { return fp_r(0x14, frs2, frs1, 0, rd); }

// Compressed encoders for the subset the kernels and fuzzers emit.
inline uint16_t c_nop() { return 0x0001; }
inline uint16_t c_addi(uint32_t rd, int32_t imm) {  // rd != 0, imm in [-32,31]
  const uint32_t u = static_cast<uint32_t>(imm);
  return static_cast<uint16_t>(0x0001 | (((u >> 5) & 1) << 12) | (rd << 7) | ((u & 0x1F) << 2));
}
inline uint16_t c_li(uint32_t rd, int32_t imm) {
  const uint32_t u = static_cast<uint32_t>(imm);
  return static_cast<uint16_t>(0x4001 | (((u >> 5) & 1) << 12) | (rd << 7) | ((u & 0x1F) << 2));
}
inline uint16_t c_mv(uint32_t rd, uint32_t rs2) {  // rd,rs2 != 0
  return static_cast<uint16_t>(0x8002 | (rd << 7) | (rs2 << 2));
}
inline uint16_t c_add(uint32_t rd, uint32_t rs2) {  // rd,rs2 != 0
  return static_cast<uint16_t>(0x9002 | (rd << 7) | (rs2 << 2));
}
inline uint16_t c_sub(uint32_t rdc, uint32_t rs2c) {  // x8..x15
  return static_cast<uint16_t>(0x8C01 | ((rdc - 8) << 7) | ((rs2c - 8) << 2));
}
inline uint16_t c_and(uint32_t rdc, uint32_t rs2c) {
  return static_cast<uint16_t>(0x8C61 | ((rdc - 8) << 7) | ((rs2c - 8) << 2));
}
inline uint16_t c_or(uint32_t rdc, uint32_t rs2c) {
  return static_cast<uint16_t>(0x8C41 | ((rdc - 8) << 7) | ((rs2c - 8) << 2));
}
inline uint16_t c_xor(uint32_t rdc, uint32_t rs2c) {
  return static_cast<uint16_t>(0x8C21 | ((rdc - 8) << 7) | ((rs2c - 8) << 2));
}
inline uint16_t c_lw(uint32_t rdc, uint32_t rs1c, uint32_t uimm) {  // uimm multiple of 4, < 128
  return static_cast<uint16_t>(0x4000 | (((uimm >> 3) & 7) << 10) | ((rs1c - 8) << 7) |
                               (((uimm >> 2) & 1) << 6) | (((uimm >> 6) & 1) << 5) | ((rdc - 8) << 2));
}
inline uint16_t c_sw(uint32_t rs2c, uint32_t rs1c, uint32_t uimm) {
  return static_cast<uint16_t>(0xC000 | (((uimm >> 3) & 7) << 10) | ((rs1c - 8) << 7) |
                               (((uimm >> 2) & 1) << 6) | (((uimm >> 6) & 1) << 5) | ((rs2c - 8) << 2));
}
inline uint16_t c_j(int32_t off) {
  const uint32_t u = static_cast<uint32_t>(off);
  return static_cast<uint16_t>(0xA001 |
      (((u >> 11) & 1) << 12) | (((u >> 4) & 1) << 11) | (((u >> 8) & 3) << 9) |
      (((u >> 10) & 1) << 8) | (((u >> 6) & 1) << 7) | (((u >> 7) & 1) << 6) |
      (((u >> 1) & 7) << 3) | (((u >> 5) & 1) << 2));
}
inline uint16_t c_beqz(uint32_t rs1c, int32_t off) {
  const uint32_t u = static_cast<uint32_t>(off);
  return static_cast<uint16_t>(0xC001 |
      (((u >> 8) & 1) << 12) | (((u >> 3) & 3) << 10) | ((rs1c - 8) << 7) |
      (((u >> 6) & 3) << 5) | (((u >> 1) & 3) << 3) | (((u >> 5) & 1) << 2));
}
inline uint16_t c_bnez(uint32_t rs1c, int32_t off) {
  return static_cast<uint16_t>(c_beqz(rs1c, off) | 0x2000);
}

}  // namespace enc

// Minimal two-pass assembler: append encodings and labels, branch/jump/li
// fixups are resolved at finish(). Addresses are absolute.
class Asm {
 public:
  explicit Asm(uint32_t base) : base_(base) {}

  uint32_t pc() const { return base_ + static_cast<uint32_t>(bytes_.size()); }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

  void raw32(uint32_t w) {
    bytes_.push_back(w & 0xFF);
    bytes_.push_back((w >> 8) & 0xFF);
    bytes_.push_back((w >> 16) & 0xFF);
    bytes_.push_back((w >> 24) & 0xFF);
  }
  void raw16(uint16_t h) {
    bytes_.push_back(h & 0xFF);
    bytes_.push_back((h >> 8) & 0xFF);
  }

  void label(const std::string& name) { labels_[name] = pc(); }
  uint32_t label_addr(const std::string& name) const { return labels_.at(name); }

  // Load a 32-bit constant (lui+addi pair, or a single addi when it fits).
  void li(uint32_t rd, uint32_t value) {
    const int32_t v = static_cast<int32_t>(value);
    if (v >= -2048 && v < 2048) {
      raw32(enc::addi(rd, 0, v));
      return;
    }
    uint32_t hi = value & 0xFFFFF000u;
    const int32_t lo = detail_sext12(value & 0xFFF);
    if (lo < 0) hi += 0x1000;  // addi sign-extends; compensate
    raw32(enc::lui(rd, static_cast<int32_t>(hi)));
    if (lo != 0) raw32(enc::addi(rd, rd, lo));
  }

  // pc-relative control flow with label fixups
  void beq(uint32_t rs1, uint32_t rs2, const std::string& target) { branch_fix(0, rs1, rs2, target); }
  void bne(uint32_t rs1, uint32_t rs2, const std::string& target) { branch_fix(1, rs1, rs2, target); }
  void blt(uint32_t rs1, uint32_t rs2, const std::string& target) { branch_fix(4, rs1, rs2, target); }
  void bge(uint32_t rs1, uint32_t rs2, const std::string& target) { branch_fix(5, rs1, rs2, target); }
  void bltu(uint32_t rs1, uint32_t rs2, const std::string& target) { branch_fix(6, rs1, rs2, target); }
  void bgeu(uint32_t rs1, uint32_t rs2, const std::string& target) { branch_fix(7, rs1, rs2, target); }
  void jal(uint32_t rd, const std::string& target) {
    fixups_.push_back({pc(), FixKind::Jal, 0, rd, 0, target});
    raw32(0);
  }
  // Materialize a label address into rd (lui+addi, always 8 bytes).
  void la(uint32_t rd, const std::string& target) {
    fixups_.push_back({pc(), FixKind::La, 0, rd, 0, target});
    raw32(0);
    raw32(0);
  }

  void finish() {
    for (const auto& f : fixups_) {
      const uint32_t target = labels_.at(f.target);
      const size_t at = f.pc - base_;
      switch (f.kind) {
        case FixKind::Branch: {
          const int32_t off = static_cast<int32_t>(target - f.pc);
          patch32(at, enc::b_type(off, f.rs2, f.rs1, f.f3));
          break;
        }
        case FixKind::Jal: {
          const int32_t off = static_cast<int32_t>(target - f.pc);
          patch32(at, enc::jal(f.rs1, off));
          break;
        }
        case FixKind::La: {
          uint32_t hi = target & 0xFFFFF000u;
          const int32_t lo = detail_sext12(target & 0xFFF);
          if (lo < 0) hi += 0x1000;
          patch32(at, enc::lui(f.rs1, static_cast<int32_t>(hi)));
          patch32(at + 4, enc::addi(f.rs1, f.rs1, lo));
          break;
        }
      }
    }
    fixups_.clear();
  }

 private:
  enum class FixKind { Branch, Jal, La };
  struct Fixup {
    uint32_t pc;
    FixKind kind;
    uint32_t f3;
    uint32_t rs1;  // rd for Jal/La
    uint32_t rs2;
    std::string target;
  };

  static int32_t detail_sext12(uint32_t v) { return static_cast<int32_t>((v ^ 0x800) - 0x800); }

  void branch_fix(uint32_t f3, uint32_t rs1, uint32_t rs2, const std::string& target) {
    fixups_.push_back({pc(), FixKind::Branch, f3, rs1, rs2, target});
    raw32(0);
  }

  void patch32(size_t at, uint32_t w) {
    bytes_[at] = w & 0xFF;
    bytes_[at + 1] = (w >> 8) & 0xFF;
    bytes_[at + 2] = (w >> 16) & 0xFF;
    bytes_[at + 3] = (w >> 24) & 0xFF;
  }

  uint32_t base_;
  std::vector<uint8_t> bytes_;
  std::map<std::string, uint32_t> labels_;
  std::vector<Fixup> fixups_;
};

}  // namespace rvsim
