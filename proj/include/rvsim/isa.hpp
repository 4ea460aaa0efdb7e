#pragma once

#include <cstdint>
#include <string_view>

namespace rvsim {

enum class OpClass : uint8_t {
  ALU, BRANCH, JUMP, LOAD, STORE, MUL, DIV, CSR, SYSTEM, FPU, FLOAD, FSTORE, AMO
};

enum class Mnemonic : uint8_t {
  ILLEGAL,
  // RV32I
  LUI, AUIPC, JAL, JALR,
  BEQ, BNE, BLT, BGE, BLTU, BGEU,
  LB, LH, LW, LBU, LHU, SB, SH, SW,
  ADDI, SLTI, SLTIU, XORI, ORI, ANDI, SLLI, SRLI, SRAI,
  ADD, SUB, SLL, SLT, SLTU, XOR, SRL, SRA, OR, AND,
  FENCE, ECALL, EBREAK,
  // Zicsr
  CSRRW, CSRRS, CSRRC, CSRRWI, CSRRSI, CSRRCI,
  // M
  MUL, MULH, MULHSU, MULHU, DIV, DIVU, REM, REMU,
  // A (RV32A)
  LR_W, SC_W, AMOSWAP_W, AMOADD_W, AMOXOR_W, AMOAND_W, AMOOR_W,
  AMOMIN_W, AMOMAX_W, AMOMINU_W, AMOMAXU_W,
  // F subset
  FLW, FSW,
  FADD_S, FSUB_S, FMUL_S, FDIV_S,
  FSGNJ_S, FSGNJN_S, FSGNJX_S,
  FCVT_W_S, FCVT_WU_S, FCVT_S_W, FCVT_S_WU,
  FMV_X_W, FMV_W_X,
  FEQ_S, FLT_S, FLE_S,
  COUNT
};

inline std::string_view mnemonic_name(Mnemonic m) {
  switch (m) {
    case Mnemonic::ILLEGAL: return "illegal";
    case Mnemonic::LUI: return "lui";       case Mnemonic::AUIPC: return "auipc";
    case Mnemonic::JAL: return "jal";       case Mnemonic::JALR: return "jalr";
    case Mnemonic::BEQ: return "beq";       case Mnemonic::BNE: return "bne";
    case Mnemonic::BLT: return "blt";       case Mnemonic::BGE: return "bge";
    case Mnemonic::BLTU: return "bltu";     case Mnemonic::BGEU: return "bgeu";
    case Mnemonic::LB: return "lb";         case Mnemonic::LH: return "lh";
    case Mnemonic::LW: return "lw";         case Mnemonic::LBU: return "lbu";
    case Mnemonic::LHU: return "lhu";       case Mnemonic::SB: return "sb";
    case Mnemonic::SH: return "sh";         case Mnemonic::SW: return "sw";
    case Mnemonic::ADDI: return "addi";     case Mnemonic::SLTI: return "slti";
    case Mnemonic::SLTIU: return "sltiu";   case Mnemonic::XORI: return "xori";
    case Mnemonic::ORI: return "ori";       case Mnemonic::ANDI: return "andi";
    case Mnemonic::SLLI: return "slli";     case Mnemonic::SRLI: return "srli";
    case Mnemonic::SRAI: return "srai";     case Mnemonic::ADD: return "add";
    case Mnemonic::SUB: return "sub";       case Mnemonic::SLL: return "sll";
    case Mnemonic::SLT: return "slt";       case Mnemonic::SLTU: return "sltu";
    case Mnemonic::XOR: return "xor";       case Mnemonic::SRL: return "srl";
    case Mnemonic::SRA: return "sra";       case Mnemonic::OR: return "or";
    case Mnemonic::AND: return "and";       case Mnemonic::FENCE: return "fence";
    case Mnemonic::ECALL: return "ecall";   case Mnemonic::EBREAK: return "ebreak";
    case Mnemonic::CSRRW: return "csrrw";   case Mnemonic::CSRRS: return "csrrs";
    case Mnemonic::CSRRC: return "csrrc";   case Mnemonic::CSRRWI: return "csrrwi";
    case Mnemonic::CSRRSI: return "csrrsi"; case Mnemonic::CSRRCI: return "csrrci";
    case Mnemonic::MUL: return "mul";       case Mnemonic::MULH: return "mulh";
    case Mnemonic::MULHSU: return "mulhsu"; case Mnemonic::MULHU: return "mulhu";
    case Mnemonic::DIV: return "div";       case Mnemonic::DIVU: return "divu";
    case Mnemonic::REM: return "rem";       case Mnemonic::REMU: return "remu";
    case Mnemonic::LR_W: return "lr.w";     case Mnemonic::SC_W: return "sc.w";
    case Mnemonic::AMOSWAP_W: return "amoswap.w"; case Mnemonic::AMOADD_W: return "amoadd.w";
    case Mnemonic::AMOXOR_W: return "amoxor.w";   case Mnemonic::AMOAND_W: return "amoand.w";
    case Mnemonic::AMOOR_W: return "amoor.w";     case Mnemonic::AMOMIN_W: return "amomin.w";
    case Mnemonic::AMOMAX_W: return "amomax.w";   case Mnemonic::AMOMINU_W: return "amominu.w";
    case Mnemonic::AMOMAXU_W: return "amomaxu.w";
    case Mnemonic::FLW: return "flw";       case Mnemonic::FSW: return "fsw";
    case Mnemonic::FADD_S: return "fadd.s"; case Mnemonic::FSUB_S: return "fsub.s";
    case Mnemonic::FMUL_S: return "fmul.s"; case Mnemonic::FDIV_S: return "fdiv.s";
    case Mnemonic::FSGNJ_S: return "fsgnj.s";   case Mnemonic::FSGNJN_S: return "fsgnjn.s";
    case Mnemonic::FSGNJX_S: return "fsgnjx.s"; case Mnemonic::FCVT_W_S: return "fcvt.w.s";
    case Mnemonic::FCVT_WU_S: return "fcvt.wu.s"; case Mnemonic::FCVT_S_W: return "fcvt.s.w";
    case Mnemonic::FCVT_S_WU: return "fcvt.s.wu"; case Mnemonic::FMV_X_W: return "fmv.x.w";
    case Mnemonic::FMV_W_X: return "fmv.w.x";     case Mnemonic::FEQ_S: return "feq.s";
    case Mnemonic::FLT_S: return "flt.s";   case Mnemonic::FLE_S: return "fle.s";
    default: return "?";
  }
}

// One architecturally decoded instruction. Compressed encodings are expanded
// to their 32-bit semantic equivalent but keep size_bytes = 2.
struct DecodedInst {
  Mnemonic mnemonic = Mnemonic::ILLEGAL;
  OpClass opclass = OpClass::SYSTEM;
  uint8_t rd = 0, rs1 = 0, rs2 = 0, rs3 = 0;
  bool rd_fp = false, rs1_fp = false, rs2_fp = false;
  int32_t imm = 0;           // also holds the CSR number for CSR ops
  uint8_t size_bytes = 4;    // 2 or 4
  uint32_t pc = 0;
  uint32_t raw = 0;          // original encoding (16-bit value for compressed)

  bool is_compressed() const { return size_bytes == 2; }

  bool writes_rd() const {
    switch (opclass) {
      case OpClass::BRANCH:
      case OpClass::STORE:
      case OpClass::FSTORE:
        return false;
      case OpClass::SYSTEM:
        return false;  // FENCE/ECALL/EBREAK/ILLEGAL
      default:
        break;
    }
    if (!rd_fp && rd == 0) return false;  // x0 sink
    return true;
  }

  bool reads_rs1() const {
    switch (mnemonic) {
      case Mnemonic::LUI: case Mnemonic::AUIPC: case Mnemonic::JAL:
      case Mnemonic::FENCE: case Mnemonic::ECALL: case Mnemonic::EBREAK:
      case Mnemonic::CSRRWI: case Mnemonic::CSRRSI: case Mnemonic::CSRRCI:
      case Mnemonic::ILLEGAL:
        return false;
      default:
        return true;
    }
  }

  bool reads_rs2() const {
    switch (opclass) {
      case OpClass::BRANCH:
      case OpClass::STORE:
      case OpClass::FSTORE:
        return true;
      case OpClass::ALU:
      case OpClass::MUL:
      case OpClass::DIV:
        // register-register forms only
        switch (mnemonic) {
          case Mnemonic::ADD: case Mnemonic::SUB: case Mnemonic::SLL:
          case Mnemonic::SLT: case Mnemonic::SLTU: case Mnemonic::XOR:
          case Mnemonic::SRL: case Mnemonic::SRA: case Mnemonic::OR:
          case Mnemonic::AND:
          case Mnemonic::MUL: case Mnemonic::MULH: case Mnemonic::MULHSU:
          case Mnemonic::MULHU: case Mnemonic::DIV: case Mnemonic::DIVU:
          case Mnemonic::REM: case Mnemonic::REMU:
            return true;
          default:
            return false;
        }
      case OpClass::AMO:
        return mnemonic != Mnemonic::LR_W;
      case OpClass::FPU:
        switch (mnemonic) {
          case Mnemonic::FADD_S: case Mnemonic::FSUB_S: case Mnemonic::FMUL_S:
          case Mnemonic::FDIV_S: case Mnemonic::FSGNJ_S: case Mnemonic::FSGNJN_S:
          case Mnemonic::FSGNJX_S: case Mnemonic::FEQ_S: case Mnemonic::FLT_S:
          case Mnemonic::FLE_S:
            return true;
          default:
            return false;
        }
      default:
        return false;
    }
  }

  bool is_memory_op() const {
    switch (opclass) {
      case OpClass::LOAD: case OpClass::STORE:
      case OpClass::FLOAD: case OpClass::FSTORE:
      case OpClass::AMO:
        return true;
      default:
        return false;
    }
  }

  bool is_control_transfer() const {
    return opclass == OpClass::BRANCH || opclass == OpClass::JUMP;
  }

  // Access width in bytes for memory ops.
  uint32_t mem_size() const {
    switch (mnemonic) {
      case Mnemonic::LB: case Mnemonic::LBU: case Mnemonic::SB: return 1;
      case Mnemonic::LH: case Mnemonic::LHU: case Mnemonic::SH: return 2;
      default: return 4;
    }
  }
};

// 64-bit little-endian fetch window anchored at base_pc.
struct RawFetchWord {
  uint64_t bytes = 0;
  uint32_t base_pc = 0;
};

enum class TrapCause : uint8_t {
  None,
  IllegalInstruction,
  MisalignedFetch,
};

inline std::string_view trap_name(TrapCause c) {
  switch (c) {
    case TrapCause::IllegalInstruction: return "illegal-instruction";
    case TrapCause::MisalignedFetch: return "misaligned-fetch";
    default: return "none";
  }
}

// ISA feature mask; decode is feature-agnostic, legality is checked per core
// variant (the F-less variant must trap on FP encodings).
struct IsaFeatures {
  bool m = true;
  bool a = true;
  bool f = true;
  bool c = true;

  bool allows(const DecodedInst& d) const {
    switch (d.opclass) {
      case OpClass::MUL: case OpClass::DIV: return m;
      case OpClass::AMO: return a;
      case OpClass::FPU: case OpClass::FLOAD: case OpClass::FSTORE: return f;
      default: break;
    }
    if (d.is_compressed() && !c) return false;
    return true;
  }
};

}  // namespace rvsim
