#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rvsim/decode.hpp"
#include "rvsim/encode.hpp"

using namespace rvsim;

namespace {

// Independent field-extraction oracle: given a format letter, pull the
// register/immediate fields straight from the bit layout tables of the base
// ISA, with no shared code with decode32().
struct Fields {
  uint32_t rd, rs1, rs2;
  int32_t imm;
};

int32_t sx(uint64_t v, int bits) {
  const int64_t shifted = static_cast<int64_t>(v << (64 - bits));
  return static_cast<int32_t>(shifted >> (64 - bits));
}

Fields oracle_fields(char fmt, uint32_t w) {
  Fields f{};
  f.rd = (w >> 7) & 31;
  f.rs1 = (w >> 15) & 31;
  f.rs2 = (w >> 20) & 31;
  switch (fmt) {
    case 'I': f.imm = sx(w >> 20, 12); break;
    case 'S': f.imm = sx(((w >> 25) << 5) | ((w >> 7) & 31), 12); break;
    case 'B': {
      uint32_t v = (((w >> 31) & 1) << 12) | (((w >> 7) & 1) << 11) |
                   (((w >> 25) & 0x3F) << 5) | (((w >> 8) & 0xF) << 1);
      f.imm = sx(v, 13);
      break;
    }
    case 'U': f.imm = static_cast<int32_t>(w & 0xFFFFF000u); break;
    case 'J': {
      uint32_t v = (((w >> 31) & 1) << 20) | (((w >> 12) & 0xFF) << 12) |
                   (((w >> 20) & 1) << 11) | (((w >> 21) & 0x3FF) << 1);
      f.imm = sx(v, 21);
      break;
    }
    default: break;
  }
  return f;
}

}  // namespace

TEST_CASE("decode: reference encodings") {
  // add x10, x10, x11
  DecodedInst d = decode32(0x00B50533u, 0x1000);
  CHECK(d.mnemonic == Mnemonic::ADD);
  CHECK(d.opclass == OpClass::ALU);
  CHECK(d.rd == 10);
  CHECK(d.rs1 == 10);
  CHECK(d.rs2 == 11);
  CHECK(d.size_bytes == 4);

  // canonical NOP
  d = decode32(0x00000013u, 0);
  CHECK(d.mnemonic == Mnemonic::ADDI);
  CHECK(d.rd == 0);
  CHECK(d.rs1 == 0);
  CHECK(d.imm == 0);

  // c.li x11, 1 expands to addi x11, x0, 1 and keeps size 2
  d = decode16(0x4585u, 0x2000);
  CHECK(d.mnemonic == Mnemonic::ADDI);
  CHECK(d.rd == 11);
  CHECK(d.rs1 == 0);
  CHECK(d.imm == 1);
  CHECK(d.size_bytes == 2);
  CHECK(d.is_compressed());
}

TEST_CASE("decode: field extraction matches independent format oracle") {
  std::mt19937 rng(7);
  auto reg = [&] { return rng() & 31; };

  for (int i = 0; i < 2000; ++i) {
    const uint32_t rd = reg(), rs1 = reg(), rs2 = reg();
    const int32_t imm12 = static_cast<int32_t>(rng() % 4096) - 2048;
    const int32_t immb = (static_cast<int32_t>(rng() % 4096) - 2048) * 2;
    const int32_t immj = (static_cast<int32_t>(rng() % (1 << 19)) - (1 << 18)) * 2;

    struct Case { char fmt; uint32_t word; } cases[] = {
        {'I', enc::addi(rd, rs1, imm12)},
        {'I', enc::lw(rd, rs1, imm12)},
        {'I', enc::jalr(rd, rs1, imm12)},
        {'S', enc::sw(rs2, rs1, imm12)},
        {'B', enc::bne(rs1, rs2, immb)},
        {'U', enc::lui(rd, static_cast<int32_t>(rng() & 0xFFFFF000u))},
        {'J', enc::jal(rd, immj)},
        {'R', enc::xor_(rd, rs1, rs2)},
    };
    for (const auto& c : cases) {
      const Fields f = oracle_fields(c.fmt, c.word);
      const DecodedInst di = decode32(c.word, 0);
      REQUIRE(di.mnemonic != Mnemonic::ILLEGAL);
      if (di.writes_rd() || di.rd_fp || c.fmt == 'U' || c.fmt == 'J' || c.fmt == 'I' || c.fmt == 'R')
        CHECK(di.rd == f.rd);
      if (di.reads_rs1()) CHECK(di.rs1 == f.rs1);
      if (di.reads_rs2()) CHECK(di.rs2 == f.rs2);
      if (c.fmt != 'R') CHECK(di.imm == f.imm);
    }
  }
}

TEST_CASE("decode: totality over random 32-bit words") {
  std::mt19937 rng(123);
  for (int i = 0; i < 200000; ++i) {
    const uint32_t w = rng();
    const DecodedInst d = decode32(w | 3u, 0x1000);  // force 32-bit encoding space
    // every word either decodes or is ILLEGAL; registers always in range
    CHECK(d.rd < 32);
    CHECK(d.rs1 < 32);
    CHECK(d.rs2 < 32);
    CHECK((d.size_bytes == 4));
  }
}

TEST_CASE("decode: totality over all 16-bit patterns") {
  for (uint32_t w = 0; w <= 0xFFFF; ++w) {
    if ((w & 3) == 3) continue;  // not a compressed encoding
    const DecodedInst d = decode16(static_cast<uint16_t>(w), 0x1000);
    CHECK(d.rd < 32);
    CHECK(d.rs1 < 32);
    CHECK(d.rs2 < 32);
    CHECK(d.size_bytes == 2);
  }
  // the all-zero pattern is the defined illegal encoding
  CHECK(decode16(0, 0).mnemonic == Mnemonic::ILLEGAL);
}

TEST_CASE("decode: bitmanip and privileged encodings are illegal") {
  // sh1add x5, x6, x7 (Zba): opcode 0x33, f3=2, f7=0x10
  CHECK(decode32(enc::r_type(0x10, 7, 6, 2, 5, 0x33), 0).mnemonic == Mnemonic::ILLEGAL);
  // andn (Zbb): f7=0x20 f3=7
  CHECK(decode32(enc::r_type(0x20, 7, 6, 7, 5, 0x33), 0).mnemonic == Mnemonic::ILLEGAL);
  // mret
  CHECK(decode32(0x30200073u, 0).mnemonic == Mnemonic::ILLEGAL);
  // wfi
  CHECK(decode32(0x10500073u, 0).mnemonic == Mnemonic::ILLEGAL);
}

TEST_CASE("decode: window handling and truncation") {
  // window holding [addi x1,x0,5][c.li x11,1][c.nop][addi...straddles]
  RawFetchWord w;
  w.base_pc = 0x80000000;
  const uint32_t i0 = enc::addi(1, 0, 5);
  const uint16_t i1 = 0x4585;
  const uint16_t i2 = enc::c_nop();
  w.bytes = static_cast<uint64_t>(i0) | (static_cast<uint64_t>(i1) << 32) |
            (static_cast<uint64_t>(i2) << 48);

  auto r0 = decode(w, 0);
  REQUIRE(r0.status == DecodeStatus::Ok);
  CHECK(r0.inst.mnemonic == Mnemonic::ADDI);
  CHECK(r0.inst.pc == 0x80000000);

  auto r1 = decode(w, 4);
  REQUIRE(r1.status == DecodeStatus::Ok);
  CHECK(r1.inst.mnemonic == Mnemonic::ADDI);
  CHECK(r1.inst.size_bytes == 2);
  CHECK(r1.inst.pc == 0x80000004);

  // force a 32-bit encoding at offset 6: straddles the window end
  RawFetchWord w2;
  w2.base_pc = 0x80000000;
  w2.bytes = static_cast<uint64_t>(enc::nop()) |
             (static_cast<uint64_t>(enc::c_nop()) << 32) |
             (static_cast<uint64_t>(enc::addi(5, 5, 1) & 0xFFFF) << 48);
  auto r2 = decode(w2, 6);
  CHECK(r2.status == DecodeStatus::Truncated);
  CHECK(r2.inst.pc == 0x80000006);
}

TEST_CASE("decode: compressed encoders round-trip through the decoder") {
  std::mt19937 rng(99);
  for (int i = 0; i < 500; ++i) {
    const uint32_t rd = 1 + rng() % 31;
    const uint32_t rc = 8 + rng() % 8;
    const uint32_t rc2 = 8 + rng() % 8;
    const int32_t imm6 = static_cast<int32_t>(rng() % 64) - 32;
    const uint32_t uimm7 = (rng() % 32) * 4;

    DecodedInst d = decode16(enc::c_addi(rd, imm6), 0);
    CHECK(d.mnemonic == Mnemonic::ADDI);
    CHECK(d.rd == rd);
    CHECK(d.rs1 == rd);
    CHECK(d.imm == imm6);

    d = decode16(enc::c_li(rd, imm6), 0);
    CHECK(d.mnemonic == Mnemonic::ADDI);
    CHECK(d.rs1 == 0);
    CHECK(d.imm == imm6);

    d = decode16(enc::c_lw(rc, rc2, uimm7), 0);
    CHECK(d.mnemonic == Mnemonic::LW);
    CHECK(d.rd == rc);
    CHECK(d.rs1 == rc2);
    CHECK(d.imm == static_cast<int32_t>(uimm7));

    d = decode16(enc::c_sw(rc, rc2, uimm7), 0);
    CHECK(d.mnemonic == Mnemonic::SW);
    CHECK(d.rs2 == rc);
    CHECK(d.rs1 == rc2);

    const int32_t joff = (static_cast<int32_t>(rng() % 1024) - 512) * 2;
    d = decode16(enc::c_j(joff), 0);
    CHECK(d.mnemonic == Mnemonic::JAL);
    CHECK(d.rd == 0);
    CHECK(d.imm == joff);

    const int32_t boff = (static_cast<int32_t>(rng() % 128) - 64) * 2;
    d = decode16(enc::c_beqz(rc, boff), 0);
    CHECK(d.mnemonic == Mnemonic::BEQ);
    CHECK(d.rs1 == rc);
    CHECK(d.rs2 == 0);
    CHECK(d.imm == boff);

    d = decode16(enc::c_mv(rd, 1 + rng() % 31), 0);
    CHECK(d.mnemonic == Mnemonic::ADD);
    CHECK(d.rs1 == 0);

    d = decode16(enc::c_sub(rc, rc2), 0);
    CHECK(d.mnemonic == Mnemonic::SUB);
    CHECK(d.rd == rc);
    CHECK(d.rs2 == rc2);
  }
}
