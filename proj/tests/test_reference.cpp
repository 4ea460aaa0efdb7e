#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rvsim/encode.hpp"
#include "rvsim/reference.hpp"

using namespace rvsim;

namespace {

Reference make_ref(const std::vector<uint32_t>& words, uint32_t base = 0x80000000) {
  Reference r;
  r.state.pc = base;
  uint32_t a = base;
  for (uint32_t w : words) {
    r.state.mem.store32(a, w);
    a += 4;
  }
  return r;
}

}  // namespace

TEST_CASE("reference: basic arithmetic step") {
  Reference r = make_ref({enc::add(10, 10, 11)}, 0x100);
  r.state.x[10] = 2;
  r.state.x[11] = 1;
  auto s = r.step();
  REQUIRE(s.retired);
  CHECK(r.state.x[10] == 3);
  CHECK(r.state.pc == 0x104);
  CHECK(s.record.wb_value == 3u);
}

TEST_CASE("reference: always-taken branch") {
  Reference r = make_ref({enc::beq(0, 0, 8)}, 0x100);
  auto s = r.step();
  REQUIRE(s.retired);
  CHECK(r.state.pc == 0x108);
  CHECK(!s.record.wb_value.has_value());
  CHECK(s.record.is_branch_taken == true);
}

TEST_CASE("reference: lr/sc pair succeeds on a single hart") {
  Reference r = make_ref({enc::lr_w(5, 10), enc::sc_w(6, 10, 11)}, 0x200);
  r.state.x[10] = 0x9000;
  r.state.x[11] = 77;
  r.state.mem.store32(0x9000, 42);
  r.step();
  CHECK(r.state.x[5] == 42);
  auto s = r.step();
  CHECK(r.state.x[6] == 0);  // success
  CHECK(r.state.mem.load32(0x9000) == 77);
  CHECK(s.record.mem_addr == 0x9000u);
}

TEST_CASE("reference: sc fails after an intervening store or without lr") {
  Reference r = make_ref({enc::lr_w(5, 10), enc::sw(11, 10, 64), enc::sc_w(6, 10, 11)}, 0x200);
  r.state.x[10] = 0x9000;
  r.state.x[11] = 7;
  r.step();
  r.step();
  r.step();
  CHECK(r.state.x[6] == 1);  // reservation broken

  Reference r2 = make_ref({enc::sc_w(6, 10, 11)}, 0x200);
  r2.state.x[10] = 0x9000;
  r2.step();
  CHECK(r2.state.x[6] == 1);
}

TEST_CASE("reference: amo read-modify-write") {
  Reference r = make_ref({enc::amoadd_w(5, 10, 11), enc::amomax_w(6, 10, 12)}, 0x300);
  r.state.x[10] = 0xA000;
  r.state.x[11] = 10;
  r.state.x[12] = static_cast<uint32_t>(-5);
  r.state.mem.store32(0xA000, 100);
  r.step();
  CHECK(r.state.x[5] == 100);
  CHECK(r.state.mem.load32(0xA000) == 110);
  r.step();
  CHECK(r.state.x[6] == 110);
  CHECK(r.state.mem.load32(0xA000) == 110);  // max(110, -5)
}

TEST_CASE("reference: m-extension corner cases follow ISA-defined results") {
  Reference r = make_ref({enc::div(5, 10, 11), enc::rem(6, 10, 11),
                          enc::div(7, 12, 13), enc::rem(28, 12, 13)},
                         0x400);
  r.state.x[10] = 123;
  r.state.x[11] = 0;  // divide by zero
  r.state.x[12] = 0x80000000u;
  r.state.x[13] = 0xFFFFFFFFu;  // overflow
  r.run(4);
  CHECK(r.state.x[5] == 0xFFFFFFFFu);
  CHECK(r.state.x[6] == 123);
  CHECK(r.state.x[7] == 0x80000000u);
  CHECK(r.state.x[28] == 0);
}

TEST_CASE("reference: run terminates on ebreak with retire count") {
  Reference r = make_ref({enc::addi(1, 0, 5), enc::ebreak()});
  std::vector<RetireRecord> log;
  auto stop = r.run(100, &log);
  CHECK(stop.kind == StopKind::Ebreak);
  CHECK(r.state.x[1] == 5);
  CHECK(r.state.retired == 2);
  CHECK(log.size() == 2);
}

TEST_CASE("reference: all-zero memory traps as illegal at the first step") {
  Reference r = make_ref({});
  auto stop = r.run(10);
  CHECK(stop.kind == StopKind::Trap);
  CHECK(stop.trap == TrapCause::IllegalInstruction);
  CHECK(stop.pc == 0x80000000);
  CHECK(r.state.retired == 0);
}

TEST_CASE("reference: 1000 independent addis then ebreak retires 1001") {
  std::vector<uint32_t> prog;
  for (int i = 0; i < 1000; ++i) prog.push_back(enc::addi(5 + (i % 8), 0, i & 0x7FF));
  prog.push_back(enc::ebreak());
  Reference r = make_ref(prog);
  auto stop = r.run(5000);
  CHECK(stop.kind == StopKind::Ebreak);
  CHECK(r.state.retired == 1001);
}

TEST_CASE("reference: tohost write stops the run with the exit code") {
  Reference r = make_ref({enc::addi(1, 0, 1), enc::sw(1, 2, 0), enc::ebreak()});
  r.state.x[2] = 0x8000F100;
  r.tohost_addr = 0x8000F100;
  auto stop = r.run(10);
  CHECK(stop.kind == StopKind::TohostWrite);
  CHECK(stop.exit_code == 0);  // (1 >> 1): conventional pass value
  CHECK(r.state.retired == 2);
}

TEST_CASE("reference: x0 stays zero under random instruction fuzz") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<uint32_t> prog;
    for (int i = 0; i < 64; ++i) {
      switch (rng() % 5) {
        case 0: prog.push_back(enc::addi(0, rng() % 32, static_cast<int32_t>(rng() % 100))); break;
        case 1: prog.push_back(enc::add(0, rng() % 32, rng() % 32)); break;
        case 2: prog.push_back(enc::lui(0, static_cast<int32_t>(rng() & 0xFFFFF000))); break;
        case 3: prog.push_back(enc::mul(0, rng() % 32, rng() % 32)); break;
        default: prog.push_back(enc::addi(1 + rng() % 31, 0, 1)); break;
      }
    }
    prog.push_back(enc::ebreak());
    Reference r = make_ref(prog);
    for (int i = 0; i < 65; ++i) {
      auto s = r.step();
      CHECK(r.state.x[0] == 0);
      if (s.stop.is_exit()) break;
    }
  }
}

TEST_CASE("reference: determinism — same program twice gives identical state") {
  std::vector<uint32_t> prog;
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    prog.push_back(enc::add(1 + rng() % 31, rng() % 32, rng() % 32));
  }
  prog.push_back(enc::ebreak());
  Reference a = make_ref(prog), b = make_ref(prog);
  a.run(200);
  b.run(200);
  for (int i = 0; i < 32; ++i) CHECK(a.state.x[i] == b.state.x[i]);
  CHECK(a.state.pc == b.state.pc);
}

TEST_CASE("reference: compressed expansion equivalence") {
  // executing a compressed form and its 32-bit expansion from identical
  // states must agree on everything except the pc advance
  std::mt19937 rng(31);
  struct Pair { uint16_t c; uint32_t full; };
  for (int i = 0; i < 300; ++i) {
    const uint32_t rd = 1 + rng() % 31;
    const uint32_t rc1 = 8 + rng() % 8, rc2 = 8 + rng() % 8;
    const int32_t imm6 = static_cast<int32_t>(rng() % 64) - 32;
    const uint32_t uimm = (rng() % 16) * 4;
    const Pair pairs[] = {
        {enc::c_addi(rd, imm6), enc::addi(rd, rd, imm6)},
        {enc::c_li(rd, imm6), enc::addi(rd, 0, imm6)},
        {enc::c_mv(rd, rc1), enc::add(rd, 0, rc1)},
        {enc::c_add(rd, rc1), enc::add(rd, rd, rc1)},
        {enc::c_sub(rc1, rc2), enc::sub(rc1, rc1, rc2)},
        {enc::c_and(rc1, rc2), enc::and_(rc1, rc1, rc2)},
        {enc::c_or(rc1, rc2), enc::or_(rc1, rc1, rc2)},
        {enc::c_xor(rc1, rc2), enc::xor_(rc1, rc1, rc2)},
        {enc::c_lw(rc1, rc2, uimm), enc::lw(rc1, rc2, static_cast<int32_t>(uimm))},
        {enc::c_sw(rc1, rc2, uimm), enc::sw(rc1, rc2, static_cast<int32_t>(uimm))},
    };
    const Pair& p = pairs[rng() % std::size(pairs)];

    Reference rc, rf;
    for (int reg = 1; reg < 32; ++reg) {
      const uint32_t v = rng();
      rc.state.x[reg] = v;
      rf.state.x[reg] = v;
    }
    // keep memory operands in a small window
    rc.state.x[rc2] = 0x9000 + (rng() % 16) * 4;
    rf.state.x[rc2] = rc.state.x[rc2];
    for (uint32_t a = 0x9000; a < 0x9100; a += 4) {
      const uint32_t v = rng();
      rc.state.mem.store32(a, v);
      rf.state.mem.store32(a, v);
    }

    rc.state.pc = 0x1000;
    rc.state.mem.store16(0x1000, p.c);
    rf.state.pc = 0x2000;
    rf.state.mem.store32(0x2000, p.full);

    auto sc = rc.step();
    auto sf = rf.step();
    REQUIRE(sc.retired);
    REQUIRE(sf.retired);
    CHECK(rc.state.pc == 0x1002);
    CHECK(rf.state.pc == 0x2004);
    for (int reg = 0; reg < 32; ++reg) CHECK(rc.state.x[reg] == rf.state.x[reg]);
    CHECK(sc.record.wb_value == sf.record.wb_value);
    CHECK(rc.state.mem.load32(0x9000) == rf.state.mem.load32(0x9000));
  }
}

TEST_CASE("reference: feature mask turns FP into illegal-instruction traps") {
  Reference r = make_ref({enc::fadd_s(1, 2, 3)});
  r.isa.f = false;
  auto stop = r.run(5);
  CHECK(stop.kind == StopKind::Trap);
  CHECK(stop.trap == TrapCause::IllegalInstruction);
}

TEST_CASE("reference: fp subset basics") {
  Reference r = make_ref({enc::fmv_w_x(1, 10), enc::fmv_w_x(2, 11),
                          enc::fadd_s(3, 1, 2), enc::fmv_x_w(5, 3),
                          enc::fdiv_s(4, 1, 2), enc::fmv_x_w(6, 4),
                          enc::feq_s(7, 1, 1), enc::ebreak()});
  r.state.x[10] = fp::to_bits(1.5f);
  r.state.x[11] = fp::to_bits(2.25f);
  auto stop = r.run(10);
  CHECK(stop.kind == StopKind::Ebreak);
  CHECK(fp::to_float(r.state.x[5]) == 3.75f);
  CHECK(fp::to_float(r.state.x[6]) == 1.5f / 2.25f);
  CHECK(r.state.x[7] == 1);
}

TEST_CASE("reference: misaligned accesses execute and are flagged") {
  Reference r = make_ref({enc::sw(11, 10, 1), enc::lw(12, 10, 1), enc::ebreak()});
  r.state.x[10] = 0x9000;
  r.state.x[11] = 0xDEADBEEF;
  auto stop = r.run(5);
  CHECK(stop.kind == StopKind::Ebreak);
  CHECK(r.state.x[12] == 0xDEADBEEF);
  CHECK(r.misaligned_accesses == 2);
}

TEST_CASE("reference: csr reads return retired count, other csrs read zero") {
  Reference r = make_ref({enc::nop(), enc::nop(), enc::csrrs(5, 0xC02, 0),
                          enc::csrrs(6, 0x300, 0), enc::ebreak()});
  r.run(10);
  CHECK(r.state.x[5] == 2);  // two nops retired before the read
  CHECK(r.state.x[6] == 0);  // mstatus reads as zero
}

TEST_CASE("reference: misaligned fetch traps") {
  Reference r = make_ref({enc::nop()});
  r.state.pc = 0x80000001;
  auto stop = r.run(1);
  CHECK(stop.kind == StopKind::Trap);
  CHECK(stop.trap == TrapCause::MisalignedFetch);
}
