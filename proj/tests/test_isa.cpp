#include <cstring>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/random_programs.hpp"
#include "xsim/isa.hpp"
#include "xsim/workloads.hpp"

using namespace xsim;

TEST_CASE("stack effects match the instruction table") {
  CHECK(stack_effect(Opcode::Add) == StackEffect{2, 1});
  CHECK(stack_effect(Opcode::Push) == StackEffect{0, 1});
  CHECK(stack_effect(Opcode::Store) == StackEffect{2, 0});
  CHECK(stack_effect(Opcode::Load) == StackEffect{1, 1});
  CHECK(stack_effect(Opcode::Tas) == StackEffect{1, 1});
  CHECK(stack_effect(Opcode::Brz) == StackEffect{1, 0});
  CHECK(stack_effect(Opcode::Halt) == StackEffect{0, 0});

  for (int i = 0; i < kOpcodeCount; i++) {
    auto op = static_cast<Opcode>(i);
    StackEffect e = stack_effect(op);
    CHECK(e.pops <= 2);
    CHECK(e.pushes <= 2);
    // The depth requirement is never weaker than the pop count.
    CHECK(min_stack_depth(op) >= e.pops);
  }
  CHECK(min_stack_depth(Opcode::Over) == 2);
}

TEST_CASE("assemble a minimal straight-line program") {
  AsmResult r = assemble("PUSH 5\nPUSH 3\nADD\nHALT");
  REQUIRE(r.ok);
  REQUIRE(r.program.code.size() == 4);
  CHECK(r.program.entry == 0);
  CHECK(r.program.code[0] == Instruction{Opcode::Push, 5});
  CHECK(r.program.code[1] == Instruction{Opcode::Push, 3});
  CHECK(r.program.code[2] == Instruction{Opcode::Add, 0});
  CHECK(r.program.code[3] == Instruction{Opcode::Halt, 0});
}

TEST_CASE("self-branch resolves to its own index") {
  AsmResult r = assemble("loop: JMP loop");
  REQUIRE(r.ok);
  REQUIRE(r.program.code.size() == 1);
  CHECK(r.program.code[0] == Instruction{Opcode::Jmp, 0});
}

TEST_CASE("labels, comments, directives, hex and negative literals") {
  AsmResult r = assemble(
      "; setup\n"
      ".word 0x10 42\n"
      "start:\n"
      "PUSH -1      ; all ones\n"
      "PUSH 0xff\n"
      "here: JMP start\n");
  REQUIRE(r.ok);
  CHECK(r.program.data_image.size() == 1);
  CHECK(r.program.data_image[0] == DataWord{16, 42});
  REQUIRE(r.program.code.size() == 3);
  CHECK(r.program.code[0].operand == 0xFFFFFFFFu);
  CHECK(r.program.code[1].operand == 0xFFu);
  CHECK(r.program.code[2] == Instruction{Opcode::Jmp, 0});
  CHECK(r.program.labels.at("start") == 0);
  CHECK(r.program.labels.at("here") == 2);
}

TEST_CASE("assembler reports errors with line numbers") {
  AsmResult r = assemble("PUSH 1\nPUSH 2\nFROB 3\n");
  REQUIRE(!r.ok);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].line == 3);
  CHECK(r.errors[0].message.find("unknown mnemonic") != std::string::npos);

  r = assemble("a: NOP\na: NOP\n");
  REQUIRE(!r.ok);
  CHECK(r.errors[0].message.find("duplicate label") != std::string::npos);

  r = assemble("JMP nowhere\n");
  REQUIRE(!r.ok);
  CHECK(r.errors[0].message.find("unresolved label") != std::string::npos);

  r = assemble("PUSH 4294967296\n");  // 2^32
  REQUIRE(!r.ok);
  CHECK(r.errors[0].message.find("32-bit") != std::string::npos);

  r = assemble("PUSH\n");
  REQUIRE(!r.ok);
  CHECK(r.errors[0].message.find("missing operand") != std::string::npos);

  r = assemble("ADD 3\n");
  REQUIRE(!r.ok);
  CHECK(r.errors[0].message.find("unexpected operand") != std::string::npos);
}

TEST_CASE("disassemble single instruction") {
  Program p;
  p.code.push_back({Opcode::Push, 5});
  CHECK(disassemble(p) == "PUSH 5\n");
}

TEST_CASE("disassemble degenerate program: data only") {
  Program p;
  p.data_image.push_back({7, 99});
  p.data_image.push_back({3, 4});
  CHECK(disassemble(p) == ".word 7 99\n.word 3 4\n");
  AsmResult r = assemble(disassemble(p));
  REQUIRE(r.ok);
  CHECK(encode(r.program) == encode(p));
}

TEST_CASE("encoding is fixed width") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; i++) {
    Program p = testsupport::random_encodable_program(rng);
    CHECK(encode(p).size() ==
          12 + p.code.size() * kInstrBytes + p.data_image.size() * 8);
  }
}

TEST_CASE("round-trip: disassemble then assemble re-encodes identically") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; i++) {
    Program p = testsupport::random_encodable_program(rng);
    AsmResult r = assemble(disassemble(p));
    REQUIRE(r.ok);
    CHECK(encode(r.program) == encode(p));
  }
}

TEST_CASE("decode rejects malformed images") {
  Program p;
  p.code.push_back({Opcode::Push, 5});
  std::vector<uint8_t> good = encode(p);

  std::vector<uint8_t> bad = good;
  bad[0] = 'Y';
  CHECK(!decode(bad).ok);

  bad = good;
  bad.pop_back();
  CHECK(!decode(bad).ok);

  bad = good;
  bad[12] = 0xEE;  // unknown opcode byte
  CHECK(!decode(bad).ok);

  Program q;
  q.code.push_back({Opcode::Nop, 0});
  bad = encode(q);
  bad[13] = 1;  // nonzero operand on a void opcode
  CHECK(!decode(bad).ok);

  DecodeResult dec = decode(good);
  REQUIRE(dec.ok);
  CHECK(encode(dec.program) == good);
}

TEST_CASE("validate flags static underflow on the linear prefix") {
  AsmResult r = assemble("ADD\nHALT");
  REQUIRE(r.ok);
  auto diags = validate(r.program);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].index == 0);
  CHECK(diags[0].message.find("stack underflow at index 0") !=
        std::string::npos);

  r = assemble("PUSH 1\nPUSH 2\nADD\nHALT");
  REQUIRE(r.ok);
  CHECK(validate(r.program).empty());
}

TEST_CASE("validate flags out-of-range branch targets") {
  Program p;
  p.code.push_back({Opcode::Jmp, 1});  // target == length
  auto diags = validate(p);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message == "target out of range");
}

TEST_CASE("validate checks data image and entry") {
  Program p;
  p.code.push_back({Opcode::Halt, 0});
  p.data_image.push_back({5, 1});
  p.data_image.push_back({5, 2});
  auto diags = validate(p);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("duplicate data address") != std::string::npos);

  Program q;
  q.code.push_back({Opcode::Halt, 0});
  q.data_image.push_back({100, 1});
  CHECK(!validate(q, 64).empty());  // address beyond a 64-word memory
  CHECK(validate(q, 128).empty());

  Program e;
  e.code.push_back({Opcode::Halt, 0});
  e.entry = 3;
  CHECK(!validate(e).empty());
}

// The generated bounded-buffer producer body, checked against a byte
// sequence built by an independent test-local encoder from the frozen
// instruction list.
TEST_CASE("producer body encodes to the hand-built reference bytes") {
  PcLayout layout;  // defaults: 1 producer, 1 consumer, 1 queue, cap 1, 4 items
  GenResult gen = gen_producer_consumer(layout, 1 << 20);
  REQUIRE(gen.ok);
  REQUIRE(gen.asm_sources.size() == 2);
  AsmResult r = assemble(gen.asm_sources[0]);
  REQUIRE(r.ok);

  // Addresses for the default layout: lock=64 head=65 tail=66 count=67
  // slots=68 seq=69.
  const std::vector<std::pair<std::string, uint32_t>> expected = {
      {"PUSH", 69}, {"PUSH", 0},  {"STORE", 0},               // seq := 0
      {"PUSH", 69}, {"LOAD", 0},  {"PUSH", 4},  {"EQ", 0},    // loop head
      {"BRZ", 9},   {"HALT", 0},
      {"PUSH", 64}, {"TAS", 0},   {"BRZ", 13},  {"JMP", 9},   // acquire
      {"PUSH", 67}, {"LOAD", 0},  {"PUSH", 1},  {"EQ", 0},    // full?
      {"BRZ", 22},
      {"PUSH", 64}, {"PUSH", 0},  {"STORE", 0}, {"JMP", 9},   // release, retry
      {"PUSH", 68}, {"PUSH", 66}, {"LOAD", 0},  {"ADD", 0},   // slot address
      {"PUSH", 69}, {"LOAD", 0},  {"PUSH", 1},  {"ADD", 0},   // tag
      {"STORE", 0},
      {"PUSH", 66}, {"PUSH", 66}, {"LOAD", 0},  {"PUSH", 1},  // tail bump
      {"ADD", 0},   {"DUP", 0},   {"PUSH", 1},  {"EQ", 0},
      {"BRZ", 42},  {"POP", 0},   {"PUSH", 0},
      {"STORE", 0},                                            // tail :=
      {"PUSH", 67}, {"PUSH", 67}, {"LOAD", 0},  {"PUSH", 1},  // count += 1
      {"ADD", 0},   {"STORE", 0},
      {"PUSH", 64}, {"PUSH", 0},  {"STORE", 0},               // unlock
      {"PUSH", 69}, {"PUSH", 69}, {"LOAD", 0},  {"PUSH", 1},  // seq += 1
      {"ADD", 0},   {"STORE", 0},
      {"JMP", 3},
  };

  // Independent encoder: its own mnemonic->byte table and LE packing.
  const std::map<std::string, uint8_t> opbyte = {
      {"NOP", 0x00},  {"PUSH", 0x01}, {"POP", 0x02},  {"DUP", 0x03},
      {"SWAP", 0x04}, {"OVER", 0x05}, {"ADD", 0x06},  {"SUB", 0x07},
      {"MUL", 0x08},  {"AND", 0x09},  {"OR", 0x0A},   {"XOR", 0x0B},
      {"NOT", 0x0C},  {"SHL", 0x0D},  {"SHR", 0x0E},  {"EQ", 0x0F},
      {"LT", 0x10},   {"JMP", 0x11},  {"BRZ", 0x12},  {"LOAD", 0x13},
      {"STORE", 0x14},{"TAS", 0x15},  {"HALT", 0x16},
  };
  std::vector<uint8_t> ref = {'X', 'S', 'M', '1'};
  auto le32 = [&](uint32_t v) {
    ref.push_back(v & 0xFF);
    ref.push_back((v >> 8) & 0xFF);
    ref.push_back((v >> 16) & 0xFF);
    ref.push_back((v >> 24) & 0xFF);
  };
  le32(static_cast<uint32_t>(expected.size()));
  le32(0);  // no data image
  for (const auto& [mnem, operand] : expected) {
    ref.push_back(opbyte.at(mnem));
    le32(operand);
  }

  CHECK(r.program.code.size() == expected.size());
  CHECK(encode(r.program) == ref);
}

TEST_CASE("validate accepts every generator-emitted program") {
  std::vector<std::string> sources;

  PcLayout pc;
  pc.n_producers = 3;
  pc.n_consumers = 2;
  pc.n_queues = 2;
  pc.capacity = 4;
  pc.items_per_producer = 8;
  GenResult g = gen_producer_consumer(pc, 1 << 20);
  REQUIRE(g.ok);
  for (auto& s : g.asm_sources) sources.push_back(s);

  PcLayout race = pc;
  race.race_locks = true;
  g = gen_producer_consumer(race, 1 << 20);
  REQUIRE(g.ok);
  for (auto& s : g.asm_sources) sources.push_back(s);

  PhilLayout ph;
  ph.n = 5;
  ph.rounds = 10;
  g = gen_dining_philosophers(ph, 1 << 20);
  REQUIRE(g.ok);
  for (auto& s : g.asm_sources) sources.push_back(s);

  for (auto& s : gen_hotbank(4, 100)) sources.push_back(s);
  for (auto& s : gen_disjoint(4, 100)) sources.push_back(s);
  for (auto& s : gen_random_stream(4, 200, 512, 30, 99)) sources.push_back(s);

  for (const auto& src : sources) {
    AsmResult r = assemble(src);
    REQUIRE(r.ok);
    CHECK(validate(r.program, 1 << 20).empty());
  }
}
