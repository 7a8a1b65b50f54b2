#pragma once

// Random program generators shared by property tests and the acceptance
// suite.

#include <random>
#include <vector>

#include "xsim/isa.hpp"

namespace xsim::testsupport {

// Arbitrary well-formed Program: any opcode mix, operands within arity
// rules, branch targets in range, distinct data addresses. Not necessarily
// meaningful to execute.
inline Program random_encodable_program(std::mt19937_64& rng,
                                        uint32_t max_len = 100) {
  Program p;
  uint32_t len = 1 + static_cast<uint32_t>(rng() % max_len);
  for (uint32_t i = 0; i < len; i++) {
    auto op = static_cast<Opcode>(rng() % kOpcodeCount);
    uint32_t operand = 0;
    if (is_branch(op)) {
      operand = static_cast<uint32_t>(rng() % len);
    } else if (op == Opcode::Push) {
      operand = static_cast<uint32_t>(rng());
    }
    p.code.push_back({op, operand});
  }
  uint32_t n_data = static_cast<uint32_t>(rng() % 8);
  uint32_t addr = static_cast<uint32_t>(rng() % 1000);
  for (uint32_t i = 0; i < n_data; i++) {
    p.data_image.push_back({addr, static_cast<uint32_t>(rng())});
    addr += 1 + static_cast<uint32_t>(rng() % 1000);
  }
  return p;
}

// Validated, terminating program: exact depth tracking, forward branches
// only, memory traffic confined to [0, mem_words).
inline Program random_validated_program(std::mt19937_64& rng,
                                        uint32_t mem_words = 64) {
  Program p;
  auto emit = [&](Opcode op, uint32_t operand = 0) {
    p.code.push_back({op, operand});
  };
  int depth = 0;
  uint32_t budget = 10 + static_cast<uint32_t>(rng() % 70);

  while (budget > 0) {
    budget--;
    uint32_t pick = rng() % 12;
    switch (pick) {
      case 0:
      case 1:
        if (depth < 200) {
          emit(Opcode::Push, static_cast<uint32_t>(rng()));
          depth++;
        }
        break;
      case 2:
      case 3:
        if (depth >= 2) {
          static const Opcode alu[] = {Opcode::Add, Opcode::Sub, Opcode::Mul,
                                       Opcode::And, Opcode::Or,  Opcode::Xor,
                                       Opcode::Shl, Opcode::Shr, Opcode::Eq,
                                       Opcode::Lt};
          emit(alu[rng() % 10]);
          depth--;
        }
        break;
      case 4:
        if (depth >= 1) emit(Opcode::Not);
        break;
      case 5:
        if (depth >= 1 && depth < 200) {
          emit(Opcode::Dup);
          depth++;
        }
        break;
      case 6:
        if (depth >= 2) {
          if (rng() % 2) {
            emit(Opcode::Swap);
          } else {
            emit(Opcode::Over);
            depth++;
          }
        }
        break;
      case 7:
        if (depth >= 1) {
          emit(Opcode::Pop);
          depth--;
        }
        break;
      case 8:  // load
        emit(Opcode::Push, static_cast<uint32_t>(rng() % mem_words));
        emit(Opcode::Load);
        depth++;
        break;
      case 9:  // store
        emit(Opcode::Push, static_cast<uint32_t>(rng() % mem_words));
        emit(Opcode::Push, static_cast<uint32_t>(rng()));
        emit(Opcode::Store);
        break;
      case 10:  // test-and-set
        emit(Opcode::Push, static_cast<uint32_t>(rng() % mem_words));
        emit(Opcode::Tas);
        depth++;
        break;
      case 11: {
        // Forward diamond; both arms leave depth unchanged.
        emit(Opcode::Push, static_cast<uint32_t>(rng() % 2));
        uint32_t brz_at = static_cast<uint32_t>(p.code.size());
        emit(Opcode::Brz, 0);  // patched below
        emit(Opcode::Push, static_cast<uint32_t>(rng()));
        emit(Opcode::Pop);
        uint32_t jmp_at = static_cast<uint32_t>(p.code.size());
        emit(Opcode::Jmp, 0);  // patched below
        p.code[brz_at].operand = static_cast<uint32_t>(p.code.size());
        emit(Opcode::Nop);
        if (rng() % 2) emit(Opcode::Nop);
        p.code[jmp_at].operand = static_cast<uint32_t>(p.code.size());
        break;
      }
    }
  }
  emit(Opcode::Halt);

  uint32_t n_data = static_cast<uint32_t>(rng() % 5);
  uint32_t addr = static_cast<uint32_t>(rng() % (mem_words / 4 + 1));
  for (uint32_t i = 0; i < n_data && addr < mem_words; i++) {
    p.data_image.push_back({addr, static_cast<uint32_t>(rng())});
    addr += 1 + static_cast<uint32_t>(rng() % 8);
  }
  return p;
}

}  // namespace xsim::testsupport
