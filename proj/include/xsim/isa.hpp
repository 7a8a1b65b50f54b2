#pragma once

// Stack-machine instruction set: encoding, assembler, disassembler,
// static validation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xsim {

enum class Opcode : uint8_t {
  Nop = 0x00,
  Push = 0x01,  // push immediate
  Pop = 0x02,
  Dup = 0x03,
  Swap = 0x04,
  Over = 0x05,  // a b -> a b a
  Add = 0x06,
  Sub = 0x07,
  Mul = 0x08,
  And = 0x09,
  Or = 0x0A,
  Xor = 0x0B,
  Not = 0x0C,
  Shl = 0x0D,
  Shr = 0x0E,
  Eq = 0x0F,
  Lt = 0x10,   // unsigned compare
  Jmp = 0x11,  // absolute code index
  Brz = 0x12,  // pop cond, branch if zero
  Load = 0x13,   // pop addr, push word
  Store = 0x14,  // pop value, pop addr
  Tas = 0x15,    // pop addr, push old word, word := 1
  Halt = 0x16,
};

inline constexpr int kOpcodeCount = 23;
inline constexpr size_t kInstrBytes = 5;  // opcode byte + 4 operand bytes, LE
inline constexpr char kMagic[4] = {'X', 'S', 'M', '1'};

struct Instruction {
  Opcode op = Opcode::Nop;
  uint32_t operand = 0;  // zero when the opcode takes none

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct DataWord {
  uint32_t addr = 0;
  uint32_t value = 0;

  friend bool operator==(const DataWord&, const DataWord&) = default;
};

struct Program {
  std::vector<Instruction> code;
  std::vector<DataWord> data_image;
  std::map<std::string, uint32_t> labels;  // name -> code index
  uint32_t entry = 0;
};

struct StackEffect {
  uint8_t pops = 0;
  uint8_t pushes = 0;

  friend bool operator==(const StackEffect&, const StackEffect&) = default;
};

const char* mnemonic(Opcode op);
std::optional<Opcode> opcode_from_mnemonic(std::string_view m);

bool has_operand(Opcode op);  // true for Push, Jmp, Brz
bool is_branch(Opcode op);
bool is_memory_op(Opcode op);  // Load, Store, Tas

// Net stack effect, both counts in {0,1,2}. Over reads one word below the
// value it pops, so its depth requirement (2) exceeds its pop count; use
// min_stack_depth for underflow checks.
StackEffect stack_effect(Opcode op);
uint32_t min_stack_depth(Opcode op);

// Container encoding: magic, u32 code length, u32 data-entry count,
// 5-byte instructions, (u32 addr, u32 word) pairs. Little-endian.
std::vector<uint8_t> encode(const Program& p);

struct DecodeResult {
  bool ok = false;
  Program program;
  std::string error;
};
DecodeResult decode(const std::vector<uint8_t>& bytes);

// Assembler diagnostics carry the 1-based source line.
struct SourceDiag {
  uint32_t line = 0;
  std::string message;
};

struct AsmResult {
  bool ok = false;
  Program program;
  std::vector<SourceDiag> errors;
};

// Grammar: one `label:` prefix, instruction or `.word addr value` per line,
// `;` comments, decimal or 0x-hex literals. Branch operands may be labels
// or absolute code indices.
AsmResult assemble(std::string_view source);

// Regenerates branch-target labels as L<index>. assemble(disassemble(p))
// encodes byte-identically to p.
std::string disassemble(const Program& p);

// Static checks, code-index granularity.
struct Diagnostic {
  uint32_t index = 0;
  std::string message;
};

// Empty result iff program invariants hold and no instruction statically
// underflows an empty-start stack along the linear prefix from entry
// (analysis stops at the first branch, halt, or branch-target index).
std::vector<Diagnostic> validate(const Program& p,
                                 uint64_t memory_words = 1ull << 32);

}  // namespace xsim
