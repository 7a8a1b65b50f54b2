#include "xsim/isa.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <set>

namespace xsim {

namespace {

struct OpInfo {
  Opcode op;
  const char* name;
  bool operand;
  StackEffect effect;
  uint32_t min_depth;
};

constexpr OpInfo kOps[kOpcodeCount] = {
    {Opcode::Nop, "NOP", false, {0, 0}, 0},
    {Opcode::Push, "PUSH", true, {0, 1}, 0},
    {Opcode::Pop, "POP", false, {1, 0}, 1},
    {Opcode::Dup, "DUP", false, {1, 2}, 1},
    {Opcode::Swap, "SWAP", false, {2, 2}, 2},
    {Opcode::Over, "OVER", false, {1, 2}, 2},
    {Opcode::Add, "ADD", false, {2, 1}, 2},
    {Opcode::Sub, "SUB", false, {2, 1}, 2},
    {Opcode::Mul, "MUL", false, {2, 1}, 2},
    {Opcode::And, "AND", false, {2, 1}, 2},
    {Opcode::Or, "OR", false, {2, 1}, 2},
    {Opcode::Xor, "XOR", false, {2, 1}, 2},
    {Opcode::Not, "NOT", false, {1, 1}, 1},
    {Opcode::Shl, "SHL", false, {2, 1}, 2},
    {Opcode::Shr, "SHR", false, {2, 1}, 2},
    {Opcode::Eq, "EQ", false, {2, 1}, 2},
    {Opcode::Lt, "LT", false, {2, 1}, 2},
    {Opcode::Jmp, "JMP", true, {0, 0}, 0},
    {Opcode::Brz, "BRZ", true, {1, 0}, 1},
    {Opcode::Load, "LOAD", false, {1, 1}, 1},
    {Opcode::Store, "STORE", false, {2, 0}, 2},
    {Opcode::Tas, "TAS", false, {1, 1}, 1},
    {Opcode::Halt, "HALT", false, {0, 0}, 0},
};

const OpInfo& info(Opcode op) { return kOps[static_cast<uint8_t>(op)]; }

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xFF));
}

uint32_t get_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

}  // namespace

const char* mnemonic(Opcode op) { return info(op).name; }

std::optional<Opcode> opcode_from_mnemonic(std::string_view m) {
  std::string u = upper(m);
  for (const auto& o : kOps) {
    if (u == o.name) return o.op;
  }
  return std::nullopt;
}

bool has_operand(Opcode op) { return info(op).operand; }

bool is_branch(Opcode op) { return op == Opcode::Jmp || op == Opcode::Brz; }

bool is_memory_op(Opcode op) {
  return op == Opcode::Load || op == Opcode::Store || op == Opcode::Tas;
}

StackEffect stack_effect(Opcode op) { return info(op).effect; }

uint32_t min_stack_depth(Opcode op) { return info(op).min_depth; }

std::vector<uint8_t> encode(const Program& p) {
  std::vector<uint8_t> out;
  out.reserve(12 + p.code.size() * kInstrBytes + p.data_image.size() * 8);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, static_cast<uint32_t>(p.code.size()));
  put_u32(out, static_cast<uint32_t>(p.data_image.size()));
  for (const auto& ins : p.code) {
    out.push_back(static_cast<uint8_t>(ins.op));
    put_u32(out, ins.operand);
  }
  for (const auto& d : p.data_image) {
    put_u32(out, d.addr);
    put_u32(out, d.value);
  }
  return out;
}

DecodeResult decode(const std::vector<uint8_t>& bytes) {
  DecodeResult res;
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    res.error = "bad magic";
    return res;
  }
  uint32_t n_code = get_u32(bytes.data() + 4);
  uint32_t n_data = get_u32(bytes.data() + 8);
  size_t need = 12 + size_t{n_code} * kInstrBytes + size_t{n_data} * 8;
  if (bytes.size() != need) {
    res.error = "truncated or oversized image";
    return res;
  }
  const uint8_t* p = bytes.data() + 12;
  res.program.code.reserve(n_code);
  for (uint32_t i = 0; i < n_code; i++, p += kInstrBytes) {
    uint8_t raw = p[0];
    if (raw >= kOpcodeCount) {
      res.error = "unknown opcode byte at index " + std::to_string(i);
      return res;
    }
    Instruction ins{static_cast<Opcode>(raw), get_u32(p + 1)};
    if (!has_operand(ins.op) && ins.operand != 0) {
      res.error = "nonzero operand on void opcode at index " + std::to_string(i);
      return res;
    }
    res.program.code.push_back(ins);
  }
  res.program.data_image.reserve(n_data);
  for (uint32_t i = 0; i < n_data; i++, p += 8) {
    res.program.data_image.push_back({get_u32(p), get_u32(p + 4)});
  }
  res.ok = true;
  return res;
}

namespace {

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Accepts decimal (optionally negative) or 0x-hex; value must lie in
// [-2^31, 2^32). Returns the 32-bit two's-complement pattern.
std::optional<uint32_t> parse_literal(std::string_view tok) {
  if (tok.empty()) return std::nullopt;
  bool neg = tok[0] == '-';
  std::string_view body = neg ? tok.substr(1) : tok;
  if (body.empty()) return std::nullopt;
  uint64_t mag = 0;
  if (body.size() > 2 && body[0] == '0' &&
      (body[1] == 'x' || body[1] == 'X')) {
    for (char c : body.substr(2)) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else return std::nullopt;
      mag = mag * 16 + static_cast<uint64_t>(d);
      if (mag > 0xFFFFFFFFFFull) return std::nullopt;  // avoid overflow
    }
  } else {
    for (char c : body) {
      if (c < '0' || c > '9') return std::nullopt;
      mag = mag * 10 + static_cast<uint64_t>(c - '0');
      if (mag > 0xFFFFFFFFFFull) return std::nullopt;
    }
  }
  if (neg) {
    if (mag > 0x80000000ull) return std::nullopt;
    return static_cast<uint32_t>(~mag + 1);
  }
  if (mag > 0xFFFFFFFFull) return std::nullopt;
  return static_cast<uint32_t>(mag);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) i++;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) j++;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

AsmResult assemble(std::string_view source) {
  AsmResult res;
  Program& prog = res.program;

  struct Fixup {
    uint32_t code_index;
    std::string label;
    uint32_t line;
  };
  std::vector<Fixup> fixups;

  uint32_t lineno = 0;
  size_t pos = 0;
  while (pos <= source.size()) {
    size_t eol = source.find('\n', pos);
    std::string_view line = source.substr(
        pos, eol == std::string_view::npos ? source.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? source.size() + 1 : eol + 1;
    lineno++;

    if (size_t c = line.find(';'); c != std::string_view::npos)
      line = line.substr(0, c);
    auto toks = split_ws(line);
    if (toks.empty()) continue;

    // Optional label prefix: either "name:" or "name: INSTR ..."
    if (toks[0].back() == ':') {
      std::string_view name = toks[0].substr(0, toks[0].size() - 1);
      if (!is_ident(name)) {
        res.errors.push_back({lineno, "malformed label '" +
                                          std::string(toks[0]) + "'"});
        continue;
      }
      auto [it, inserted] = prog.labels.emplace(
          std::string(name), static_cast<uint32_t>(prog.code.size()));
      if (!inserted) {
        res.errors.push_back(
            {lineno, "duplicate label '" + std::string(name) + "'"});
      }
      toks.erase(toks.begin());
      if (toks.empty()) continue;
    }

    if (toks[0] == ".word") {
      if (toks.size() != 3) {
        res.errors.push_back({lineno, ".word expects address and value"});
        continue;
      }
      auto addr = parse_literal(toks[1]);
      auto value = parse_literal(toks[2]);
      if (!addr || !value) {
        res.errors.push_back({lineno, "malformed operand in .word"});
        continue;
      }
      prog.data_image.push_back({*addr, *value});
      continue;
    }

    auto op = opcode_from_mnemonic(toks[0]);
    if (!op) {
      res.errors.push_back(
          {lineno, "unknown mnemonic '" + std::string(toks[0]) + "'"});
      continue;
    }
    if (has_operand(*op)) {
      if (toks.size() != 2) {
        res.errors.push_back({lineno, toks.size() < 2
                                          ? "missing operand"
                                          : "unexpected extra operand"});
        continue;
      }
      Instruction ins{*op, 0};
      if (is_branch(*op) && is_ident(toks[1])) {
        fixups.push_back({static_cast<uint32_t>(prog.code.size()),
                          std::string(toks[1]), lineno});
      } else {
        auto v = parse_literal(toks[1]);
        if (!v) {
          res.errors.push_back(
              {lineno, "operand out of 32-bit range or malformed: '" +
                           std::string(toks[1]) + "'"});
          continue;
        }
        ins.operand = *v;
      }
      prog.code.push_back(ins);
    } else {
      if (toks.size() != 1) {
        res.errors.push_back({lineno, "unexpected operand"});
        continue;
      }
      prog.code.push_back({*op, 0});
    }
  }

  for (const auto& f : fixups) {
    auto it = prog.labels.find(f.label);
    if (it == prog.labels.end()) {
      res.errors.push_back({f.line, "unresolved label '" + f.label + "'"});
    } else {
      prog.code[f.code_index].operand = it->second;
    }
  }

  res.ok = res.errors.empty();
  return res;
}

std::string disassemble(const Program& p) {
  std::set<uint32_t> targets;
  for (const auto& ins : p.code) {
    if (is_branch(ins.op) && ins.operand < p.code.size())
      targets.insert(ins.operand);
  }
  std::string out;
  for (uint32_t i = 0; i < p.code.size(); i++) {
    if (targets.count(i)) {
      out += "L" + std::to_string(i) + ":\n";
    }
    const auto& ins = p.code[i];
    out += mnemonic(ins.op);
    if (has_operand(ins.op)) {
      out += ' ';
      if (is_branch(ins.op) && ins.operand < p.code.size()) {
        out += "L" + std::to_string(ins.operand);
      } else if (ins.op == Opcode::Push) {
        out += std::to_string(static_cast<int32_t>(ins.operand));
      } else {
        out += std::to_string(ins.operand);
      }
    }
    out += '\n';
  }
  for (const auto& d : p.data_image) {
    out += ".word " + std::to_string(d.addr) + " " + std::to_string(d.value) +
           "\n";
  }
  return out;
}

std::vector<Diagnostic> validate(const Program& p, uint64_t memory_words) {
  std::vector<Diagnostic> diags;
  const uint32_t n = static_cast<uint32_t>(p.code.size());

  std::set<uint32_t> targets;
  for (uint32_t i = 0; i < n; i++) {
    const auto& ins = p.code[i];
    if (!has_operand(ins.op) && ins.operand != 0) {
      diags.push_back({i, "nonzero operand on void opcode"});
    }
    if (is_branch(ins.op)) {
      if (ins.operand >= n) {
        diags.push_back({i, "target out of range"});
      } else {
        targets.insert(ins.operand);
      }
    }
  }

  if (n > 0 && p.entry >= n) {
    diags.push_back({p.entry, "entry out of range"});
  }

  std::set<uint32_t> seen_addrs;
  for (const auto& d : p.data_image) {
    if (d.addr >= memory_words) {
      diags.push_back({d.addr, "data address out of range"});
    }
    if (!seen_addrs.insert(d.addr).second) {
      diags.push_back({d.addr, "duplicate data address"});
    }
  }

  // Linear-prefix underflow: exact stack-depth walk from entry, stopping at
  // the first branch, halt, or control-flow merge point.
  if (n > 0 && p.entry < n) {
    int64_t depth = 0;
    for (uint32_t pc = p.entry; pc < n; pc++) {
      if (pc != p.entry && targets.count(pc)) break;
      const auto& ins = p.code[pc];
      if (depth < min_stack_depth(ins.op)) {
        diags.push_back(
            {pc, "stack underflow at index " + std::to_string(pc)});
        break;
      }
      StackEffect eff = stack_effect(ins.op);
      depth += eff.pushes - eff.pops;
      if (is_branch(ins.op) || ins.op == Opcode::Halt) break;
    }
  }

  return diags;
}

}  // namespace xsim
