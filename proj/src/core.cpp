#include "xsim/core.hpp"

#include <cassert>

namespace xsim {

namespace {

CoreTickOutcome fault(CoreState& state, std::string reason) {
  state.status = CoreStatus::Faulted;
  state.fault_reason = reason;
  state.pending.reset();
  CoreTickOutcome out;
  out.event = TickEvent::Faulted;
  out.fault_reason = std::move(reason);
  return out;
}

}  // namespace

CoreTickOutcome core_tick(CoreState& state, const Program& program,
                          const std::optional<MemoryResponse>& response,
                          uint64_t cycle) {
  assert(!state.absorbing());
  CoreTickOutcome out;

  if (state.status == CoreStatus::WaitingMem) {
    if (!response) {
      state.stall_cycles++;
      out.event = TickEvent::Stalled;
      return out;
    }
    if (response->fault) {
      return fault(state, "memory access out of range");
    }
    // Retire the in-flight memory instruction.
    const Instruction& ins = program.code[state.pc];
    if (ins.op == Opcode::Load || ins.op == Opcode::Tas) {
      state.stack.push_back(response->data.value());
    }
    state.pending.reset();
    state.status = CoreStatus::Running;
    state.pc++;
    state.retired++;
    out.event = TickEvent::Retired;
    return out;
  }

  if (state.pc >= program.code.size()) {
    return fault(state, "pc out of range");
  }
  const Instruction& ins = program.code[state.pc];
  auto& st = state.stack;
  size_t depth = st.size();

  if (depth < min_stack_depth(ins.op)) {
    return fault(state, "stack underflow");
  }
  StackEffect eff = stack_effect(ins.op);
  if (depth - eff.pops + eff.pushes > state.max_stack) {
    return fault(state, "stack overflow");
  }

  auto pop = [&st]() {
    uint32_t v = st.back();
    st.pop_back();
    return v;
  };

  switch (ins.op) {
    case Opcode::Nop:
      state.pc++;
      break;
    case Opcode::Push:
      st.push_back(ins.operand);
      state.pc++;
      break;
    case Opcode::Pop:
      pop();
      state.pc++;
      break;
    case Opcode::Dup:
      st.push_back(st.back());
      state.pc++;
      break;
    case Opcode::Swap:
      std::swap(st[depth - 1], st[depth - 2]);
      state.pc++;
      break;
    case Opcode::Over:
      st.push_back(st[depth - 2]);
      state.pc++;
      break;
    case Opcode::Add: {
      uint32_t b = pop(), a = pop();
      st.push_back(a + b);
      state.pc++;
      break;
    }
    case Opcode::Sub: {
      uint32_t b = pop(), a = pop();
      st.push_back(a - b);
      state.pc++;
      break;
    }
    case Opcode::Mul: {
      uint32_t b = pop(), a = pop();
      st.push_back(a * b);
      state.pc++;
      break;
    }
    case Opcode::And: {
      uint32_t b = pop(), a = pop();
      st.push_back(a & b);
      state.pc++;
      break;
    }
    case Opcode::Or: {
      uint32_t b = pop(), a = pop();
      st.push_back(a | b);
      state.pc++;
      break;
    }
    case Opcode::Xor: {
      uint32_t b = pop(), a = pop();
      st.push_back(a ^ b);
      state.pc++;
      break;
    }
    case Opcode::Not:
      st.back() = ~st.back();
      state.pc++;
      break;
    case Opcode::Shl: {
      uint32_t b = pop(), a = pop();
      st.push_back(a << (b & 31));
      state.pc++;
      break;
    }
    case Opcode::Shr: {
      uint32_t b = pop(), a = pop();
      st.push_back(a >> (b & 31));
      state.pc++;
      break;
    }
    case Opcode::Eq: {
      uint32_t b = pop(), a = pop();
      st.push_back(a == b ? 1 : 0);
      state.pc++;
      break;
    }
    case Opcode::Lt: {
      uint32_t b = pop(), a = pop();
      st.push_back(a < b ? 1 : 0);
      state.pc++;
      break;
    }
    case Opcode::Jmp:
      state.pc = ins.operand;
      break;
    case Opcode::Brz: {
      uint32_t c = pop();
      state.pc = (c == 0) ? ins.operand : state.pc + 1;
      break;
    }
    case Opcode::Load: {
      uint32_t addr = pop();
      MemoryRequest req{state.core_id, MemKind::Load, addr, std::nullopt,
                        cycle};
      state.pending = req;
      state.status = CoreStatus::WaitingMem;
      state.stall_cycles++;
      out.event = TickEvent::Stalled;
      out.new_request = req;
      return out;
    }
    case Opcode::Store: {
      uint32_t value = pop();
      uint32_t addr = pop();
      MemoryRequest req{state.core_id, MemKind::Store, addr, value, cycle};
      state.pending = req;
      state.status = CoreStatus::WaitingMem;
      state.stall_cycles++;
      out.event = TickEvent::Stalled;
      out.new_request = req;
      return out;
    }
    case Opcode::Tas: {
      uint32_t addr = pop();
      MemoryRequest req{state.core_id, MemKind::Tas, addr, std::nullopt,
                        cycle};
      state.pending = req;
      state.status = CoreStatus::WaitingMem;
      state.stall_cycles++;
      out.event = TickEvent::Stalled;
      out.new_request = req;
      return out;
    }
    case Opcode::Halt:
      state.status = CoreStatus::Halted;
      state.retired++;
      out.event = TickEvent::Halted;
      return out;
  }

  state.retired++;
  out.event = TickEvent::Retired;
  return out;
}

// Deliberately not shared with core_tick: this is the second, independent
// route through the ISA semantics.
RefResult reference_execute(const Program& program,
                            std::vector<uint32_t> memory, uint64_t max_steps,
                            uint32_t max_stack) {
  RefResult res;
  res.memory = std::move(memory);
  for (const auto& d : program.data_image) {
    if (d.addr < res.memory.size()) res.memory[d.addr] = d.value;
  }
  std::vector<uint32_t>& st = res.stack;
  std::vector<uint32_t>& mem = res.memory;
  uint32_t pc = program.entry;

  auto fail = [&](const char* why) {
    res.outcome = RefOutcome::Faulted;
    res.fault_pc = pc;
    res.fault_reason = why;
    return res;
  };

  while (res.steps < max_steps) {
    if (pc >= program.code.size()) return fail("pc out of range");
    const Instruction& ins = program.code[pc];
    size_t depth = st.size();
    if (depth < min_stack_depth(ins.op)) return fail("stack underflow");
    StackEffect eff = stack_effect(ins.op);
    if (depth - eff.pops + eff.pushes > max_stack)
      return fail("stack overflow");
    res.steps++;

    uint32_t a, b;
    switch (ins.op) {
      case Opcode::Nop:
        pc++;
        break;
      case Opcode::Push:
        st.push_back(ins.operand);
        pc++;
        break;
      case Opcode::Pop:
        st.pop_back();
        pc++;
        break;
      case Opcode::Dup:
        st.push_back(st.back());
        pc++;
        break;
      case Opcode::Swap:
        std::swap(st[depth - 1], st[depth - 2]);
        pc++;
        break;
      case Opcode::Over:
        st.push_back(st[depth - 2]);
        pc++;
        break;
      case Opcode::Add:
      case Opcode::Sub:
      case Opcode::Mul:
      case Opcode::And:
      case Opcode::Or:
      case Opcode::Xor:
      case Opcode::Shl:
      case Opcode::Shr:
      case Opcode::Eq:
      case Opcode::Lt:
        b = st.back();
        st.pop_back();
        a = st.back();
        st.pop_back();
        switch (ins.op) {
          case Opcode::Add: st.push_back(a + b); break;
          case Opcode::Sub: st.push_back(a - b); break;
          case Opcode::Mul: st.push_back(a * b); break;
          case Opcode::And: st.push_back(a & b); break;
          case Opcode::Or: st.push_back(a | b); break;
          case Opcode::Xor: st.push_back(a ^ b); break;
          case Opcode::Shl: st.push_back(a << (b & 31)); break;
          case Opcode::Shr: st.push_back(a >> (b & 31)); break;
          case Opcode::Eq: st.push_back(a == b ? 1 : 0); break;
          case Opcode::Lt: st.push_back(a < b ? 1 : 0); break;
          default: break;
        }
        pc++;
        break;
      case Opcode::Not:
        st.back() = ~st.back();
        pc++;
        break;
      case Opcode::Jmp:
        pc = ins.operand;
        break;
      case Opcode::Brz:
        a = st.back();
        st.pop_back();
        pc = (a == 0) ? ins.operand : pc + 1;
        break;
      case Opcode::Load:
        a = st.back();
        st.pop_back();
        if (a >= mem.size()) return fail("memory access out of range");
        st.push_back(mem[a]);
        pc++;
        break;
      case Opcode::Store:
        b = st.back();
        st.pop_back();
        a = st.back();
        st.pop_back();
        if (a >= mem.size()) return fail("memory access out of range");
        mem[a] = b;
        pc++;
        break;
      case Opcode::Tas:
        a = st.back();
        st.pop_back();
        if (a >= mem.size()) return fail("memory access out of range");
        st.push_back(mem[a]);
        mem[a] = 1;
        pc++;
        break;
      case Opcode::Halt:
        res.outcome = RefOutcome::Halted;
        return res;
    }
  }
  res.outcome = RefOutcome::NonTermination;
  return res;
}

}  // namespace xsim
