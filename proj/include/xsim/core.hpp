#pragma once

// One stack-machine core: cycle-accurate tick model, plus an untimed
// reference interpreter used as the functional oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xsim/isa.hpp"
#include "xsim/memory.hpp"

namespace xsim {

enum class CoreStatus : uint8_t { Running, WaitingMem, Halted, Faulted };

struct CoreState {
  uint32_t core_id = 0;
  uint32_t pc = 0;
  std::vector<uint32_t> stack;
  CoreStatus status = CoreStatus::Running;
  std::optional<MemoryRequest> pending;  // present iff WaitingMem
  uint64_t retired = 0;
  uint64_t stall_cycles = 0;
  uint32_t max_stack = 256;
  std::string fault_reason;

  bool absorbing() const {
    return status == CoreStatus::Halted || status == CoreStatus::Faulted;
  }
};

enum class TickEvent : uint8_t { Retired, Stalled, Halted, Faulted };

struct CoreTickOutcome {
  TickEvent event = TickEvent::Stalled;
  std::optional<MemoryRequest> new_request;  // set on a fresh Load/Store/Tas issue
  std::string fault_reason;
};

// Advances one cycle. `response` must be present only when the core is
// WaitingMem and the matching access completed this cycle. Non-memory
// instructions retire in one cycle; Load/Store/Tas issue a request (counted
// as a stall cycle) and retire on the response cycle. Faults quarantine the
// core; they never abort the simulation.
CoreTickOutcome core_tick(CoreState& state, const Program& program,
                          const std::optional<MemoryResponse>& response,
                          uint64_t cycle);

enum class RefOutcome : uint8_t { Halted, Faulted, NonTermination };

struct RefResult {
  RefOutcome outcome = RefOutcome::Halted;
  std::vector<uint32_t> stack;
  std::vector<uint32_t> memory;
  uint64_t steps = 0;
  uint32_t fault_pc = 0;
  std::string fault_reason;
};

// Untimed interpreter with zero-latency atomic memory. Kept independent of
// core_tick so the two paths cross-check each other.
RefResult reference_execute(const Program& program,
                            std::vector<uint32_t> memory, uint64_t max_steps,
                            uint32_t max_stack = 256);

}  // namespace xsim
