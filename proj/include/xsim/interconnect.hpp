#pragma once

// Bufferless crossbar: per-cycle matching of requesters to banks. Losing
// requests stay with their owners and re-present next cycle; the fabric
// keeps no state beyond the arbiter bookkeeping.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xsim/memory.hpp"

namespace xsim {

enum class ArbiterKind : uint8_t { RoundRobin, Priority };

struct ArbiterState {
  ArbiterKind kind = ArbiterKind::RoundRobin;
  uint32_t n_requesters = 0;
  std::vector<uint32_t> rr_pointer;   // per bank, next requester to favor
  std::vector<uint32_t> priority_of;  // per requester, lower rank wins

  static ArbiterState round_robin(uint32_t n_requesters, uint32_t n_banks);
  static ArbiterState priority(std::vector<uint32_t> ranks, uint32_t n_banks);
};

struct Grant {
  uint32_t bank = 0;
  uint32_t requester = 0;
};

struct GrantSet {
  std::vector<Grant> grants;      // ascending bank order
  std::vector<uint32_t> rejected;  // requester ids, ascending
};

// `pending` is indexed by requester id; empty slots do not contend.
// RoundRobin grants the first contender at or after the bank's pointer in
// cyclic id order, then advances the pointer past the winner. Priority
// grants the lowest rank, ties broken by requester id.
GrantSet arbitrate(const std::vector<std::optional<MemoryRequest>>& pending,
                   ArbiterState& arb, uint32_t n_banks);

// Performs every granted access against the banks. One access per bank per
// cycle holds by GrantSet construction.
std::vector<MemoryResponse> route(
    const GrantSet& grants,
    const std::vector<std::optional<MemoryRequest>>& pending,
    BankedMemory& mem, uint64_t cycle);

// One line per contended-or-granted bank: `cycle bank winner losers...`,
// banks ascending, losers ascending.
std::string format_trace(uint64_t cycle,
                         const std::vector<std::optional<MemoryRequest>>& pending,
                         const GrantSet& grants, uint32_t n_banks);

}  // namespace xsim
