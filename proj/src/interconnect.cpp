#include "xsim/interconnect.hpp"

#include <algorithm>
#include <cassert>

namespace xsim {

ArbiterState ArbiterState::round_robin(uint32_t n_requesters,
                                       uint32_t n_banks) {
  ArbiterState st;
  st.kind = ArbiterKind::RoundRobin;
  st.n_requesters = n_requesters;
  st.rr_pointer.assign(n_banks, 0);
  return st;
}

ArbiterState ArbiterState::priority(std::vector<uint32_t> ranks,
                                    uint32_t n_banks) {
  ArbiterState st;
  st.kind = ArbiterKind::Priority;
  st.n_requesters = static_cast<uint32_t>(ranks.size());
  st.priority_of = std::move(ranks);
  st.rr_pointer.assign(n_banks, 0);  // unused, kept sized for symmetry
  return st;
}

GrantSet arbitrate(const std::vector<std::optional<MemoryRequest>>& pending,
                   ArbiterState& arb, uint32_t n_banks) {
  assert(pending.size() == arb.n_requesters);
  GrantSet out;

  // Gather contenders per bank in requester order.
  std::vector<std::vector<uint32_t>> by_bank(n_banks);
  for (uint32_t r = 0; r < pending.size(); r++) {
    if (pending[r]) by_bank[bank_of(pending[r]->address, n_banks)].push_back(r);
  }

  for (uint32_t b = 0; b < n_banks; b++) {
    const auto& contenders = by_bank[b];
    if (contenders.empty()) continue;

    uint32_t winner = contenders[0];
    if (arb.kind == ArbiterKind::RoundRobin) {
      // First contender at or after the pointer in cyclic id order.
      uint32_t ptr = arb.rr_pointer[b];
      uint32_t best_dist = UINT32_MAX;
      for (uint32_t r : contenders) {
        uint32_t dist = (r + arb.n_requesters - ptr) % arb.n_requesters;
        if (dist < best_dist) {
          best_dist = dist;
          winner = r;
        }
      }
      arb.rr_pointer[b] = (winner + 1) % arb.n_requesters;
    } else {
      for (uint32_t r : contenders) {
        if (arb.priority_of[r] < arb.priority_of[winner]) winner = r;
      }
    }

    out.grants.push_back({b, winner});
    for (uint32_t r : contenders) {
      if (r != winner) out.rejected.push_back(r);
    }
  }

  std::sort(out.rejected.begin(), out.rejected.end());
  return out;
}

std::vector<MemoryResponse> route(
    const GrantSet& grants,
    const std::vector<std::optional<MemoryRequest>>& pending,
    BankedMemory& mem, uint64_t cycle) {
  std::vector<MemoryResponse> out;
  out.reserve(grants.grants.size());
  for (const auto& g : grants.grants) {
    const auto& req = pending[g.requester];
    assert(req && bank_of(req->address, mem.n_banks) == g.bank);
    out.push_back(bank_access(mem, *req, cycle));
  }
  return out;
}

std::string format_trace(
    uint64_t cycle, const std::vector<std::optional<MemoryRequest>>& pending,
    const GrantSet& grants, uint32_t n_banks) {
  std::vector<std::vector<uint32_t>> by_bank(n_banks);
  for (uint32_t r = 0; r < pending.size(); r++) {
    if (pending[r]) by_bank[bank_of(pending[r]->address, n_banks)].push_back(r);
  }
  std::string out;
  for (const auto& g : grants.grants) {
    out += std::to_string(cycle);
    out += ' ';
    out += std::to_string(g.bank);
    out += ' ';
    out += std::to_string(g.requester);
    for (uint32_t r : by_bank[g.bank]) {
      if (r != g.requester) {
        out += ' ';
        out += std::to_string(r);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace xsim
