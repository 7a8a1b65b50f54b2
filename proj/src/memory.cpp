#include "xsim/memory.hpp"

#include <cassert>
#include <cstdio>

namespace xsim {

uint32_t bank_of(uint32_t address, uint32_t n_banks) {
  assert(n_banks > 0 && (n_banks & (n_banks - 1)) == 0);
  return address & (n_banks - 1);
}

MemoryResponse bank_access(BankedMemory& mem, const MemoryRequest& req,
                           uint64_t grant_cycle) {
  MemoryResponse resp;
  resp.requester = req.requester;
  resp.grant_cycle = grant_cycle;
  resp.complete_cycle = grant_cycle + mem.mem_latency;
  if (req.address >= mem.words.size()) {
    resp.fault = true;
    return resp;
  }
  switch (req.kind) {
    case MemKind::Load:
      resp.data = mem.words[req.address];
      break;
    case MemKind::Store:
    case MemKind::Dma:
      mem.words[req.address] = req.data.value();
      break;
    case MemKind::Tas:
      resp.data = mem.words[req.address];
      mem.words[req.address] = 1;
      break;
  }
  return resp;
}

CacheAccessResult cache_access(CacheModel& cache, uint32_t address) {
  uint32_t line = address / cache.line_words;
  uint32_t set = line & (cache.sets - 1);
  uint32_t tag = line / cache.sets;
  if (cache.valid[set] && cache.tags[set] == tag) {
    return {true, cache.hit_latency};
  }
  cache.valid[set] = 1;
  cache.tags[set] = tag;
  return {false, cache.dram_latency};
}

std::string dump_memory(const std::vector<uint32_t>& words) {
  std::string out;
  char buf[32];
  for (size_t addr = 0; addr < words.size(); addr++) {
    if (words[addr] == 0) continue;
    int n = std::snprintf(buf, sizeof(buf), "%zx %x\n", addr, words[addr]);
    out.append(buf, static_cast<size_t>(n));
  }
  return out;
}

}  // namespace xsim
