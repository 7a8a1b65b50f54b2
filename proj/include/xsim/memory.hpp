#pragma once

// Banked SRAM store for the cacheless configuration, plus the direct-mapped
// cache model used by the conventional baseline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace xsim {

enum class MemKind : uint8_t { Load, Store, Tas, Dma };

struct MemoryRequest {
  uint32_t requester = 0;  // core index; the NIC is index n_cores
  MemKind kind = MemKind::Load;
  uint32_t address = 0;            // word address
  std::optional<uint32_t> data;    // present iff Store/Dma
  uint64_t issue_cycle = 0;
};

struct MemoryResponse {
  uint32_t requester = 0;
  std::optional<uint32_t> data;  // present iff request was Load/Tas
  uint64_t grant_cycle = 0;
  uint64_t complete_cycle = 0;  // grant_cycle + mem_latency
  bool fault = false;           // address out of range
};

// Word-interleaved banks over a flat word array; bank b owns addresses
// congruent to b mod n_banks.
struct BankedMemory {
  uint32_t n_banks = 1;
  uint32_t mem_latency = 1;
  std::vector<uint32_t> words;

  BankedMemory() = default;
  BankedMemory(uint64_t total_words, uint32_t banks, uint32_t latency)
      : n_banks(banks), mem_latency(latency), words(total_words, 0) {}
};

uint32_t bank_of(uint32_t address, uint32_t n_banks);

// Performs the granted access. Atomicity is structural: the caller admits at
// most one granted request per bank per cycle.
MemoryResponse bank_access(BankedMemory& mem, const MemoryRequest& req,
                           uint64_t grant_cycle);

// Direct-mapped, write-allocate, write-through. Tags only; the DRAM image
// owned by the engine is the authoritative data store.
struct CacheModel {
  uint32_t line_words = 4;  // power of two
  uint32_t sets = 64;       // power of two
  uint32_t hit_latency = 2;
  uint32_t dram_latency = 100;
  std::vector<uint32_t> tags;
  std::vector<uint8_t> valid;

  CacheModel() = default;
  CacheModel(uint32_t line_words_, uint32_t sets_, uint32_t hit_lat,
             uint32_t dram_lat)
      : line_words(line_words_),
        sets(sets_),
        hit_latency(hit_lat),
        dram_latency(dram_lat),
        tags(sets_, 0),
        valid(sets_, 0) {}

  uint32_t capacity_words() const { return line_words * sets; }
};

struct CacheAccessResult {
  bool hit = false;
  uint32_t latency = 0;
};

// Load/Store lookup; misses fill the line (write-allocate).
CacheAccessResult cache_access(CacheModel& cache, uint32_t address);

// Text dump: one `addr value` line per nonzero word, lowercase hex,
// ascending addresses.
std::string dump_memory(const std::vector<uint32_t>& words);

}  // namespace xsim
