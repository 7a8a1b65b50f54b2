#pragma once

// Experiment description: flat `section.key=value` text with `#` comments.
// All ranges are enforced at parse time, before cycle 0.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xsim/interconnect.hpp"
#include "xsim/netio.hpp"

namespace xsim {

enum class Arch : uint8_t { ProposedCacheless, BaselineCached };

enum class WorkloadKind : uint8_t {
  None,
  Programs,
  Pc,
  Phil,
  Random,
  Hotbank,
  Disjoint,
};

const char* workload_name(WorkloadKind k);

struct SimConfig {
  Arch arch = Arch::ProposedCacheless;
  uint32_t n_cores = 4;
  uint32_t n_banks = 8;
  uint64_t sram_capacity_bytes = 4ull << 20;
  uint32_t mem_latency = 1;
  uint32_t stack_depth = 256;

  // Baseline cache + DRAM. Tracked separately so the proposed architecture
  // can reject explicit cache keys.
  uint32_t cache_line_words = 4;
  uint32_t cache_sets = 64;
  uint32_t cache_hit_latency = 2;
  uint32_t cache_dram_latency = 100;
  bool cache_keys_set = false;

  Rational nic_gbps{0, 1};
  Rational nic_clock_ghz{1, 1};
  uint32_t nic_region_base = 0;
  uint32_t nic_region_len = 1024;
  uint64_t nic_retry_window = 0;  // 0 = never drop
  uint32_t nic_rank = 0;          // priority rank of the NIC requester

  ArbiterKind arb_kind = ArbiterKind::RoundRobin;
  std::vector<uint32_t> arb_ranks;  // per core; empty = default (core i -> i+1)

  uint64_t cycle_budget = 1'000'000;
  uint64_t seed = 1;

  WorkloadKind workload = WorkloadKind::None;
  // pc
  uint32_t pc_producers = 1, pc_consumers = 1, pc_queues = 1, pc_capacity = 1,
           pc_items = 4;
  bool pc_race_locks = false;
  // phil
  uint32_t phil_n = 2, phil_rounds = 1;
  bool phil_naive = false;
  // random
  uint32_t random_accesses = 1000, random_range_words = 1024,
           random_write_pct = 0;
  // hotbank / disjoint
  uint32_t chain_loads = 1000;
  // programs: assembly or binary images supplied by the frontend
  std::vector<std::string> program_sources;

  uint64_t memory_words() const { return sram_capacity_bytes / 4; }
  Rational nic_rate() const {
    return rate_from_bandwidth(nic_gbps, nic_clock_ghz, 4);
  }
  bool nic_enabled() const { return !nic_gbps.is_zero(); }
};

struct ConfigResult {
  bool ok = false;
  SimConfig config;
  std::string error;
};

// `validate` may be disabled when the caller injects more state (program
// sources, seed overrides) before checking ranges itself.
ConfigResult parse_config_text(std::string_view text, bool validate = true);
ConfigResult load_config_file(const std::string& path);

// Returns an empty string when valid.
std::string validate_config(const SimConfig& c);

// Sweepable parameters.
std::vector<std::string> sweepable_params();
// Applies one swept value; returns an empty string on success.
std::string apply_sweep_value(SimConfig& c, const std::string& param,
                              const std::string& value);

}  // namespace xsim
