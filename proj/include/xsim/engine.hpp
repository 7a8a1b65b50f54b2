#pragma once

// Deterministic cycle loop binding cores, interconnect, memory and NIC.
// Per-cycle phase order: deliver responses, tick cores in index order, tick
// NIC, arbitrate, route. Responses are delivered at the start of the cycle
// they complete, never the grant cycle.

#include <cstdint>
#include <string>
#include <vector>

#include "xsim/config.hpp"
#include "xsim/core.hpp"

namespace xsim {

struct CoreMetrics {
  uint64_t retired = 0;
  uint64_t stall_cycles = 0;
  uint64_t idle_cycles = 0;
  uint64_t grants = 0;
  uint32_t faults = 0;
  bool halted = false;
  bool faulted = false;
};

struct BankMetrics {
  uint64_t grants = 0;
  uint64_t conflict_cycles = 0;
  double utilization = 0.0;
};

struct Metrics {
  // config echo
  std::string arch;
  uint32_t n_cores = 0;
  uint32_t n_banks = 0;
  uint32_t mem_latency = 0;
  std::string arbiter;
  std::string workload;

  uint64_t cycles = 0;
  uint64_t cycle_budget = 0;
  bool budget_exceeded = false;

  std::vector<CoreMetrics> cores;
  std::vector<BankMetrics> banks;

  uint64_t requests_issued = 0;
  uint64_t responses_delivered = 0;
  uint64_t requests_pending_end = 0;
  uint64_t grants_total = 0;

  uint64_t mem_accesses = 0;  // core-side accesses, NIC excluded
  uint64_t mem_latency_total = 0;
  double mean_access_latency = 0.0;

  uint64_t cache_hits = 0;
  uint64_t cache_misses = 0;
  double miss_rate = 0.0;

  uint64_t nic_injected = 0;
  uint64_t nic_dropped = 0;
  uint64_t nic_granted = 0;
  uint64_t nic_in_flight = 0;
  double nic_configured_rate = 0.0;
  double nic_achieved_rate = 0.0;

  uint64_t watchpoint_violations = 0;

  uint64_t work_items = 0;  // items delivered / rounds done / instructions
  double throughput_per_kcycle = 0.0;
  std::string verified;  // pass | fail | n/a
  double fairness_jain = 1.0;
};

struct SimResult {
  bool ok = false;
  std::string error;
  Metrics metrics;
  std::vector<uint32_t> memory;        // final image
  std::vector<CoreState> final_cores;  // architectural state at termination
  std::string trace;                   // per-cycle arbitration, when requested
};

SimResult simulate(const SimConfig& config, bool with_trace = false);

// Stable serializations; identical configs produce byte-identical output.
std::string metrics_to_json(const Metrics& m);
std::string metrics_csv_header();
std::string metrics_csv_row(const Metrics& m);

struct SweepCell {
  std::string value;
  bool ok = false;
  std::string error;
  Metrics metrics;
};

struct SweepResult {
  bool ok = false;
  std::string error;
  std::string param;
  std::vector<SweepCell> cells;
};

// One simulate per value; cells are independent, so `parallel` may fan them
// out across OpenMP threads. Results are identical either way.
SweepResult run_sweep(const SimConfig& base, const std::string& param,
                      const std::vector<std::string>& values, bool parallel);

std::string sweep_csv(const SweepResult& s);

// Renders a sweep.csv (or metrics.csv) into an aligned text table.
std::string render_table(const std::string& csv_text);

}  // namespace xsim
