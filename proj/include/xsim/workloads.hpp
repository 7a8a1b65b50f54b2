#pragma once

// Workload generators for the two canonical synchronization problems, the
// synthetic traffic kinds used by scaling experiments, and post-run output
// verification. Generators emit assembly text in the standard format so
// programs can be inspected and hand-modified.

#include <cstdint>
#include <string>
#include <vector>

namespace xsim {

struct Watchpoint {
  uint32_t addr = 0;
  uint32_t lo = 0;
  uint32_t hi = 0;
};

// Shared-memory layout of the bounded-buffer problem. Queue q occupies
// {lock, head, tail, count, slots[capacity]}; producers and consumers are
// assigned to queues round-robin. Addresses are derived from `base`.
struct PcLayout {
  uint32_t n_producers = 1;
  uint32_t n_consumers = 1;
  uint32_t n_queues = 1;
  uint32_t capacity = 1;
  uint32_t items_per_producer = 4;
  bool race_locks = false;  // fixture: locks via plain load/store, no TAS
  uint32_t base = 64;

  uint32_t queue_words() const { return 4 + capacity; }
  uint32_t lock_addr(uint32_t q) const { return base + q * queue_words(); }
  uint32_t head_addr(uint32_t q) const { return lock_addr(q) + 1; }
  uint32_t tail_addr(uint32_t q) const { return lock_addr(q) + 2; }
  uint32_t count_addr(uint32_t q) const { return lock_addr(q) + 3; }
  uint32_t slots_addr(uint32_t q) const { return lock_addr(q) + 4; }
  uint32_t scratch_base() const { return base + n_queues * queue_words(); }
  uint32_t producer_seq_addr(uint32_t p) const { return scratch_base() + p; }
  uint32_t consumer_got_addr(uint32_t c) const {
    return scratch_base() + n_producers + c;
  }
  uint32_t outputs_base() const {
    return scratch_base() + n_producers + n_consumers;
  }

  uint32_t producer_queue(uint32_t p) const { return p % n_queues; }
  uint32_t consumer_queue(uint32_t c) const { return c % n_queues; }
  uint32_t item_tag(uint32_t p, uint32_t seq1) const {
    return (p << 16) + seq1;  // seq1 is 1-based so a zero word is never an item
  }

  // Per-consumer share of its queue's production, and the start of its
  // output region.
  std::vector<uint32_t> consumer_quotas() const;
  std::vector<uint32_t> consumer_out_bases() const;
  uint32_t extent() const;  // first word past the layout
};

struct PhilLayout {
  uint32_t n = 2;
  uint32_t rounds = 1;
  bool naive = false;  // fixture: left-then-right acquisition, deadlocks
  uint32_t base = 64;

  uint32_t fork_addr(uint32_t i) const { return base + i; }
  uint32_t progress_addr(uint32_t i) const { return base + n + i; }
  uint32_t extent() const { return base + 2 * n; }
};

struct GenResult {
  bool ok = false;
  std::string error;
  std::vector<std::string> asm_sources;  // one program per core
  std::vector<Watchpoint> watchpoints;
};

GenResult gen_producer_consumer(const PcLayout& layout, uint64_t memory_words);
GenResult gen_dining_philosophers(const PhilLayout& layout,
                                  uint64_t memory_words);

// Every core chain-loads address 0 (`loads` times each): maximal contention
// on one bank.
std::vector<std::string> gen_hotbank(uint32_t n_cores, uint32_t loads);

// Core i chain-loads address i: conflict-free when n_cores <= n_banks.
std::vector<std::string> gen_disjoint(uint32_t n_cores, uint32_t loads);

// Seeded uniform address streams, `accesses` per core over
// [0, range_words). write_pct of them are stores.
std::vector<std::string> gen_random_stream(uint32_t n_cores,
                                           uint32_t accesses,
                                           uint32_t range_words,
                                           uint32_t write_pct, uint64_t seed);

struct VerifyReport {
  bool pass = false;
  std::vector<std::string> failures;
  uint64_t items_found = 0;
};

// No lost, duplicated, or invented items; per-producer FIFO order within
// each consumer's output.
VerifyReport verify_pc(const std::vector<uint32_t>& memory,
                       const PcLayout& layout);

// All progress counters equal `rounds`.
VerifyReport verify_phil(const std::vector<uint32_t>& memory,
                         const PhilLayout& layout);

}  // namespace xsim
