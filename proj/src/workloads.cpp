#include "xsim/workloads.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace xsim {

namespace {

std::string num(uint32_t v) { return std::to_string(v); }

}  // namespace

std::vector<uint32_t> PcLayout::consumer_quotas() const {
  // Split each queue's total production across the consumers assigned to
  // that queue, earlier consumers taking the remainder.
  std::vector<uint32_t> quotas(n_consumers, 0);
  for (uint32_t q = 0; q < n_queues; q++) {
    uint32_t produced = 0;
    for (uint32_t p = 0; p < n_producers; p++) {
      if (producer_queue(p) == q) produced += items_per_producer;
    }
    std::vector<uint32_t> consumers;
    for (uint32_t c = 0; c < n_consumers; c++) {
      if (consumer_queue(c) == q) consumers.push_back(c);
    }
    if (consumers.empty()) continue;
    uint32_t share = produced / static_cast<uint32_t>(consumers.size());
    uint32_t rem = produced % static_cast<uint32_t>(consumers.size());
    for (uint32_t i = 0; i < consumers.size(); i++) {
      quotas[consumers[i]] = share + (i < rem ? 1 : 0);
    }
  }
  return quotas;
}

std::vector<uint32_t> PcLayout::consumer_out_bases() const {
  auto quotas = consumer_quotas();
  std::vector<uint32_t> bases(n_consumers, 0);
  uint32_t at = outputs_base();
  for (uint32_t c = 0; c < n_consumers; c++) {
    bases[c] = at;
    at += quotas[c];
  }
  return bases;
}

uint32_t PcLayout::extent() const {
  uint32_t total = 0;
  for (uint32_t q : consumer_quotas()) total += q;
  return outputs_base() + total;
}

namespace {

std::string pc_producer_asm(const PcLayout& L, uint32_t p) {
  uint32_t q = L.producer_queue(p);
  std::string s;
  s += "; producer " + num(p) + ", queue " + num(q) + "\n";
  s += "PUSH " + num(L.producer_seq_addr(p)) + "\nPUSH 0\nSTORE\n";
  s += "loop:\n";
  s += "PUSH " + num(L.producer_seq_addr(p)) + "\nLOAD\n";
  s += "PUSH " + num(L.items_per_producer) + "\nEQ\nBRZ acq\nHALT\n";
  if (L.race_locks) {
    // Broken lock: test then set with a window in between.
    s += "acq:\nPUSH " + num(L.lock_addr(q)) + "\nLOAD\nBRZ take\nJMP acq\n";
    s += "take:\nPUSH " + num(L.lock_addr(q)) + "\nPUSH 1\nSTORE\n";
  } else {
    s += "acq:\nPUSH " + num(L.lock_addr(q)) + "\nTAS\nBRZ crit\nJMP acq\n";
    s += "crit:\n";
  }
  s += "PUSH " + num(L.count_addr(q)) + "\nLOAD\n";
  s += "PUSH " + num(L.capacity) + "\nEQ\nBRZ enq\n";
  s += "PUSH " + num(L.lock_addr(q)) + "\nPUSH 0\nSTORE\nJMP acq\n";
  s += "enq:\n";
  // slots[tail] = (p << 16) + seq + 1
  s += "PUSH " + num(L.slots_addr(q)) + "\nPUSH " + num(L.tail_addr(q)) +
       "\nLOAD\nADD\n";
  s += "PUSH " + num(L.producer_seq_addr(p)) + "\nLOAD\n";
  s += "PUSH " + num((p << 16) + 1) + "\nADD\nSTORE\n";
  // tail = tail + 1, wrapped at capacity
  s += "PUSH " + num(L.tail_addr(q)) + "\nPUSH " + num(L.tail_addr(q)) +
       "\nLOAD\nPUSH 1\nADD\n";
  s += "DUP\nPUSH " + num(L.capacity) + "\nEQ\nBRZ tw\nPOP\nPUSH 0\n";
  s += "tw:\nSTORE\n";
  // count += 1
  s += "PUSH " + num(L.count_addr(q)) + "\nPUSH " + num(L.count_addr(q)) +
       "\nLOAD\nPUSH 1\nADD\nSTORE\n";
  // release, seq += 1
  s += "PUSH " + num(L.lock_addr(q)) + "\nPUSH 0\nSTORE\n";
  s += "PUSH " + num(L.producer_seq_addr(p)) + "\nPUSH " +
       num(L.producer_seq_addr(p)) + "\nLOAD\nPUSH 1\nADD\nSTORE\n";
  s += "JMP loop\n";
  return s;
}

std::string pc_consumer_asm(const PcLayout& L, uint32_t c, uint32_t quota,
                            uint32_t out_base) {
  uint32_t q = L.consumer_queue(c);
  std::string s;
  s += "; consumer " + num(c) + ", queue " + num(q) + "\n";
  s += "PUSH " + num(L.consumer_got_addr(c)) + "\nPUSH 0\nSTORE\n";
  s += "loop:\n";
  s += "PUSH " + num(L.consumer_got_addr(c)) + "\nLOAD\n";
  s += "PUSH " + num(quota) + "\nEQ\nBRZ acq\nHALT\n";
  if (L.race_locks) {
    s += "acq:\nPUSH " + num(L.lock_addr(q)) + "\nLOAD\nBRZ take\nJMP acq\n";
    s += "take:\nPUSH " + num(L.lock_addr(q)) + "\nPUSH 1\nSTORE\n";
  } else {
    s += "acq:\nPUSH " + num(L.lock_addr(q)) + "\nTAS\nBRZ crit\nJMP acq\n";
    s += "crit:\n";
  }
  s += "PUSH " + num(L.count_addr(q)) + "\nLOAD\nBRZ empty\n";
  // out[got] = slots[head]
  s += "PUSH " + num(out_base) + "\nPUSH " + num(L.consumer_got_addr(c)) +
       "\nLOAD\nADD\n";
  s += "PUSH " + num(L.slots_addr(q)) + "\nPUSH " + num(L.head_addr(q)) +
       "\nLOAD\nADD\nLOAD\nSTORE\n";
  // head = head + 1, wrapped at capacity
  s += "PUSH " + num(L.head_addr(q)) + "\nPUSH " + num(L.head_addr(q)) +
       "\nLOAD\nPUSH 1\nADD\n";
  s += "DUP\nPUSH " + num(L.capacity) + "\nEQ\nBRZ hw\nPOP\nPUSH 0\n";
  s += "hw:\nSTORE\n";
  // count -= 1
  s += "PUSH " + num(L.count_addr(q)) + "\nPUSH " + num(L.count_addr(q)) +
       "\nLOAD\nPUSH 1\nSUB\nSTORE\n";
  // release, got += 1
  s += "PUSH " + num(L.lock_addr(q)) + "\nPUSH 0\nSTORE\n";
  s += "PUSH " + num(L.consumer_got_addr(c)) + "\nPUSH " +
       num(L.consumer_got_addr(c)) + "\nLOAD\nPUSH 1\nADD\nSTORE\n";
  s += "JMP loop\n";
  s += "empty:\nPUSH " + num(L.lock_addr(q)) + "\nPUSH 0\nSTORE\nJMP acq\n";
  return s;
}

}  // namespace

GenResult gen_producer_consumer(const PcLayout& L, uint64_t memory_words) {
  GenResult res;
  if (L.n_queues == 0 || L.capacity == 0) {
    res.error = "producer-consumer layout needs at least one queue and slot";
    return res;
  }
  for (uint32_t q = 0; q < L.n_queues; q++) {
    bool produced = false, consumed = false;
    for (uint32_t p = 0; p < L.n_producers; p++)
      produced |= L.producer_queue(p) == q && L.items_per_producer > 0;
    for (uint32_t c = 0; c < L.n_consumers; c++)
      consumed |= L.consumer_queue(c) == q;
    if (produced && !consumed) {
      res.error = "queue " + num(q) + " has producers but no consumer";
      return res;
    }
  }
  if (L.extent() > memory_words) {
    res.error = "producer-consumer layout exceeds memory";
    return res;
  }

  auto quotas = L.consumer_quotas();
  auto outs = L.consumer_out_bases();
  for (uint32_t p = 0; p < L.n_producers; p++) {
    res.asm_sources.push_back(pc_producer_asm(L, p));
  }
  for (uint32_t c = 0; c < L.n_consumers; c++) {
    res.asm_sources.push_back(pc_consumer_asm(L, c, quotas[c], outs[c]));
  }
  for (uint32_t q = 0; q < L.n_queues; q++) {
    res.watchpoints.push_back({L.count_addr(q), 0, L.capacity});
  }
  res.ok = true;
  return res;
}

GenResult gen_dining_philosophers(const PhilLayout& L, uint64_t memory_words) {
  GenResult res;
  if (L.n < 2) {
    res.error = "dining philosophers needs n >= 2";
    return res;
  }
  if (L.extent() > memory_words) {
    res.error = "philosopher layout exceeds memory";
    return res;
  }
  for (uint32_t i = 0; i < L.n; i++) {
    uint32_t left = i;
    uint32_t right = (i + 1) % L.n;
    uint32_t first = L.naive ? left : std::min(left, right);
    uint32_t second = L.naive ? right : std::max(left, right);
    std::string s;
    s += "; philosopher " + num(i) + "\n";
    s += "loop:\n";
    s += "PUSH " + num(L.progress_addr(i)) + "\nLOAD\n";
    s += "PUSH " + num(L.rounds) + "\nEQ\nBRZ a1\nHALT\n";
    s += "a1:\nPUSH " + num(L.fork_addr(first)) + "\nTAS\nBRZ a2\nJMP a1\n";
    s += "a2:\nPUSH " + num(L.fork_addr(second)) + "\nTAS\nBRZ eat\nJMP a2\n";
    s += "eat:\n";
    s += "PUSH " + num(L.progress_addr(i)) + "\nPUSH " +
         num(L.progress_addr(i)) + "\nLOAD\nPUSH 1\nADD\nSTORE\n";
    s += "PUSH " + num(L.fork_addr(second)) + "\nPUSH 0\nSTORE\n";
    s += "PUSH " + num(L.fork_addr(first)) + "\nPUSH 0\nSTORE\n";
    s += "JMP loop\n";
    res.asm_sources.push_back(std::move(s));
  }
  for (uint32_t i = 0; i < L.n; i++) {
    res.watchpoints.push_back({L.fork_addr(i), 0, 1});
    res.watchpoints.push_back({L.progress_addr(i), 0, L.rounds});
  }
  res.ok = true;
  return res;
}

std::vector<std::string> gen_hotbank(uint32_t n_cores, uint32_t loads) {
  std::vector<std::string> out;
  std::string body = "PUSH 0\n";
  for (uint32_t i = 0; i < loads; i++) body += "LOAD\n";
  body += "HALT\n";  // memory[0] stays 0, so every LOAD re-reads address 0
  for (uint32_t c = 0; c < n_cores; c++) out.push_back(body);
  return out;
}

std::vector<std::string> gen_disjoint(uint32_t n_cores, uint32_t loads) {
  std::vector<std::string> out;
  for (uint32_t c = 0; c < n_cores; c++) {
    // memory[c] = c makes the loaded value usable as the next address.
    std::string s = ".word " + num(c) + " " + num(c) + "\n";
    s += "PUSH " + num(c) + "\n";
    for (uint32_t i = 0; i < loads; i++) s += "LOAD\n";
    s += "HALT\n";
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> gen_random_stream(uint32_t n_cores,
                                           uint32_t accesses,
                                           uint32_t range_words,
                                           uint32_t write_pct, uint64_t seed) {
  std::vector<std::string> out;
  for (uint32_t c = 0; c < n_cores; c++) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * (c + 1)));
    std::string s;
    for (uint32_t i = 0; i < accesses; i++) {
      uint32_t addr = static_cast<uint32_t>(rng() % range_words);
      bool store = write_pct > 0 && (rng() % 100) < write_pct;
      if (store) {
        s += "PUSH " + num(addr) + "\nPUSH " +
             num(static_cast<uint32_t>(rng())) + "\nSTORE\n";
      } else {
        s += "PUSH " + num(addr) + "\nLOAD\nPOP\n";
      }
    }
    s += "HALT\n";
    out.push_back(std::move(s));
  }
  return out;
}

VerifyReport verify_pc(const std::vector<uint32_t>& memory,
                       const PcLayout& L) {
  VerifyReport rep;
  auto quotas = L.consumer_quotas();
  auto outs = L.consumer_out_bases();

  // Expected multiset: items 1..K from every producer.
  std::map<uint32_t, uint32_t> expected;
  for (uint32_t p = 0; p < L.n_producers; p++) {
    for (uint32_t s = 1; s <= L.items_per_producer; s++) {
      expected[L.item_tag(p, s)] = 1;
    }
  }

  std::map<uint32_t, uint32_t> seen;
  for (uint32_t c = 0; c < L.n_consumers; c++) {
    std::map<uint32_t, uint32_t> last_seq;  // per producer, within this consumer
    for (uint32_t i = 0; i < quotas[c]; i++) {
      uint32_t word = memory[outs[c] + i];
      uint32_t p = word >> 16;
      uint32_t s = word & 0xFFFF;
      if (p >= L.n_producers || s == 0 || s > L.items_per_producer ||
          L.producer_queue(p) != L.consumer_queue(c)) {
        rep.failures.push_back("invented item " + std::to_string(word) +
                               " at consumer " + num(c) + " slot " + num(i));
        continue;
      }
      rep.items_found++;
      seen[word]++;
      if (seen[word] > 1) {
        rep.failures.push_back("duplicate item producer " + num(p) + " seq " +
                               num(s));
      }
      auto it = last_seq.find(p);
      if (it != last_seq.end() && s <= it->second) {
        rep.failures.push_back("reordered item producer " + num(p) + " seq " +
                               num(s) + " after " + num(it->second) +
                               " at consumer " + num(c));
      }
      last_seq[p] = s;
    }
  }

  for (const auto& [tag, n] : expected) {
    if (!seen.count(tag)) {
      rep.failures.push_back("lost item producer " + num(tag >> 16) +
                             " seq " + num(tag & 0xFFFF));
    }
  }

  rep.pass = rep.failures.empty();
  return rep;
}

VerifyReport verify_phil(const std::vector<uint32_t>& memory,
                         const PhilLayout& L) {
  VerifyReport rep;
  for (uint32_t i = 0; i < L.n; i++) {
    uint32_t got = memory[L.progress_addr(i)];
    rep.items_found += got;
    if (got != L.rounds) {
      rep.failures.push_back("philosopher " + num(i) + " completed " +
                             num(got) + " of " + num(L.rounds) + " rounds");
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace xsim
