#include "xsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <map>
#include <optional>

#include "json.hpp"
#include "xsim/interconnect.hpp"
#include "xsim/workloads.hpp"

namespace xsim {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Materialized {
  bool ok = false;
  std::string error;
  std::vector<Program> programs;  // one per core, padded with empty programs
  std::vector<Watchpoint> watchpoints;
  std::optional<PcLayout> pc;
  std::optional<PhilLayout> phil;
};

bool looks_binary(const std::string& src) {
  return src.size() >= 4 && src.compare(0, 4, "XSM1") == 0;
}

Materialized materialize(const SimConfig& cfg) {
  Materialized m;
  std::vector<std::string> sources;
  uint64_t words = cfg.memory_words();
  uint64_t workload_extent = 0;

  switch (cfg.workload) {
    case WorkloadKind::Pc: {
      PcLayout layout;
      layout.n_producers = cfg.pc_producers;
      layout.n_consumers = cfg.pc_consumers;
      layout.n_queues = cfg.pc_queues;
      layout.capacity = cfg.pc_capacity;
      layout.items_per_producer = cfg.pc_items;
      layout.race_locks = cfg.pc_race_locks;
      GenResult gen = gen_producer_consumer(layout, words);
      if (!gen.ok) {
        m.error = gen.error;
        return m;
      }
      sources = std::move(gen.asm_sources);
      m.watchpoints = std::move(gen.watchpoints);
      m.pc = layout;
      workload_extent = layout.extent();
      break;
    }
    case WorkloadKind::Phil: {
      PhilLayout layout;
      layout.n = cfg.phil_n;
      layout.rounds = cfg.phil_rounds;
      layout.naive = cfg.phil_naive;
      GenResult gen = gen_dining_philosophers(layout, words);
      if (!gen.ok) {
        m.error = gen.error;
        return m;
      }
      sources = std::move(gen.asm_sources);
      m.watchpoints = std::move(gen.watchpoints);
      m.phil = layout;
      workload_extent = layout.extent();
      break;
    }
    case WorkloadKind::Random:
      sources = gen_random_stream(cfg.n_cores, cfg.random_accesses,
                                  cfg.random_range_words,
                                  cfg.random_write_pct, cfg.seed);
      workload_extent = cfg.random_range_words;
      break;
    case WorkloadKind::Hotbank:
      sources = gen_hotbank(cfg.n_cores, cfg.chain_loads);
      workload_extent = 1;
      break;
    case WorkloadKind::Disjoint:
      sources = gen_disjoint(cfg.n_cores, cfg.chain_loads);
      workload_extent = cfg.n_cores;
      break;
    case WorkloadKind::Programs:
      sources = cfg.program_sources;
      break;
    case WorkloadKind::None:
      m.error = "no workload configured";
      return m;
  }

  // Workload data occupies [0, workload_extent); the DMA ring must not
  // overlap it.
  if (cfg.nic_enabled() && cfg.workload != WorkloadKind::Programs &&
      cfg.nic_region_base < workload_extent) {
    m.error = "nic region overlaps workload memory";
    return m;
  }

  for (size_t i = 0; i < sources.size(); i++) {
    Program prog;
    if (looks_binary(sources[i])) {
      std::vector<uint8_t> bytes(sources[i].begin(), sources[i].end());
      DecodeResult dec = decode(bytes);
      if (!dec.ok) {
        m.error = "program " + std::to_string(i) + ": " + dec.error;
        return m;
      }
      prog = std::move(dec.program);
    } else {
      AsmResult as = assemble(sources[i]);
      if (!as.ok) {
        m.error = "program " + std::to_string(i) + ": line " +
                  std::to_string(as.errors[0].line) + ": " +
                  as.errors[0].message;
        return m;
      }
      prog = std::move(as.program);
    }
    auto diags = validate(prog, words);
    if (!diags.empty()) {
      m.error = "program " + std::to_string(i) + ": " + diags[0].message;
      return m;
    }
    m.programs.push_back(std::move(prog));
  }

  if (m.programs.size() > cfg.n_cores) {
    m.error = "workload produced more programs than cores";
    return m;
  }
  m.programs.resize(cfg.n_cores);  // idle cores get empty programs
  m.ok = true;
  return m;
}

double jain_index(const std::vector<uint64_t>& xs) {
  if (xs.empty()) return 1.0;
  double sum = 0, sq = 0;
  for (uint64_t x : xs) {
    sum += static_cast<double>(x);
    sq += static_cast<double>(x) * static_cast<double>(x);
  }
  if (sq == 0) return 1.0;
  return (sum * sum) / (static_cast<double>(xs.size()) * sq);
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

SimResult simulate(const SimConfig& cfg, bool with_trace) {
  SimResult res;
  if (std::string err = validate_config(cfg); !err.empty()) {
    res.error = err;
    return res;
  }
  Materialized mat = materialize(cfg);
  if (!mat.ok) {
    res.error = mat.error;
    return res;
  }

  const uint32_t n_cores = cfg.n_cores;
  const uint32_t nic_id = n_cores;
  const uint32_t n_req = n_cores + 1;
  const bool baseline = cfg.arch == Arch::BaselineCached;
  const uint64_t words = cfg.memory_words();

  BankedMemory mem(words, baseline ? 1 : cfg.n_banks, cfg.mem_latency);

  // Merge data images; identical duplicate initializers are fine.
  {
    std::map<uint32_t, uint32_t> init;
    for (const auto& prog : mat.programs) {
      for (const auto& d : prog.data_image) {
        auto [it, fresh] = init.emplace(d.addr, d.value);
        if (!fresh && it->second != d.value) {
          res.error = "conflicting data image at address " +
                      std::to_string(d.addr);
          return res;
        }
      }
    }
    for (const auto& [addr, value] : init) mem.words[addr] = value;
  }

  std::vector<CoreState> cores(n_cores);
  for (uint32_t i = 0; i < n_cores; i++) {
    cores[i].core_id = i;
    cores[i].pc = mat.programs[i].entry;
    cores[i].max_stack = cfg.stack_depth;
    if (mat.programs[i].code.empty()) cores[i].status = CoreStatus::Halted;
  }

  std::vector<uint32_t> ranks(n_req, 0);
  for (uint32_t i = 0; i < n_cores; i++) {
    ranks[i] = cfg.arb_ranks.empty() ? i + 1 : cfg.arb_ranks[i];
  }
  ranks[nic_id] = cfg.nic_rank;
  ArbiterState arb = cfg.arb_kind == ArbiterKind::RoundRobin
                         ? ArbiterState::round_robin(n_req, mem.n_banks)
                         : ArbiterState::priority(ranks, mem.n_banks);
  ArbiterState dram_arb = cfg.arb_kind == ArbiterKind::RoundRobin
                              ? ArbiterState::round_robin(n_req, 1)
                              : ArbiterState::priority(ranks, 1);

  std::vector<CacheModel> caches;
  if (baseline) {
    caches.assign(n_cores,
                  CacheModel(cfg.cache_line_words, cfg.cache_sets,
                             cfg.cache_hit_latency, cfg.cache_dram_latency));
  }
  uint64_t dram_busy_until = 0;

  NicState nic;
  nic.rate = cfg.nic_rate();
  nic.region_base = cfg.nic_region_base;
  nic.region_len = cfg.nic_region_len;
  nic.requester_id = nic_id;
  uint64_t nic_rejects = 0;
  const bool nic_active = cfg.nic_enabled();

  std::vector<std::optional<MemoryRequest>> pending(n_req);
  std::vector<uint8_t> dram_wait(n_req, 0);  // baseline service state
  std::map<uint64_t, std::vector<MemoryResponse>> due;

  Metrics& m = res.metrics;
  m.arch = baseline ? "baseline" : "proposed";
  m.n_cores = n_cores;
  m.n_banks = cfg.n_banks;
  m.mem_latency = cfg.mem_latency;
  m.arbiter = cfg.arb_kind == ArbiterKind::RoundRobin ? "rr" : "priority";
  m.workload = workload_name(cfg.workload);
  m.cycle_budget = cfg.cycle_budget;
  m.cores.resize(n_cores);
  m.banks.resize(cfg.n_banks);
  m.nic_configured_rate = nic.rate.to_double();

  std::vector<uint64_t> issued_per_req(n_req, 0);
  std::vector<uint64_t> grants_per_req(n_req, 0);
  std::vector<std::optional<MemoryResponse>> deliver(n_cores);

  uint64_t cycle = 0;
  for (; cycle < cfg.cycle_budget; cycle++) {
    bool all_absorbed = true;
    for (const auto& c : cores) {
      if (!c.absorbing()) {
        all_absorbed = false;
        break;
      }
    }
    if (all_absorbed && !nic_active) break;

    // 1. Deliver responses completing this cycle.
    if (auto it = due.find(cycle); it != due.end()) {
      for (const auto& resp : it->second) {
        m.responses_delivered++;
        if (resp.requester < n_cores) deliver[resp.requester] = resp;
      }
      due.erase(it);
    }

    // 2. Tick cores in index order.
    for (uint32_t i = 0; i < n_cores; i++) {
      if (cores[i].absorbing()) {
        m.cores[i].idle_cycles++;
        deliver[i].reset();
        continue;
      }
      CoreTickOutcome out =
          core_tick(cores[i], mat.programs[i], deliver[i], cycle);
      deliver[i].reset();
      if (out.event == TickEvent::Faulted) {
        m.cores[i].faults++;
        m.cores[i].idle_cycles++;  // the faulting cycle retires nothing
      }
      if (out.new_request) {
        pending[i] = *out.new_request;
        issued_per_req[i]++;
        m.requests_issued++;
      }
    }

    // 3. NIC tick.
    if (nic_active) {
      bool blocked = pending[nic_id].has_value();
      if (auto req = nic_tick(nic, blocked, cycle)) {
        pending[nic_id] = *req;
        issued_per_req[nic_id]++;
        m.requests_issued++;
      }
    }

    if (!baseline) {
      // 4. Arbitrate, 5. route through the crossbar.
      GrantSet grants = arbitrate(pending, arb, mem.n_banks);
      assert(grants.grants.size() <= mem.n_banks);

      for (uint32_t b = 0; b < mem.n_banks; b++) {
        uint32_t contenders = 0;
        for (const auto& p : pending) {
          if (p && bank_of(p->address, mem.n_banks) == b) contenders++;
        }
        if (contenders > 1) m.banks[b].conflict_cycles++;
      }
      if (with_trace) res.trace += format_trace(cycle, pending, grants, mem.n_banks);

      std::vector<MemoryResponse> resps = route(grants, pending, mem, cycle);
      for (size_t gi = 0; gi < grants.grants.size(); gi++) {
        const Grant& g = grants.grants[gi];
        m.banks[g.bank].grants++;
        m.grants_total++;
        grants_per_req[g.requester]++;
        if (g.requester < n_cores) {
          m.cores[g.requester].grants++;
          m.mem_accesses++;
          m.mem_latency_total +=
              (cycle - pending[g.requester]->issue_cycle) + cfg.mem_latency;
        } else {
          m.nic_granted++;
          nic_rejects = 0;
        }
        due[resps[gi].complete_cycle].push_back(resps[gi]);
        pending[g.requester].reset();
      }

      if (pending[nic_id]) {
        nic_rejects++;
        if (cfg.nic_retry_window > 0 && nic_rejects >= cfg.nic_retry_window) {
          pending[nic_id].reset();
          nic.dropped++;
          nic_rejects = 0;
        }
      }
    } else {
      // Baseline: private caches, single unpipelined DRAM channel.
      for (uint32_t r = 0; r < n_req; r++) {
        if (!pending[r] || dram_wait[r]) continue;
        const MemoryRequest& req = *pending[r];
        if (r < n_cores &&
            (req.kind == MemKind::Load || req.kind == MemKind::Store)) {
          if (req.address >= words) {
            MemoryResponse resp;
            resp.requester = r;
            resp.grant_cycle = cycle;
            resp.complete_cycle = cycle + 1;
            resp.fault = true;
            due[resp.complete_cycle].push_back(resp);
            pending[r].reset();
            continue;
          }
          CacheAccessResult car = cache_access(caches[r], req.address);
          if (car.hit) {
            m.cache_hits++;
            MemoryResponse resp;
            resp.requester = r;
            resp.grant_cycle = cycle;
            resp.complete_cycle = cycle + car.latency;
            if (req.kind == MemKind::Load) {
              resp.data = mem.words[req.address];
            } else {
              mem.words[req.address] = req.data.value();  // write-through
            }
            due[resp.complete_cycle].push_back(resp);
            grants_per_req[r]++;
            m.cores[r].grants++;
            m.grants_total++;
            m.mem_accesses++;
            m.mem_latency_total += (cycle - req.issue_cycle) + car.latency;
            pending[r].reset();
          } else {
            m.cache_misses++;
            dram_wait[r] = 1;  // line filled; data comes over the channel
          }
        } else {
          dram_wait[r] = 1;  // Tas and DMA bypass the cache
        }
      }

      if (dram_busy_until <= cycle) {
        std::vector<std::optional<MemoryRequest>> waiting(n_req);
        for (uint32_t r = 0; r < n_req; r++) {
          if (pending[r] && dram_wait[r]) waiting[r] = pending[r];
        }
        GrantSet grants = arbitrate(waiting, dram_arb, 1);
        if (!grants.grants.empty()) {
          uint32_t w = grants.grants[0].requester;
          const MemoryRequest& req = *pending[w];
          dram_busy_until = cycle + cfg.cache_dram_latency;
          MemoryResponse resp = bank_access(mem, req, cycle);
          resp.complete_cycle = cycle + cfg.cache_dram_latency;
          due[resp.complete_cycle].push_back(resp);
          grants_per_req[w]++;
          m.grants_total++;
          if (w < n_cores) {
            m.cores[w].grants++;
            m.mem_accesses++;
            m.mem_latency_total +=
                (cycle - req.issue_cycle) + cfg.cache_dram_latency;
          } else {
            m.nic_granted++;
            nic_rejects = 0;
          }
          pending[w].reset();
          dram_wait[w] = 0;
        }
      }

      if (pending[nic_id] && dram_wait[nic_id]) {
        nic_rejects++;
        if (cfg.nic_retry_window > 0 && nic_rejects >= cfg.nic_retry_window) {
          pending[nic_id].reset();
          dram_wait[nic_id] = 0;
          nic.dropped++;
          nic_rejects = 0;
        }
      }
    }

    for (const auto& w : mat.watchpoints) {
      uint32_t v = mem.words[w.addr];
      if (v < w.lo || v > w.hi) m.watchpoint_violations++;
    }
  }

  m.cycles = cycle;
  bool any_live = false;
  for (const auto& c : cores) {
    if (!c.absorbing()) any_live = true;
  }
  m.budget_exceeded = (cycle == cfg.cycle_budget) && any_live;

  for (uint32_t i = 0; i < n_cores; i++) {
    m.cores[i].retired = cores[i].retired;
    m.cores[i].stall_cycles = cores[i].stall_cycles;
    m.cores[i].halted = cores[i].status == CoreStatus::Halted;
    m.cores[i].faulted = cores[i].status == CoreStatus::Faulted;
  }
  for (uint32_t b = 0; b < m.banks.size(); b++) {
    m.banks[b].utilization =
        m.cycles == 0 ? 0.0
                      : static_cast<double>(m.banks[b].grants) /
                            static_cast<double>(m.cycles);
  }

  m.requests_pending_end = 0;
  for (const auto& p : pending) {
    if (p) m.requests_pending_end++;
  }
  for (const auto& [when, resps] : due) {
    m.requests_pending_end += resps.size();
  }

  m.mean_access_latency =
      m.mem_accesses == 0 ? 0.0
                          : static_cast<double>(m.mem_latency_total) /
                                static_cast<double>(m.mem_accesses);
  uint64_t cache_total = m.cache_hits + m.cache_misses;
  m.miss_rate = cache_total == 0 ? 0.0
                                 : static_cast<double>(m.cache_misses) /
                                       static_cast<double>(cache_total);

  m.nic_injected = nic.injected;
  m.nic_dropped = nic.dropped;
  m.nic_in_flight = pending[nic_id] ? 1 : 0;
  m.nic_achieved_rate = m.cycles == 0
                            ? 0.0
                            : static_cast<double>(nic.injected) /
                                  static_cast<double>(m.cycles);

  // Fairness over requesters that issued at least one request.
  {
    std::vector<uint64_t> xs;
    for (uint32_t r = 0; r < n_req; r++) {
      if (issued_per_req[r] > 0) xs.push_back(grants_per_req[r]);
    }
    m.fairness_jain = jain_index(xs);
  }

  // Workload progress and verification.
  if (mat.pc) {
    auto quotas = mat.pc->consumer_quotas();
    auto outs = mat.pc->consumer_out_bases();
    for (uint32_t c = 0; c < mat.pc->n_consumers; c++) {
      for (uint32_t i = 0; i < quotas[c]; i++) {
        if (mem.words[outs[c] + i] != 0) m.work_items++;
      }
    }
    m.verified = verify_pc(mem.words, *mat.pc).pass ? "pass" : "fail";
  } else if (mat.phil) {
    for (uint32_t i = 0; i < mat.phil->n; i++) {
      m.work_items += mem.words[mat.phil->progress_addr(i)];
    }
    m.verified = verify_phil(mem.words, *mat.phil).pass ? "pass" : "fail";
  } else {
    for (const auto& c : m.cores) m.work_items += c.retired;
    m.verified = "n/a";
  }
  m.throughput_per_kcycle =
      m.cycles == 0 ? 0.0
                    : static_cast<double>(m.work_items) * 1000.0 /
                          static_cast<double>(m.cycles);

  res.memory = std::move(mem.words);
  res.final_cores = std::move(cores);
  res.ok = true;
  return res;
}

std::string metrics_to_json(const Metrics& m) {
  ordered_json j;
  j["schema"] = "xsim-metrics-v1";
  j["arch"] = m.arch;
  j["n_cores"] = m.n_cores;
  j["n_banks"] = m.n_banks;
  j["mem_latency"] = m.mem_latency;
  j["arbiter"] = m.arbiter;
  j["workload"] = m.workload;
  j["cycles"] = m.cycles;
  j["cycle_budget"] = m.cycle_budget;
  j["budget_exceeded"] = m.budget_exceeded;
  j["requests_issued"] = m.requests_issued;
  j["responses_delivered"] = m.responses_delivered;
  j["requests_pending_end"] = m.requests_pending_end;
  j["grants_total"] = m.grants_total;
  j["mem"] = ordered_json{{"accesses", m.mem_accesses},
                          {"latency_total", m.mem_latency_total},
                          {"mean_access_latency", m.mean_access_latency}};
  j["cache"] = ordered_json{{"hits", m.cache_hits},
                            {"misses", m.cache_misses},
                            {"miss_rate", m.miss_rate}};
  j["nic"] = ordered_json{{"injected", m.nic_injected},
                          {"dropped", m.nic_dropped},
                          {"granted", m.nic_granted},
                          {"in_flight", m.nic_in_flight},
                          {"configured_rate", m.nic_configured_rate},
                          {"achieved_rate", m.nic_achieved_rate}};
  j["workload_stats"] =
      ordered_json{{"work_items", m.work_items},
                   {"throughput_per_kcycle", m.throughput_per_kcycle},
                   {"verified", m.verified}};
  j["fairness_jain"] = m.fairness_jain;
  j["watchpoint_violations"] = m.watchpoint_violations;
  j["cores"] = ordered_json::array();
  for (uint32_t i = 0; i < m.cores.size(); i++) {
    const auto& c = m.cores[i];
    j["cores"].push_back(ordered_json{{"id", i},
                                      {"retired", c.retired},
                                      {"stall_cycles", c.stall_cycles},
                                      {"idle_cycles", c.idle_cycles},
                                      {"grants", c.grants},
                                      {"faults", c.faults},
                                      {"halted", c.halted},
                                      {"faulted", c.faulted}});
  }
  j["banks"] = ordered_json::array();
  for (uint32_t b = 0; b < m.banks.size(); b++) {
    const auto& k = m.banks[b];
    j["banks"].push_back(ordered_json{{"id", b},
                                      {"grants", k.grants},
                                      {"conflict_cycles", k.conflict_cycles},
                                      {"utilization", k.utilization}});
  }
  return j.dump(2) + "\n";
}

std::string metrics_csv_header() {
  return "arch,n_cores,n_banks,mem_latency,arbiter,workload,cycles,"
         "cycle_budget,budget_exceeded,requests_issued,responses_delivered,"
         "requests_pending_end,grants_total,mem_accesses,mean_access_latency,"
         "cache_hits,cache_misses,miss_rate,nic_injected,nic_dropped,"
         "nic_achieved_rate,watchpoint_violations,work_items,"
         "throughput_per_kcycle,fairness_jain,verified";
}

std::string metrics_csv_row(const Metrics& m) {
  std::string r;
  r += m.arch;
  r += ',' + std::to_string(m.n_cores);
  r += ',' + std::to_string(m.n_banks);
  r += ',' + std::to_string(m.mem_latency);
  r += ',' + m.arbiter;
  r += ',' + m.workload;
  r += ',' + std::to_string(m.cycles);
  r += ',' + std::to_string(m.cycle_budget);
  r += ',' + std::string(m.budget_exceeded ? "1" : "0");
  r += ',' + std::to_string(m.requests_issued);
  r += ',' + std::to_string(m.responses_delivered);
  r += ',' + std::to_string(m.requests_pending_end);
  r += ',' + std::to_string(m.grants_total);
  r += ',' + std::to_string(m.mem_accesses);
  r += ',' + fmt_double(m.mean_access_latency);
  r += ',' + std::to_string(m.cache_hits);
  r += ',' + std::to_string(m.cache_misses);
  r += ',' + fmt_double(m.miss_rate);
  r += ',' + std::to_string(m.nic_injected);
  r += ',' + std::to_string(m.nic_dropped);
  r += ',' + fmt_double(m.nic_achieved_rate);
  r += ',' + std::to_string(m.watchpoint_violations);
  r += ',' + std::to_string(m.work_items);
  r += ',' + fmt_double(m.throughput_per_kcycle);
  r += ',' + fmt_double(m.fairness_jain);
  r += ',' + m.verified;
  return r;
}

SweepResult run_sweep(const SimConfig& base, const std::string& param,
                      const std::vector<std::string>& values, bool parallel) {
  SweepResult out;
  out.param = param;

  {
    auto names = sweepable_params();
    if (std::find(names.begin(), names.end(), param) == names.end()) {
      std::string list;
      for (const auto& n : names) {
        if (!list.empty()) list += ", ";
        list += n;
      }
      out.error = "unknown sweep parameter '" + param + "'; sweepable: " + list;
      return out;
    }
  }

  out.cells.resize(values.size());
  const int64_t n = static_cast<int64_t>(values.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int64_t i = 0; i < n; i++) {
    SweepCell& cell = out.cells[static_cast<size_t>(i)];
    cell.value = values[static_cast<size_t>(i)];
    SimConfig cfg = base;
    std::string err = apply_sweep_value(cfg, param, cell.value);
    if (!err.empty()) {
      cell.error = err;
      continue;
    }
    SimResult r = simulate(cfg, false);
    if (!r.ok) {
      cell.error = r.error;
      continue;
    }
    cell.ok = true;
    cell.metrics = std::move(r.metrics);
  }
  out.ok = true;
  return out;
}

std::string sweep_csv(const SweepResult& s) {
  std::string out = "param,value,ok," + metrics_csv_header() + ",error\n";
  for (const auto& cell : s.cells) {
    out += s.param + ',' + cell.value + ',' + (cell.ok ? "1" : "0") + ',';
    if (cell.ok) {
      out += metrics_csv_row(cell.metrics);
    } else {
      out += metrics_csv_row(Metrics{});
    }
    std::string err = cell.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out += ',' + err + '\n';
  }
  return out;
}

std::string render_table(const std::string& csv_text) {
  std::vector<std::vector<std::string>> rows;
  size_t pos = 0;
  while (pos < csv_text.size()) {
    size_t eol = csv_text.find('\n', pos);
    if (eol == std::string::npos) eol = csv_text.size();
    std::string_view line(csv_text.data() + pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t c = 0;
    while (true) {
      size_t comma = line.find(',', c);
      if (comma == std::string_view::npos) {
        cells.emplace_back(line.substr(c));
        break;
      }
      cells.emplace_back(line.substr(c, comma - c));
      c = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) return "";

  size_t n_cols = 0;
  for (const auto& r : rows) n_cols = std::max(n_cols, r.size());
  std::vector<size_t> width(n_cols, 0);
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); i++)
      width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); i++) {
      out += r[i];
      if (i + 1 < r.size())
        out += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += '\n';
  }
  return out;
}

}  // namespace xsim
