#include "xsim/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace xsim {

const char* workload_name(WorkloadKind k) {
  switch (k) {
    case WorkloadKind::None: return "none";
    case WorkloadKind::Programs: return "programs";
    case WorkloadKind::Pc: return "pc";
    case WorkloadKind::Phil: return "phil";
    case WorkloadKind::Random: return "random";
    case WorkloadKind::Hotbank: return "hotbank";
    case WorkloadKind::Disjoint: return "disjoint";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool parse_u64(std::string_view s, uint64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_u32(std::string_view s, uint32_t& out) {
  uint64_t v;
  if (!parse_u64(s, v) || v > UINT32_MAX) return false;
  out = static_cast<uint32_t>(v);
  return true;
}

bool parse_bool(std::string_view s, bool& out) {
  if (s == "0" || s == "false") { out = false; return true; }
  if (s == "1" || s == "true") { out = true; return true; }
  return false;
}

bool is_pow2(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

struct KeyHandlerCtx {
  SimConfig& c;
  std::string err;  // first error wins

  void fail(const std::string& line, const std::string& why) {
    if (err.empty()) err = "bad value for " + line + ": " + why;
  }
};

}  // namespace

ConfigResult parse_config_text(std::string_view text, bool validate) {
  ConfigResult res;
  SimConfig& c = res.config;

  uint32_t lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    lineno++;

    if (size_t h = line.find('#'); h != std::string_view::npos)
      line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      res.error = "line " + std::to_string(lineno) + ": expected key=value";
      return res;
    }
    std::string key(trim(line.substr(0, eq)));
    std::string val(trim(line.substr(eq + 1)));
    auto bad = [&](const char* why) {
      res.error = "line " + std::to_string(lineno) + ": " + key + ": " + why;
    };

    if (key == "arch") {
      if (val == "proposed") c.arch = Arch::ProposedCacheless;
      else if (val == "baseline") c.arch = Arch::BaselineCached;
      else { bad("expected proposed|baseline"); return res; }
    } else if (key == "core.n") {
      if (!parse_u32(val, c.n_cores)) { bad("expected integer"); return res; }
    } else if (key == "core.stack_depth") {
      if (!parse_u32(val, c.stack_depth)) { bad("expected integer"); return res; }
    } else if (key == "mem.banks") {
      if (!parse_u32(val, c.n_banks)) { bad("expected integer"); return res; }
    } else if (key == "mem.capacity_bytes") {
      if (!parse_u64(val, c.sram_capacity_bytes)) { bad("expected integer"); return res; }
    } else if (key == "mem.latency") {
      if (!parse_u32(val, c.mem_latency)) { bad("expected integer"); return res; }
    } else if (key == "cache.line_words") {
      if (!parse_u32(val, c.cache_line_words)) { bad("expected integer"); return res; }
      c.cache_keys_set = true;
    } else if (key == "cache.sets") {
      if (!parse_u32(val, c.cache_sets)) { bad("expected integer"); return res; }
      c.cache_keys_set = true;
    } else if (key == "cache.hit_latency") {
      if (!parse_u32(val, c.cache_hit_latency)) { bad("expected integer"); return res; }
      c.cache_keys_set = true;
    } else if (key == "cache.dram_latency") {
      if (!parse_u32(val, c.cache_dram_latency)) { bad("expected integer"); return res; }
      c.cache_keys_set = true;
    } else if (key == "nic.gbps") {
      auto r = Rational::from_decimal(val);
      if (!r) { bad("expected decimal"); return res; }
      c.nic_gbps = *r;
    } else if (key == "nic.clock_ghz") {
      auto r = Rational::from_decimal(val);
      if (!r || r->is_zero()) { bad("expected positive decimal"); return res; }
      c.nic_clock_ghz = *r;
    } else if (key == "nic.region_base") {
      if (!parse_u32(val, c.nic_region_base)) { bad("expected integer"); return res; }
    } else if (key == "nic.region_len") {
      if (!parse_u32(val, c.nic_region_len)) { bad("expected integer"); return res; }
    } else if (key == "nic.retry_window") {
      if (!parse_u64(val, c.nic_retry_window)) { bad("expected integer"); return res; }
    } else if (key == "nic.rank") {
      if (!parse_u32(val, c.nic_rank)) { bad("expected integer"); return res; }
    } else if (key == "arb.kind") {
      if (val == "rr") c.arb_kind = ArbiterKind::RoundRobin;
      else if (val == "priority") c.arb_kind = ArbiterKind::Priority;
      else { bad("expected rr|priority"); return res; }
    } else if (key == "arb.ranks") {
      c.arb_ranks.clear();
      std::stringstream ss{std::string(val)};
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        uint32_t r;
        if (!parse_u32(trim(tok), r)) { bad("expected comma-separated integers"); return res; }
        c.arb_ranks.push_back(r);
      }
    } else if (key == "run.cycle_budget") {
      if (!parse_u64(val, c.cycle_budget)) { bad("expected integer"); return res; }
    } else if (key == "run.seed") {
      if (!parse_u64(val, c.seed)) { bad("expected integer"); return res; }
    } else if (key == "workload.kind") {
      if (val == "pc") c.workload = WorkloadKind::Pc;
      else if (val == "phil") c.workload = WorkloadKind::Phil;
      else if (val == "random") c.workload = WorkloadKind::Random;
      else if (val == "hotbank") c.workload = WorkloadKind::Hotbank;
      else if (val == "disjoint") c.workload = WorkloadKind::Disjoint;
      else if (val == "programs") c.workload = WorkloadKind::Programs;
      else { bad("expected pc|phil|random|hotbank|disjoint|programs"); return res; }
    } else if (key == "pc.producers") {
      if (!parse_u32(val, c.pc_producers)) { bad("expected integer"); return res; }
    } else if (key == "pc.consumers") {
      if (!parse_u32(val, c.pc_consumers)) { bad("expected integer"); return res; }
    } else if (key == "pc.queues") {
      if (!parse_u32(val, c.pc_queues)) { bad("expected integer"); return res; }
    } else if (key == "pc.capacity") {
      if (!parse_u32(val, c.pc_capacity)) { bad("expected integer"); return res; }
    } else if (key == "pc.items") {
      if (!parse_u32(val, c.pc_items)) { bad("expected integer"); return res; }
    } else if (key == "pc.race_locks") {
      if (!parse_bool(val, c.pc_race_locks)) { bad("expected 0|1"); return res; }
    } else if (key == "phil.n") {
      if (!parse_u32(val, c.phil_n)) { bad("expected integer"); return res; }
    } else if (key == "phil.rounds") {
      if (!parse_u32(val, c.phil_rounds)) { bad("expected integer"); return res; }
    } else if (key == "phil.naive") {
      if (!parse_bool(val, c.phil_naive)) { bad("expected 0|1"); return res; }
    } else if (key == "random.accesses") {
      if (!parse_u32(val, c.random_accesses)) { bad("expected integer"); return res; }
    } else if (key == "random.range_words") {
      if (!parse_u32(val, c.random_range_words)) { bad("expected integer"); return res; }
    } else if (key == "random.write_pct") {
      if (!parse_u32(val, c.random_write_pct)) { bad("expected integer"); return res; }
    } else if (key == "chain.loads") {
      if (!parse_u32(val, c.chain_loads)) { bad("expected integer"); return res; }
    } else {
      res.error = "line " + std::to_string(lineno) + ": unknown key '" + key + "'";
      return res;
    }
  }

  if (validate) res.error = validate_config(c);
  res.ok = res.error.empty();
  return res;
}

ConfigResult load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ConfigResult res;
    res.error = "cannot open config file: " + path;
    return res;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string validate_config(const SimConfig& c) {
  if (c.n_cores < 1 || c.n_cores > 128)
    return "core.n must be in [1,128]";
  if (!is_pow2(c.n_banks))
    return "mem.banks must be a power of two";
  if (c.sram_capacity_bytes % 4 != 0 || c.sram_capacity_bytes == 0)
    return "mem.capacity_bytes must be a positive multiple of 4";
  if (c.arch == Arch::ProposedCacheless) {
    if (c.cache_keys_set)
      return "cache parameters are not allowed for the proposed architecture";
    if (c.sram_capacity_bytes < (1ull << 20) ||
        c.sram_capacity_bytes > (8ull << 20))
      return "mem.capacity_bytes must be within 1-8 MiB for the proposed architecture";
  } else {
    if (c.cache_hit_latency < 1 || c.cache_hit_latency > 10)
      return "cache.hit_latency must be in [1,10]";
    if (c.cache_dram_latency < 100 || c.cache_dram_latency > 1000)
      return "cache.dram_latency must be in [100,1000]";
    if (!is_pow2(c.cache_line_words))
      return "cache.line_words must be a power of two";
    if (!is_pow2(c.cache_sets))
      return "cache.sets must be a power of two";
  }
  if (c.mem_latency < 1)
    return "mem.latency must be at least 1";
  if (c.stack_depth < 4)
    return "core.stack_depth must be at least 4";
  if (c.nic_gbps > Rational(10, 1))
    return "nic.gbps must be within [0,10]";
  if (c.nic_enabled()) {
    if (c.nic_rate() > Rational(1, 1))
      return "nic rate exceeds 1 word/cycle; lower nic.gbps or raise nic.clock_ghz";
    if (c.nic_region_len == 0)
      return "nic.region_len must be positive";
    if (uint64_t(c.nic_region_base) + c.nic_region_len > c.memory_words())
      return "nic region exceeds memory";
  }
  if (!c.arb_ranks.empty() && c.arb_ranks.size() != c.n_cores)
    return "arb.ranks must list one rank per core";
  if (c.cycle_budget == 0)
    return "run.cycle_budget must be positive";

  switch (c.workload) {
    case WorkloadKind::None:
      return "workload.kind is required (or pass programs)";
    case WorkloadKind::Pc:
      if (c.pc_producers + c.pc_consumers > c.n_cores)
        return "pc workload needs producers+consumers <= core.n";
      if (c.pc_queues == 0 || c.pc_capacity == 0)
        return "pc.queues and pc.capacity must be positive";
      break;
    case WorkloadKind::Phil:
      if (c.phil_n > c.n_cores)
        return "phil.n must not exceed core.n";
      if (c.phil_n < 2)
        return "phil.n must be at least 2";
      break;
    case WorkloadKind::Random:
      if (c.random_range_words == 0 ||
          c.random_range_words > c.memory_words())
        return "random.range_words must be within memory";
      if (c.random_write_pct > 100)
        return "random.write_pct must be within [0,100]";
      break;
    case WorkloadKind::Disjoint:
      if (c.n_cores > c.n_banks)
        return "disjoint workload requires core.n <= mem.banks";
      break;
    case WorkloadKind::Hotbank:
      break;
    case WorkloadKind::Programs:
      if (c.program_sources.empty())
        return "programs workload requires program files";
      if (c.program_sources.size() != c.n_cores)
        return "programs workload requires one program per core";
      break;
  }
  return "";
}

std::vector<std::string> sweepable_params() {
  return {"core.n", "mem.banks", "nic.gbps", "arb.kind", "arch"};
}

std::string apply_sweep_value(SimConfig& c, const std::string& param,
                              const std::string& value) {
  if (param == "core.n") {
    uint32_t v;
    if (!parse_u32(value, v)) return "core.n: expected integer";
    c.n_cores = v;
  } else if (param == "mem.banks") {
    uint32_t v;
    if (!parse_u32(value, v)) return "mem.banks: expected integer";
    c.n_banks = v;
  } else if (param == "nic.gbps") {
    auto r = Rational::from_decimal(value);
    if (!r) return "nic.gbps: expected decimal";
    c.nic_gbps = *r;
  } else if (param == "arb.kind") {
    if (value == "rr") c.arb_kind = ArbiterKind::RoundRobin;
    else if (value == "priority") c.arb_kind = ArbiterKind::Priority;
    else return "arb.kind: expected rr|priority";
  } else if (param == "arch") {
    if (value == "proposed") c.arch = Arch::ProposedCacheless;
    else if (value == "baseline") c.arch = Arch::BaselineCached;
    else return "arch: expected proposed|baseline";
  } else {
    std::string names;
    for (const auto& n : sweepable_params()) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    return "unknown sweep parameter '" + param + "'; sweepable: " + names;
  }
  return validate_config(c);
}

}  // namespace xsim
