// xsim: assemble stack-machine programs, run single simulations, run
// parameter sweeps, render sweep tables.
//
// Exit codes: 0 success, 1 usage/config error, 2 cycle budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xsim/engine.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// Whole-file atomic: write a temp file, then rename over the target.
bool write_file_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) return false;
  }
  return std::rename(tmp.c_str(), path.c_str()) == 0;
}

int cmd_asm(const std::string& input, const std::string& output) {
  std::string source;
  if (!read_file(input, source)) {
    std::cerr << "cannot read " << input << "\n";
    return 1;
  }
  xsim::AsmResult res = xsim::assemble(source);
  if (!res.ok) {
    for (const auto& e : res.errors) {
      std::cerr << "line " << e.line << ": " << e.message << "\n";
    }
    return 1;
  }
  std::vector<uint8_t> bytes = xsim::encode(res.program);
  if (!write_file_atomic(output,
                         std::string(bytes.begin(), bytes.end()))) {
    std::cerr << "cannot write " << output << "\n";
    return 1;
  }
  return 0;
}

bool load_config_with_overrides(const std::string& config_path,
                                const std::vector<std::string>& programs,
                                xsim::SimConfig& cfg, std::string& err) {
  std::string text;
  if (!read_file(config_path, text)) {
    err = "cannot read config " + config_path;
    return false;
  }
  // Programs and the seed override are injected before range validation, so
  // `workload.kind` may be omitted when program files are supplied.
  xsim::ConfigResult parsed = xsim::parse_config_text(text, false);
  if (!parsed.ok) {
    err = parsed.error;
    return false;
  }
  cfg = parsed.config;
  if (!programs.empty()) {
    if (cfg.workload != xsim::WorkloadKind::None &&
        cfg.workload != xsim::WorkloadKind::Programs) {
      err = "config selects a generated workload and program files were also "
            "given; choose one";
      return false;
    }
    cfg.workload = xsim::WorkloadKind::Programs;
    cfg.program_sources.clear();
    for (const auto& p : programs) {
      std::string src;
      if (!read_file(p, src)) {
        err = "cannot read program " + p;
        return false;
      }
      cfg.program_sources.push_back(std::move(src));
    }
  }
  if (const char* seed_env = std::getenv("XSIM_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(seed_env, &end, 10);
    if (end == seed_env || *end != '\0') {
      err = "XSIM_SEED must be an integer";
      return false;
    }
    cfg.seed = v;
  }
  if (std::string verr = xsim::validate_config(cfg); !verr.empty()) {
    err = verr;
    return false;
  }
  return true;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& programs, bool emit_trace,
            bool emit_dump) {
  xsim::SimConfig cfg;
  std::string err;
  if (!load_config_with_overrides(config_path, programs, cfg, err)) {
    std::cerr << err << "\n";
    return 1;
  }

  xsim::SimResult res = xsim::simulate(cfg, emit_trace);
  if (!res.ok) {
    std::cerr << res.error << "\n";
    return 1;
  }

  bool wrote = write_file_atomic(out_dir + "/metrics.json",
                                 xsim::metrics_to_json(res.metrics)) &&
               write_file_atomic(out_dir + "/metrics.csv",
                                 xsim::metrics_csv_header() + "\n" +
                                     xsim::metrics_csv_row(res.metrics) + "\n");
  if (wrote && emit_dump) {
    wrote = write_file_atomic(out_dir + "/dump.txt",
                              xsim::dump_memory(res.memory));
  }
  if (wrote && emit_trace) {
    wrote = write_file_atomic(out_dir + "/trace.txt", res.trace);
  }
  if (!wrote) {
    std::cerr << "cannot write outputs under " << out_dir << "\n";
    return 1;
  }
  return res.metrics.budget_exceeded ? 2 : 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& vary, const std::string& values_csv,
              bool serial) {
  xsim::SimConfig cfg;
  std::string err;
  if (!load_config_with_overrides(config_path, {}, cfg, err)) {
    std::cerr << err << "\n";
    return 1;
  }
  std::vector<std::string> values;
  std::stringstream ss(values_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) values.push_back(tok);
  }
  if (values.empty()) {
    std::cerr << "--values expects a comma-separated list\n";
    return 1;
  }

  xsim::SweepResult sw = xsim::run_sweep(cfg, vary, values, !serial);
  if (!sw.ok) {
    std::cerr << sw.error << "\n";
    return 1;
  }
  if (!write_file_atomic(out_dir + "/sweep.csv", xsim::sweep_csv(sw))) {
    std::cerr << "cannot write " << out_dir << "/sweep.csv\n";
    return 1;
  }
  return 0;
}

int cmd_report(const std::string& csv_path) {
  std::string text;
  if (!read_file(csv_path, text)) {
    std::cerr << "cannot read " << csv_path << "\n";
    return 1;
  }
  std::cout << xsim::render_table(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cacheless stack-machine CMP simulator"};
  app.require_subcommand(1);

  std::string asm_in, asm_out;
  auto* sub_asm = app.add_subcommand("asm", "assemble a program");
  sub_asm->add_option("input", asm_in, "assembly source")->required();
  sub_asm->add_option("output", asm_out, "binary output")->required();

  std::string config_path, out_dir = ".";
  std::vector<std::string> programs;
  bool emit_trace = false, emit_dump = false;
  auto* sub_run = app.add_subcommand("run", "run one simulation");
  sub_run->add_option("--config", config_path, "config file")->required();
  sub_run->add_option("--out", out_dir, "output directory");
  sub_run->add_option("--program", programs,
                      "program file (assembly or binary), one per core");
  sub_run->add_flag("--trace", emit_trace, "write per-cycle arbitration trace");
  sub_run->add_flag("--dump", emit_dump, "write final memory dump");

  std::string sweep_config, sweep_out = ".", vary, values;
  bool serial = false;
  auto* sub_sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sub_sweep->add_option("--config", sweep_config, "base config file")
      ->required();
  sub_sweep->add_option("--out", sweep_out, "output directory");
  sub_sweep->add_option("--vary", vary, "parameter to sweep")->required();
  sub_sweep->add_option("--values", values, "comma-separated values")
      ->required();
  sub_sweep->add_flag("--serial", serial, "disable parallel sweep cells");

  std::string report_csv;
  auto* sub_report = app.add_subcommand("report", "render a sweep.csv table");
  sub_report->add_option("csv", report_csv, "sweep.csv path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  if (sub_asm->parsed()) return cmd_asm(asm_in, asm_out);
  if (sub_run->parsed())
    return cmd_run(config_path, out_dir, programs, emit_trace, emit_dump);
  if (sub_sweep->parsed())
    return cmd_sweep(sweep_config, sweep_out, vary, values, serial);
  if (sub_report->parsed()) return cmd_report(report_csv);
  return 1;
}
