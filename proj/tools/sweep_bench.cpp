// Benchmark: serial sweep loop vs OpenMP-parallel sweep cells on the same
// workload, verifying both produce identical metrics tables.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xsim/engine.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  uint32_t accesses = argc > 1 ? static_cast<uint32_t>(std::atoi(argv[1]))
                               : 40000;

  xsim::SimConfig base;
  base.n_cores = 8;
  base.n_banks = 8;
  base.workload = xsim::WorkloadKind::Random;
  base.random_accesses = accesses;
  base.random_range_words = 4096;
  base.random_write_pct = 20;
  base.cycle_budget = 200'000'000;

  std::vector<std::string> values = {"1", "2", "4", "8", "16", "32", "64",
                                     "128"};

#ifdef _OPENMP
  std::printf("omp threads: %d\n", omp_get_max_threads());
#else
  std::printf("omp threads: (compiled without OpenMP)\n");
#endif
  std::printf("sweep mem.banks over %zu cells, %u accesses/core\n",
              values.size(), accesses);

  auto t0 = std::chrono::steady_clock::now();
  xsim::SweepResult serial = xsim::run_sweep(base, "mem.banks", values, false);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  xsim::SweepResult parallel = xsim::run_sweep(base, "mem.banks", values, true);
  double t_parallel = seconds_since(t0);

  if (!serial.ok || !parallel.ok) {
    std::printf("sweep failed: %s%s\n", serial.error.c_str(),
                parallel.error.c_str());
    return 1;
  }
  if (xsim::sweep_csv(serial) != xsim::sweep_csv(parallel)) {
    std::printf("MISMATCH: serial and parallel sweeps disagree\n");
    return 1;
  }

  std::printf("serial:   %.3f s\n", t_serial);
  std::printf("parallel: %.3f s\n", t_parallel);
  std::printf("speedup:  %.2fx (results identical)\n", t_serial / t_parallel);
  return 0;
}
