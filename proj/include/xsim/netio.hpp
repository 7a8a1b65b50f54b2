#pragma once

// Network ingress: converts a line rate into a deterministic stream of DMA
// writes. Token-bucket accumulator over exact rationals, so injection
// schedules are bit-reproducible.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "xsim/memory.hpp"

namespace xsim {

struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;

  Rational() = default;
  Rational(uint64_t n, uint64_t d);

  static std::optional<Rational> from_decimal(std::string_view text);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  bool operator>=(const Rational& o) const;
  bool operator>(const Rational& o) const;

  bool is_zero() const { return num == 0; }
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::string str() const;
};

// (gbps / 8 / word_bytes) / clock_ghz, exact.
Rational rate_from_bandwidth(const Rational& bandwidth_gbps,
                             const Rational& clock_ghz, uint32_t word_bytes);

struct NicState {
  Rational rate;         // words per cycle, <= 1 by config validation
  Rational accumulator;  // < 1 after every uncontended tick
  uint32_t region_base = 0;
  uint32_t region_len = 0;
  uint32_t next_offset = 0;  // ring position within the region
  uint32_t seq = 0;          // payload counter; first injected word is 1
  uint64_t injected = 0;
  uint64_t dropped = 0;
  uint32_t requester_id = 0;
};

// One cycle of the token bucket. Emits at most one DMA write; while the
// previous request is still unaccepted (`blocked`) credit accrues but no
// new request is produced, preserving the single-outstanding contract.
std::optional<MemoryRequest> nic_tick(NicState& nic, bool blocked,
                                      uint64_t cycle);

}  // namespace xsim
