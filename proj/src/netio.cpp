#include "xsim/netio.hpp"

#include <cassert>
#include <numeric>

namespace xsim {

Rational::Rational(uint64_t n, uint64_t d) : num(n), den(d) {
  assert(den != 0);
  uint64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::optional<Rational> Rational::from_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  uint64_t num = 0, den = 1;
  bool seen_dot = false, seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    seen_digit = true;
    if (num > (UINT64_MAX - 9) / 10) return std::nullopt;
    num = num * 10 + static_cast<uint64_t>(c - '0');
    if (seen_dot) {
      if (den > UINT64_MAX / 10) return std::nullopt;
      den *= 10;
    }
  }
  if (!seen_digit) return std::nullopt;
  return Rational(num, den);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  assert(*this >= o);
  return Rational(num * o.den - o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce before multiplying to keep magnitudes small.
  uint64_t g1 = std::gcd(num, o.den);
  uint64_t g2 = std::gcd(o.num, den);
  return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}

Rational Rational::operator/(const Rational& o) const {
  assert(o.num != 0);
  return *this * Rational(o.den, o.num);
}

bool Rational::operator>=(const Rational& o) const {
  return static_cast<unsigned __int128>(num) * o.den >=
         static_cast<unsigned __int128>(o.num) * den;
}

bool Rational::operator>(const Rational& o) const {
  return static_cast<unsigned __int128>(num) * o.den >
         static_cast<unsigned __int128>(o.num) * den;
}

std::string Rational::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational rate_from_bandwidth(const Rational& bandwidth_gbps,
                             const Rational& clock_ghz, uint32_t word_bytes) {
  return bandwidth_gbps / Rational(8ull * word_bytes, 1) / clock_ghz;
}

std::optional<MemoryRequest> nic_tick(NicState& nic, bool blocked,
                                      uint64_t cycle) {
  if (nic.rate.is_zero()) return std::nullopt;
  nic.accumulator = nic.accumulator + nic.rate;
  if (blocked || !(nic.accumulator >= Rational(1, 1))) return std::nullopt;

  nic.accumulator = nic.accumulator - Rational(1, 1);
  nic.seq++;
  nic.injected++;
  MemoryRequest req;
  req.requester = nic.requester_id;
  req.kind = MemKind::Dma;
  req.address = nic.region_base + nic.next_offset;
  req.data = nic.seq;
  req.issue_cycle = cycle;
  nic.next_offset = (nic.next_offset + 1) % nic.region_len;
  return req;
}

}  // namespace xsim
