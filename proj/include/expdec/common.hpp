#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace expdec {

// Thrown on bad user input (CLI arguments, malformed instances, violated
// entry preconditions). Callers may catch and report these.
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an internal invariant breaks. Never expected in a correct
// build; tests treat any ContractError as a bug.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

#define EXPDEC_CHECK(cond, msg)                                          \
  do {                                                                   \
    if (!(cond)) throw ::expdec::ContractError(std::string("invariant: ") + msg); \
  } while (0)

#define EXPDEC_REQUIRE(cond, msg)                                        \
  do {                                                                   \
    if (!(cond)) throw ::expdec::ParamError(msg);                        \
  } while (0)

using NodeId = int32_t;
using EdgeId = int32_t;

// Exact rational on int64 with overflow-safe comparisons. Denominator is
// kept positive and the fraction normalized.
struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n) : num(n), den(1) {}
  Rat(int64_t n, int64_t d) : num(n), den(d) {
    EXPDEC_REQUIRE(den != 0, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    EXPDEC_REQUIRE(b.num != 0, "rational division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
};

// Conductance parameter 0 < p/q < 1. All flow quantities are kept integral
// by scaling masses with p: sink p*deg(v), edge capacity 2q, boundary
// source 2q, deletion source 4q.
struct Phi {
  int64_t p = 1;
  int64_t q = 2;

  Phi() = default;
  Phi(int64_t p_, int64_t q_) : p(p_), q(q_) {
    EXPDEC_REQUIRE(p > 0 && q > 0, "phi must be positive");
    int64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    EXPDEC_REQUIRE(p < q, "phi must be < 1");
  }

  Rat as_rat() const { return Rat(p, q); }
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

  // phi/6 as an exact rational.
  Rat sixth() const { return Rat(p, q * 6); }
};

// Parses "p/q", an integer-free decimal like "0.125", or plain "0".
// Decimals are converted to the nearest rational with denominator <= 10^6
// (continued-fraction best approximation).
Phi parse_phi(const std::string& text);

// splitmix64; used to derive independent child seeds deterministically.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace expdec
