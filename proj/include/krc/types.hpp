#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace krc {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Weight = std::int64_t;

/// Reserved weight for uncuttable edges. Greater than any finite weight.
inline constexpr Weight kInf = std::numeric_limits<Weight>::max();

constexpr bool is_inf(Weight w) noexcept { return w == kInf; }

/// Saturating addition on weights: INF absorbs, overflow saturates to INF.
constexpr Weight sat_add(Weight a, Weight b) noexcept {
  if (a == kInf || b == kInf) return kInf;
  if (a > kInf - b) return kInf;
  return a + b;
}

/// Saturating multiplication of a weight by a nonnegative factor.
constexpr Weight sat_mul(Weight a, std::int64_t factor) noexcept {
  if (a == 0 || factor == 0) return 0;
  if (a == kInf) return kInf;
  if (a > kInf / factor) return kInf;
  return a * factor;
}

enum class ErrorCode {
  InvalidVertex,
  SelfLoop,
  NegativeWeight,
  InvalidArgument,
  NoSeparator,
  ExactCapExceeded,
  FreeSetBlowup,
  SeparatorBlowup,
  NoCandidateCut,
  Infeasible,
  NonUniformWeights,
  NoFeasibleGuess,
  IsolatedTerminal,
  GuessZero,
  NonIntegralThreshold,
  SizeOverflow,
  CapExceeded,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class KrcError : public std::runtime_error {
 public:
  KrcError(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. A denominator of zero
/// encodes +infinity (numerator 1), used for sparsities of uncuttable cuts.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  static Rational infinity() noexcept;
  /// Parses "a", "a/b" or a plain decimal such as "0.25".
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_infinite() const noexcept { return den_ == 0; }

  /// Floor and ceiling; undefined for infinity.
  std::int64_t floor() const;
  std::int64_t ceil() const;
  double to_double() const noexcept;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept;

 private:
  static Rational from_wide(__int128 num, __int128 den);
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

using VertexSet = std::vector<Vertex>;
using EdgeSet = std::vector<EdgeId>;

}  // namespace krc
