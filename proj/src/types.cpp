#include "krc/types.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

namespace krc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoSeparator: return "NoSeparator";
    case ErrorCode::ExactCapExceeded: return "ExactCapExceeded";
    case ErrorCode::FreeSetBlowup: return "FreeSetBlowup";
    case ErrorCode::SeparatorBlowup: return "SeparatorBlowup";
    case ErrorCode::NoCandidateCut: return "NoCandidateCut";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonUniformWeights: return "NonUniformWeights";
    case ErrorCode::NoFeasibleGuess: return "NoFeasibleGuess";
    case ErrorCode::IsolatedTerminal: return "IsolatedTerminal";
    case ErrorCode::GuessZero: return "GuessZero";
    case ErrorCode::NonIntegralThreshold: return "NonIntegralThreshold";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

KrcError::KrcError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code) {}

namespace {

__int128 abs128(__int128 x) { return x < 0 ? -x : x; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kI64Max = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw KrcError(ErrorCode::InvalidArgument, "zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::infinity() noexcept {
  Rational r;
  r.num_ = 1;
  r.den_ = 0;
  return r;
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) return infinity();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (abs128(num) > kI64Max || den > kI64Max)
    throw KrcError(ErrorCode::SizeOverflow, "rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  if (r.num_ == 0) r.den_ = 1;
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    return KrcError(ErrorCode::ParseError,
                    "bad rational '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw fail();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t d = parse_int(text.substr(slash + 1));
    if (d == 0) throw fail();
    return Rational(parse_int(text.substr(0, slash)), d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15 || frac.empty()) throw fail();
    bool negative = !whole.empty() && whole.front() == '-';
    std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    std::int64_t f = parse_int(frac);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    __int128 num = static_cast<__int128>(w < 0 ? -w : w) * scale + f;
    return from_wide(negative ? -num : num, scale);
  }
  return Rational(parse_int(text));
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

double Rational::to_double() const noexcept {
  if (is_infinite()) return HUGE_VAL;
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) return Rational::infinity();
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ +
                                 static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite())
    throw KrcError(ErrorCode::InvalidArgument, "subtraction with infinity");
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ -
                                 static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.num_ == 0 || b.num_ == 0)
      throw KrcError(ErrorCode::InvalidArgument, "0 * infinity");
    return Rational::infinity();
  }
  // Cross-reduce first to keep intermediates small.
  __int128 g1 = gcd128(a.num_, b.den_);
  __int128 g2 = gcd128(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational::from_wide((a.num_ / g1) * (b.num_ / g2),
                             (a.den_ / g2) * (b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_infinite())
    throw KrcError(ErrorCode::InvalidArgument, "division by infinity");
  if (b.num_ == 0) throw KrcError(ErrorCode::InvalidArgument, "division by zero");
  if (a.is_infinite()) return Rational::infinity();
  Rational inv;
  inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
  inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
  return a * inv;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater
                           : std::strong_ordering::less;
  }
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace krc
