// Copyright 2026 The Attrspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "decimal.hpp"

#include <cctype>
#include <limits>

namespace attrspec {

namespace {

using i128 = __int128;

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

i128 pow10_128(int n) {
  i128 r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

std::int64_t fit64(i128 v, const char* op) {
  if (v > i128(kInt64Max) || v < -i128(kInt64Max)) {
    throw DecimalError(std::string("decimal overflow in ") + op);
  }
  return static_cast<std::int64_t>(v);
}

// Strips trailing zeros, then truncates fractional digits toward zero while
// the result exceeds kMaxScale or the mantissa range. Magnitude overflow of
// the integer part still throws.
Decimal make(i128 mant, int scale, const char* op) {
  while (scale > 0 && mant % 10 == 0) {
    mant /= 10;
    --scale;
  }
  while (scale > 0 && (scale > Decimal::kMaxScale || mant > i128(kInt64Max) ||
                       mant < -i128(kInt64Max))) {
    mant /= 10;
    --scale;
  }
  return Decimal(fit64(mant, op), scale);
}

}  // namespace

Decimal::Decimal(std::int64_t mantissa, int scale) : mant_(mantissa), scale_(scale) {
  if (scale < 0 || scale > kMaxScale) throw DecimalError("decimal scale out of range");
  normalize();
}

void Decimal::normalize() {
  if (mant_ == 0) {
    scale_ = 0;
    return;
  }
  while (scale_ > 0 && mant_ % 10 == 0) {
    mant_ /= 10;
    --scale_;
  }
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  i128 mant = 0;
  int scale = 0;
  bool seen_dot = false;
  bool frac_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    mant = mant * 10 + (c - '0');
    if (mant > i128(kInt64Max)) return std::nullopt;
    if (seen_dot) {
      ++scale;
      frac_digit = true;
      if (scale > kMaxScale) return std::nullopt;
    }
  }
  if (seen_dot && !frac_digit) return std::nullopt;
  auto m = static_cast<std::int64_t>(mant);
  return Decimal(neg ? -m : m, scale);
}

Decimal Decimal::operator+(const Decimal& o) const {
  int s = scale_ > o.scale_ ? scale_ : o.scale_;
  i128 a = i128(mant_) * pow10_128(s - scale_);
  i128 b = i128(o.mant_) * pow10_128(s - o.scale_);
  return make(a + b, s, "+");
}

Decimal Decimal::operator-(const Decimal& o) const {
  int s = scale_ > o.scale_ ? scale_ : o.scale_;
  i128 a = i128(mant_) * pow10_128(s - scale_);
  i128 b = i128(o.mant_) * pow10_128(s - o.scale_);
  return make(a - b, s, "-");
}

Decimal Decimal::operator*(const Decimal& o) const {
  return make(i128(mant_) * i128(o.mant_), scale_ + o.scale_, "*");
}

Decimal Decimal::operator/(const Decimal& o) const {
  if (o.mant_ == 0) throw DecimalError("division by zero");
  bool neg = (mant_ < 0) != (o.mant_ < 0);
  i128 num = mant_ < 0 ? -i128(mant_) : i128(mant_);
  i128 den = o.mant_ < 0 ? -i128(o.mant_) : i128(o.mant_);

  // result = (num / den) * 10^(o.scale_ - scale_); long-divide to at most
  // kMaxScale fractional digits and at most int64 mantissa digits,
  // truncating toward zero beyond that.
  int exp = o.scale_ - scale_;  // power of ten applied to the raw quotient
  i128 q = num / den;
  i128 rem = num % den;
  int frac = 0;
  i128 digits = q;
  while (rem != 0 && frac - exp < kMaxScale && digits <= i128(kInt64Max) / 10) {
    rem *= 10;
    digits = digits * 10 + rem / den;
    rem %= den;
    ++frac;
  }
  int scale = frac - exp;
  while (scale < 0) {
    digits *= 10;
    ++scale;
    if (digits > pow10_128(37)) throw DecimalError("decimal overflow in /");
  }
  return make(neg ? -digits : digits, scale, "/");
}

Decimal Decimal::operator-() const { return Decimal(-mant_, scale_); }

int Decimal::compare(const Decimal& o) const {
  int s = scale_ > o.scale_ ? scale_ : o.scale_;
  i128 a = i128(mant_) * pow10_128(s - scale_);
  i128 b = i128(o.mant_) * pow10_128(s - o.scale_);
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

std::string Decimal::str() const {
  std::uint64_t abs = mant_ < 0 ? static_cast<std::uint64_t>(-(mant_ + 1)) + 1
                                : static_cast<std::uint64_t>(mant_);
  std::string digits = std::to_string(abs);
  if (static_cast<int>(digits.size()) <= scale_) {
    digits.insert(0, scale_ - digits.size() + 1, '0');
  }
  std::string out;
  if (mant_ < 0) out += '-';
  out += digits.substr(0, digits.size() - scale_);
  if (scale_ > 0) {
    out += '.';
    out += digits.substr(digits.size() - scale_);
  }
  return out;
}

}  // namespace attrspec
