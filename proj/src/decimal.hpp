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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace attrspec {

class DecimalError : public std::runtime_error {
 public:
  explicit DecimalError(const std::string& what) : std::runtime_error(what) {}
};

// Exact base-10 number: mantissa * 10^-scale, scale in [0, 18], always
// normalized (no trailing fractional zeros, zero is (0, 0)). Arithmetic and
// comparison never go through binary floating point, so thresholds such as
// 0.15 compare exactly. Division truncates toward zero once the quotient
// needs more than 18 fractional digits.
class Decimal {
 public:
  static constexpr int kMaxScale = 18;

  Decimal() : mant_(0), scale_(0) {}
  Decimal(std::int64_t mantissa, int scale);

  static Decimal from_int(std::int64_t v) { return Decimal(v, 0); }

  // Accepts [-]digits[.digits]; rejects anything else.
  static std::optional<Decimal> parse(std::string_view text);

  std::int64_t mantissa() const { return mant_; }
  int scale() const { return scale_; }

  bool is_zero() const { return mant_ == 0; }
  bool is_negative() const { return mant_ < 0; }
  bool is_integer() const { return scale_ == 0; }

  Decimal operator+(const Decimal& o) const;
  Decimal operator-(const Decimal& o) const;
  Decimal operator*(const Decimal& o) const;
  // Throws DecimalError on a zero divisor.
  Decimal operator/(const Decimal& o) const;
  Decimal operator-() const;

  int compare(const Decimal& o) const;
  bool operator==(const Decimal& o) const { return compare(o) == 0; }
  bool operator!=(const Decimal& o) const { return compare(o) != 0; }
  bool operator<(const Decimal& o) const { return compare(o) < 0; }
  bool operator<=(const Decimal& o) const { return compare(o) <= 0; }
  bool operator>(const Decimal& o) const { return compare(o) > 0; }
  bool operator>=(const Decimal& o) const { return compare(o) >= 0; }

  // Canonical rendering: "-3", "0.15", "4.081". parse(str()) == *this.
  std::string str() const;

 private:
  std::int64_t mant_;
  int scale_;

  void normalize();
};

}  // namespace attrspec
