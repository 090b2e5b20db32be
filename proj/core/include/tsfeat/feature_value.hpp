#pragma once

#include <cstdint>
#include <string_view>

namespace tsfeat {

enum class SpecialKind : std::uint8_t { not_a_number, infinite, domain_error };

std::string_view to_string(SpecialKind kind);

/// Output of a single feature on a single series: either a finite real or a
/// special value. Specials are sticky under arithmetic.
class FeatureValue {
 public:
  /// Non-finite input is classified into the matching special kind.
  static FeatureValue real(double v);
  static FeatureValue special(SpecialKind kind) { return FeatureValue(kind); }
  static FeatureValue domain_error() { return FeatureValue(SpecialKind::domain_error); }

  bool is_real() const { return !special_; }
  bool is_special() const { return special_; }

  /// Throws std::logic_error on a special.
  double value() const;
  /// Throws std::logic_error on a real.
  SpecialKind kind() const;

  double value_or(double fallback) const { return special_ ? fallback : value_; }

  friend bool operator==(const FeatureValue& a, const FeatureValue& b);

 private:
  explicit FeatureValue(double v) : value_(v) {}
  explicit FeatureValue(SpecialKind k) : special_(true), kind_(k) {}

  double value_ = 0.0;
  bool special_ = false;
  SpecialKind kind_ = SpecialKind::not_a_number;
};

FeatureValue operator+(const FeatureValue& a, const FeatureValue& b);
FeatureValue operator-(const FeatureValue& a, const FeatureValue& b);
FeatureValue operator*(const FeatureValue& a, const FeatureValue& b);
FeatureValue operator/(const FeatureValue& a, const FeatureValue& b);
FeatureValue operator-(const FeatureValue& a);

}  // namespace tsfeat
