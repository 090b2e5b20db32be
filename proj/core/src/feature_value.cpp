#include "tsfeat/feature_value.hpp"

#include <cmath>
#include <stdexcept>

namespace tsfeat {

std::string_view to_string(SpecialKind kind) {
  switch (kind) {
    case SpecialKind::not_a_number: return "not-a-number";
    case SpecialKind::infinite: return "infinite";
    case SpecialKind::domain_error: return "domain-error";
  }
  return "unknown";
}

FeatureValue FeatureValue::real(double v) {
  if (std::isnan(v)) return FeatureValue(SpecialKind::not_a_number);
  if (std::isinf(v)) return FeatureValue(SpecialKind::infinite);
  return FeatureValue(v);
}

double FeatureValue::value() const {
  if (special_) throw std::logic_error("FeatureValue::value() called on a special value");
  return value_;
}

SpecialKind FeatureValue::kind() const {
  if (!special_) throw std::logic_error("FeatureValue::kind() called on a real value");
  return kind_;
}

bool operator==(const FeatureValue& a, const FeatureValue& b) {
  if (a.special_ != b.special_) return false;
  return a.special_ ? a.kind_ == b.kind_ : a.value_ == b.value_;
}

namespace {

template <typename Op>
FeatureValue combine(const FeatureValue& a, const FeatureValue& b, Op op) {
  if (a.is_special()) return a;
  if (b.is_special()) return b;
  return FeatureValue::real(op(a.value(), b.value()));
}

}  // namespace

FeatureValue operator+(const FeatureValue& a, const FeatureValue& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

FeatureValue operator-(const FeatureValue& a, const FeatureValue& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

FeatureValue operator*(const FeatureValue& a, const FeatureValue& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

FeatureValue operator/(const FeatureValue& a, const FeatureValue& b) {
  if (a.is_special()) return a;
  if (b.is_special()) return b;
  if (b.value() == 0.0) return FeatureValue::domain_error();
  return FeatureValue::real(a.value() / b.value());
}

FeatureValue operator-(const FeatureValue& a) {
  return a.is_special() ? a : FeatureValue::real(-a.value());
}

}  // namespace tsfeat
