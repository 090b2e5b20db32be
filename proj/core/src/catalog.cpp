#include "tsfeat/catalog.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

#include "tsfeat/features.hpp"

namespace tsfeat {

std::string_view to_string(FeatureFamily family) {
  switch (family) {
    case FeatureFamily::distribution: return "distribution";
    case FeatureFamily::correlation: return "correlation";
    case FeatureFamily::spectral: return "spectral";
    case FeatureFamily::stationarity: return "stationarity";
    case FeatureFamily::entropy: return "entropy";
    case FeatureFamily::motif: return "motif";
    case FeatureFamily::trend: return "trend";
    case FeatureFamily::model_fit: return "model-fit";
  }
  return "unknown";
}

std::string_view to_string(CostClass cost) {
  return cost == CostClass::linear ? "linear" : "superlinear";
}

void Catalog::add(FeatureDescriptor descriptor, FeatureFn fn) {
  if (index_.contains(descriptor.id)) {
    throw std::invalid_argument("duplicate feature id '" + descriptor.id + "'");
  }
  index_.emplace(descriptor.id, entries_.size());
  entries_.push_back({std::move(descriptor), std::move(fn)});
}

bool Catalog::contains(std::string_view id) const { return index_.find(id) != index_.end(); }

const Catalog::Entry& Catalog::at(std::string_view id) const {
  return entries_[index_of(id)];
}

std::size_t Catalog::index_of(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown feature id '" + std::string(id) + "'");
  return it->second;
}

FeatureValue Catalog::evaluate(std::size_t i, std::span<const double> x) const {
  try {
    return entries_.at(i).fn(x);
  } catch (const std::invalid_argument&) {
    return FeatureValue::domain_error();
  } catch (const std::domain_error&) {
    return FeatureValue::domain_error();
  }
}

Catalog Catalog::restrict_to(std::span<const std::string> ids) const {
  Catalog out;
  for (const auto& id : ids) {
    const auto& e = at(id);
    out.add(e.descriptor, e.fn);
  }
  return out;
}

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.descriptor.id);
  return out;
}

std::string Catalog::version_hash() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& e : entries_) {
    mix(e.descriptor.id);
    for (const auto& [name, value] : e.descriptor.params) {
      mix(name);
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, value);
      mix(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

namespace {

std::string param_tag(double v) {
  // 0.2 -> "02", 2 -> "2"
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  std::erase(s, '.');
  return s;
}

Catalog build_default_catalog() {
  namespace f = features;
  using F = FeatureFamily;
  using C = CostClass;
  Catalog cat;

  // distribution
  cat.add({"mean", F::distribution, {}, C::linear, false},
          [](auto x) { return f::dist_moments(x).mean; });
  cat.add({"std", F::distribution, {}, C::linear, false},
          [](auto x) { return f::dist_moments(x).std; });
  cat.add({"skewness", F::distribution, {}, C::linear, true},
          [](auto x) { return f::dist_moments(x).skewness; });
  cat.add({"kurtosis", F::distribution, {}, C::linear, true},
          [](auto x) { return f::dist_moments(x).kurtosis; });
  for (double k : {2.0, 3.0}) {
    cat.add({"outlier_frac_k" + param_tag(k), F::distribution, {{"k", k}}, C::linear, true},
            [k](auto x) { return f::outlier_frac(x, k); });
  }

  // correlation
  for (std::size_t tau = 1; tau <= 3; ++tau) {
    cat.add({"trev_tau" + std::to_string(tau), F::correlation, {{"tau", double(tau)}}, C::linear, true},
            [tau](auto x) { return f::trev(x, tau); });
  }
  for (std::size_t tau = 1; tau <= 10; ++tau) {
    cat.add({"acf_tau" + std::to_string(tau), F::correlation, {{"tau", double(tau)}}, C::linear, true},
            [tau](auto x) { return f::acf(x, tau); });
  }
  cat.add({"acf_first_zero", F::correlation, {}, C::superlinear, true},
          [](auto x) { return f::acf_first_zero(x); });
  for (std::size_t tau = 1; tau <= 3; ++tau) {
    cat.add({"ami_tau" + std::to_string(tau) + "_b10", F::correlation,
             {{"tau", double(tau)}, {"bins", 10.0}}, C::linear, true},
            [tau](auto x) { return f::automutual_info(x, tau, 10); });
  }

  // spectral
  cat.add({"spec_q90_mel", F::spectral, {}, C::superlinear, true},
          [](auto x) { return f::spectral_q90_mel(x); });

  // stationarity
  for (std::size_t window : {5u, 10u, 25u}) {
    cat.add({"stat_av_l" + std::to_string(window), F::stationarity, {{"window", double(window)}},
             C::linear, true},
            [window](auto x) { return f::stat_av(x, window); });
  }

  // entropy
  for (std::size_t bins : {5u, 10u}) {
    cat.add({"entropy_hist_b" + std::to_string(bins), F::entropy, {{"bins", double(bins)}}, C::linear,
             false},
            [bins](auto x) { return f::entropy_hist(x, bins); });
  }
  cat.add({"apen_m2_r02", F::entropy, {{"m", 2.0}, {"r", 0.2}}, C::superlinear, true},
          [](auto x) { return f::approx_entropy(x, 2, 0.2); });
  cat.add({"lz76", F::entropy, {}, C::superlinear, false},
          [](auto x) { return f::lempel_ziv(x); });

  // motif
  for (unsigned code = 0; code < 16; ++code) {
    const std::string pattern = f::motif_patterns()[code];
    cat.add({"motif_" + pattern, F::motif, {{"pattern", double(code)}}, C::linear, false},
            [pattern](auto x) { return f::motif_freq(x, pattern); });
  }

  // trend
  cat.add({"cumsum_median", F::trend, {}, C::linear, true},
          [](auto x) { return f::cumsum_median(x); });

  // model fit
  for (std::size_t p = 1; p <= 3; ++p) {
    const std::string prefix = "ar" + std::to_string(p) + "_";
    for (std::size_t j = 0; j < p; ++j) {
      cat.add({prefix + "a" + std::to_string(j + 1), F::model_fit, {{"p", double(p)}, {"coef", double(j + 1)}},
               C::linear, true},
              [p, j](auto x) { return f::ar_features(x, p).coefficients[j]; });
    }
    cat.add({prefix + "resvar", F::model_fit, {{"p", double(p)}}, C::linear, true},
            [p](auto x) { return f::ar_features(x, p).residual_variance_ratio; });
  }
  return cat;
}

}  // namespace

const Catalog& default_catalog() {
  static const Catalog cat = build_default_catalog();
  return cat;
}

}  // namespace tsfeat
