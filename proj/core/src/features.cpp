#include "tsfeat/features.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "tsfeat/transforms.hpp"

namespace tsfeat::features {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// FFTW's planner is not thread-safe; execution on a private plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::size_t histogram_bin(double v, double lo, double hi, std::size_t bins) {
  if (!(hi > lo)) return 0;
  const double pos = (v - lo) / (hi - lo) * static_cast<double>(bins);
  if (!(pos > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(pos), bins - 1);
}

FeatureValue trev(std::span<const double> x, std::size_t lag) {
  require(lag >= 1 && x.size() > lag, "trev: need 1 <= lag < N");
  const std::size_t n = x.size() - lag;
  double s2 = 0.0;
  double s3 = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double d = x[t + lag] - x[t];
    const double d2 = d * d;
    s2 += d2;
    s3 += d2 * d;
  }
  const double m2 = s2 / static_cast<double>(n);
  if (m2 == 0.0) return FeatureValue::domain_error();
  return FeatureValue::real((s3 / static_cast<double>(n)) / std::pow(m2, 1.5));
}

FeatureValue motif_freq(std::span<const double> x, std::string_view pattern) {
  require(pattern.size() == 4 &&
              std::all_of(pattern.begin(), pattern.end(), [](char c) { return c == 'u' || c == 'd'; }),
          "motif_freq: pattern must be four characters from {u, d}");
  require(x.size() >= 5, "motif_freq: need N >= 5");
  unsigned want = 0;
  for (char c : pattern) want = (want << 1) | (c == 'u' ? 1u : 0u);

  // Rolling 4-bit code of the last four steps (1 = up). A tie poisons the
  // next four windows. Branch-free: random data would defeat the predictor.
  unsigned code = 0;
  std::size_t since_tie = 0;
  std::size_t count = 0;
  const std::size_t steps = x.size() - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    const double d = x[i + 1] - x[i];
    code = ((code << 1) | static_cast<unsigned>(d > 0.0)) & 15u;
    since_tie = d == 0.0 ? 0 : since_tie + 1;
    count += static_cast<std::size_t>((code == want) & (since_tie >= 4));
  }
  return FeatureValue::real(static_cast<double>(count) / static_cast<double>(x.size()));
}

std::vector<std::string> motif_patterns() {
  std::vector<std::string> out;
  for (unsigned code = 0; code < 16; ++code) {
    std::string p(4, 'd');
    for (unsigned k = 0; k < 4; ++k) {
      if (code & (1u << (3 - k))) p[k] = 'u';
    }
    out.push_back(p);
  }
  return out;
}

FeatureValue cumsum_median(std::span<const double> x) {
  const auto z = zscore(x);
  if (!z) return FeatureValue::domain_error();
  return FeatureValue::real(median(cumulative_sum(*z)));
}

double mel(double omega) { return 1127.0 * std::log(omega / (1400.0 * std::numbers::pi) + 1.0); }

std::vector<double> hamming_periodogram(std::span<const double> x) {
  const std::size_t n = x.size();
  require(n >= 2, "hamming_periodogram: need N >= 2");
  const double m = mean(x);
  const double denom = static_cast<double>(n - 1);

  const std::size_t n_out = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n_out);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / denom);
    in[i] = (x[i] - m) * w;
  }
  fftw_execute(plan);

  std::vector<double> power(n_out);
  for (std::size_t k = 0; k < n_out; ++k) power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];

  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(out);
  fftw_free(in);
  return power;
}

FeatureValue spectral_q90_mel(std::span<const double> x) {
  require(x.size() >= 8, "spectral_q90_mel: need N >= 8");
  if (is_constant(x)) return FeatureValue::domain_error();
  const auto power = hamming_periodogram(x);
  std::vector<double> cum(power.size());
  std::partial_sum(power.begin(), power.end(), cum.begin());
  const double total = cum.back();
  if (!(total > 0.0)) return FeatureValue::domain_error();
  const auto it = std::find_if(cum.begin(), cum.end(), [&](double c) { return c >= 0.9 * total; });
  const auto k = static_cast<double>(it - cum.begin());
  return FeatureValue::real(mel(2.0 * std::numbers::pi * k / static_cast<double>(x.size())));
}

FeatureValue stat_av(std::span<const double> x, std::size_t window) {
  require(window >= 1 && x.size() >= 2 * window, "stat_av: need N >= 2 * window");
  if (is_constant(x)) return FeatureValue::domain_error();
  const std::size_t n_windows = x.size() / window;
  std::vector<double> means(n_windows);
  for (std::size_t w = 0; w < n_windows; ++w) means[w] = mean(x.subspan(w * window, window));
  const double s = sample_std(x);
  if (!(s > 0.0)) return FeatureValue::domain_error();
  return FeatureValue::real(sample_std(means) / s);
}

namespace {

double apen_phi(std::span<const double> x, std::size_t m, double r) {
  const std::size_t n_templates = x.size() - m + 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < n_templates; ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n_templates; ++j) {
      std::size_t k = 0;
      while (k < m && std::abs(x[i + k] - x[j + k]) <= r) ++k;
      if (k == m) ++count;
    }
    acc += std::log(static_cast<double>(count) / static_cast<double>(n_templates));
  }
  return acc / static_cast<double>(n_templates);
}

}  // namespace

FeatureValue approx_entropy(std::span<const double> x, std::size_t m, double r_frac) {
  require(m >= 1 && x.size() >= m + 2, "approx_entropy: need m >= 1 and N >= m + 2");
  require(r_frac > 0.0, "approx_entropy: r_frac must be positive");
  if (is_constant(x)) return FeatureValue::domain_error();
  const double r = r_frac * sample_std(x);
  return FeatureValue::real(apen_phi(x, m, r) - apen_phi(x, m + 1, r));
}

namespace {

// Sum of squared deviations, or nullopt when the series is constant.
struct Centered {
  std::vector<double> values;
  double sum_sq = 0.0;
};

std::optional<Centered> center(std::span<const double> x) {
  if (is_constant(x)) return std::nullopt;
  Centered c;
  const double m = mean(x);
  c.values.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    c.values[i] = x[i] - m;
    c.sum_sq += c.values[i] * c.values[i];
  }
  if (!(c.sum_sq > 0.0)) return std::nullopt;
  return c;
}

double lagged_product(const std::vector<double>& y, std::size_t lag) {
  double acc = 0.0;
  for (std::size_t t = 0; t + lag < y.size(); ++t) acc += y[t] * y[t + lag];
  return acc;
}

}  // namespace

FeatureValue acf(std::span<const double> x, std::size_t lag) {
  require(x.size() > lag, "acf: need N > lag");
  const auto c = center(x);
  if (!c) return FeatureValue::domain_error();
  return FeatureValue::real(lagged_product(c->values, lag) / c->sum_sq);
}

FeatureValue acf_first_zero(std::span<const double> x) {
  const auto c = center(x);
  if (!c) return FeatureValue::domain_error();
  for (std::size_t lag = 1; lag < x.size(); ++lag) {
    if (lagged_product(c->values, lag) <= 0.0) return FeatureValue::real(static_cast<double>(lag));
  }
  return FeatureValue::domain_error();
}

namespace {

double entropy_of_counts(const std::vector<std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

FeatureValue automutual_info(std::span<const double> x, std::size_t lag, std::size_t bins) {
  require(lag >= 1 && x.size() > lag, "automutual_info: need 1 <= lag < N");
  require(bins >= 1, "automutual_info: need at least one bin");
  if (is_constant(x)) return FeatureValue::domain_error();
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  const std::size_t n_pairs = x.size() - lag;
  std::vector<std::size_t> joint(bins * bins, 0);
  std::vector<std::size_t> first(bins, 0);
  std::vector<std::size_t> second(bins, 0);
  for (std::size_t t = 0; t < n_pairs; ++t) {
    const std::size_t a = histogram_bin(x[t], lo, hi, bins);
    const std::size_t b = histogram_bin(x[t + lag], lo, hi, bins);
    ++joint[a * bins + b];
    ++first[a];
    ++second[b];
  }
  // I = H(X) + H(Y) - H(X, Y)
  const double mi = entropy_of_counts(first, n_pairs) + entropy_of_counts(second, n_pairs) -
                    entropy_of_counts(joint, n_pairs);
  return FeatureValue::real(mi);
}

FeatureValue entropy_hist(std::span<const double> x, std::size_t bins) {
  require(x.size() >= 2, "entropy_hist: need N >= 2");
  require(bins >= 1, "entropy_hist: need at least one bin");
  if (is_constant(x)) return FeatureValue::real(0.0);
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  std::vector<std::size_t> counts(bins, 0);
  for (double v : x) ++counts[histogram_bin(v, *lo_it, *hi_it, bins)];
  return FeatureValue::real(entropy_of_counts(counts, x.size()));
}

std::size_t lz76_phrase_count(std::span<const unsigned char> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  if (n == 1) return 1;
  // Kaspar & Schuster scheme.
  std::size_t i = 0;
  std::size_t k = 1;
  std::size_t l = 1;
  std::size_t c = 1;
  std::size_t k_max = 1;
  while (true) {
    if (s[i + k - 1] == s[l + k - 1]) {
      ++k;
      if (l + k > n) {
        ++c;
        break;
      }
    } else {
      k_max = std::max(k, k_max);
      ++i;
      if (i == l) {
        ++c;
        l += k_max;
        if (l + 1 > n) break;
        i = 0;
        k = 1;
        k_max = 1;
      } else {
        k = 1;
      }
    }
  }
  return c;
}

FeatureValue lempel_ziv(std::span<const double> x) {
  require(x.size() >= 2, "lempel_ziv: need N >= 2");
  const double med = median(x);
  std::vector<unsigned char> bits(x.size());
  std::transform(x.begin(), x.end(), bits.begin(), [&](double v) { return v > med ? 1 : 0; });
  const auto n = static_cast<double>(x.size());
  return FeatureValue::real(static_cast<double>(lz76_phrase_count(bits)) * std::log2(n) / n);
}

Moments dist_moments(std::span<const double> x) {
  require(x.size() >= 2, "dist_moments: need N >= 2");
  const double m = mean(x);
  Moments out{FeatureValue::real(m), FeatureValue::real(sample_std(x)),
              FeatureValue::domain_error(), FeatureValue::domain_error()};
  if (is_constant(x)) return out;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const auto n = static_cast<double>(x.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) return out;
  out.skewness = FeatureValue::real(m3 / std::pow(m2, 1.5));
  out.kurtosis = FeatureValue::real(m4 / (m2 * m2));
  return out;
}

FeatureValue outlier_frac(std::span<const double> x, double k) {
  const auto z = zscore(x);
  if (!z) return FeatureValue::domain_error();
  const auto n_out = std::count_if(z->begin(), z->end(), [&](double v) { return std::abs(v) > k; });
  return FeatureValue::real(static_cast<double>(n_out) / static_cast<double>(z->size()));
}

ArFit ar_features(std::span<const double> x, std::size_t order) {
  require(order >= 1 && x.size() >= order + 2, "ar_features: need p >= 1 and N >= p + 2");
  ArFit fit{std::vector<FeatureValue>(order, FeatureValue::domain_error()),
            FeatureValue::domain_error()};
  const auto c = center(x);
  if (!c) return fit;

  // Normal equations accumulated in one pass; the full design matrix would not
  // stay in cache for long series.
  const auto p = static_cast<Eigen::Index>(order);
  const std::size_t rows = x.size() - order;
  const auto& v = c->values;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p + 1, p + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd row(p + 1);
  double yy = 0.0;
  for (std::size_t t = order; t < x.size(); ++t) {
    row(0) = 1.0;
    for (Eigen::Index j = 1; j <= p; ++j) row(j) = v[t - static_cast<std::size_t>(j)];
    gram.selfadjointView<Eigen::Lower>().rankUpdate(row);
    rhs += v[t] * row;
    yy += v[t] * v[t];
  }
  gram = gram.selfadjointView<Eigen::Lower>();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
  qr.setThreshold(1e-12);
  if (qr.rank() < p + 1) return fit;
  const Eigen::VectorXd beta = qr.solve(rhs);
  // RSS = y'y - 2 b'X'y + b'X'X b
  const double rss = std::max(0.0, yy - 2.0 * beta.dot(rhs) + beta.dot(gram * beta));

  for (Eigen::Index j = 1; j <= p; ++j) fit.coefficients[static_cast<std::size_t>(j - 1)] = FeatureValue::real(beta(j));
  const double residual_var = rss / static_cast<double>(rows);
  const double series_var = c->sum_sq / static_cast<double>(x.size());
  fit.residual_variance_ratio = FeatureValue::real(residual_var / series_var);
  return fit;
}

}  // namespace tsfeat::features
