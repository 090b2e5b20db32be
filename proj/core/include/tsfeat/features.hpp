#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsfeat/feature_value.hpp"

// Individual time-series features. Each maps a series to one (or a few)
// FeatureValues. Data-dependent failures (a constant series, zero power, a
// singular fit) come back as domain-error specials; violated length or
// parameter preconditions throw std::invalid_argument. The catalog turns
// both into per-cell specials.

namespace tsfeat::features {

/// Time-reversal asymmetry <d^3> / <d^2>^{3/2} with d_t = x_{t+lag} - x_t.
FeatureValue trev(std::span<const double> x, std::size_t lag);

/// Frequency of a four-step up/down pattern in successive differences,
/// divided by the series length. `pattern` is four characters from {u, d},
/// e.g. "dudu". Ties (zero differences) match neither direction.
FeatureValue motif_freq(std::span<const double> x, std::string_view pattern);

/// All sixteen four-letter patterns in lexicographic order ("dddd" .. "uuuu").
std::vector<std::string> motif_patterns();

/// Median of the cumulative sum of the z-scored series.
FeatureValue cumsum_median(std::span<const double> x);

/// Mel-scaled frequency at which the cumulative Hamming-windowed periodogram
/// first reaches 90% of its total.
FeatureValue spectral_q90_mel(std::span<const double> x);

/// 1127 * ln(omega / (1400 pi) + 1), omega in radians per sample.
double mel(double omega);

/// Hamming-windowed, mean-removed periodogram at k = 0..floor(N/2). Unscaled.
std::vector<double> hamming_periodogram(std::span<const double> x);

/// Sample std of non-overlapping window means over the sample std of x.
FeatureValue stat_av(std::span<const double> x, std::size_t window);

/// ApEn(m, r) with r = r_frac * sample std, Chebyshev distance, self-matches counted.
FeatureValue approx_entropy(std::span<const double> x, std::size_t m = 2, double r_frac = 0.2);

/// Biased autocorrelation estimate at `lag`.
FeatureValue acf(std::span<const double> x, std::size_t lag);

/// Smallest lag >= 1 at which the biased autocorrelation is <= 0.
FeatureValue acf_first_zero(std::span<const double> x);

/// Mutual information (nats) between x_t and x_{t+lag} from a bins x bins
/// equal-width histogram over [min(x), max(x)].
FeatureValue automutual_info(std::span<const double> x, std::size_t lag, std::size_t bins);

/// Shannon entropy (nats) of an equal-width histogram; 0 for a constant series.
FeatureValue entropy_hist(std::span<const double> x, std::size_t bins);

/// Number of LZ76 phrases in a binary string.
std::size_t lz76_phrase_count(std::span<const unsigned char> bits);

/// Median-binarized LZ76 complexity, c(N) * log2(N) / N.
FeatureValue lempel_ziv(std::span<const double> x);

struct Moments {
  FeatureValue mean;
  FeatureValue std;
  FeatureValue skewness;
  FeatureValue kurtosis;
};

/// Mean, sample std, moment skewness and non-excess kurtosis.
Moments dist_moments(std::span<const double> x);

/// Fraction of points with |z| > k.
FeatureValue outlier_frac(std::span<const double> x, double k = 2.0);

struct ArFit {
  std::vector<FeatureValue> coefficients;  // a_1 .. a_p
  FeatureValue residual_variance_ratio;
};

/// Least-squares AR(p) fit with intercept on the mean-removed series.
ArFit ar_features(std::span<const double> x, std::size_t order);

// Bin index of v within [lo, hi] split into `bins` equal widths; the last bin
// is closed on the right.
std::size_t histogram_bin(double v, double lo, double hi, std::size_t bins);

}  // namespace tsfeat::features
