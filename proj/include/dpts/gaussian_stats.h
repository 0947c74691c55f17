// Copyright 2026 The dpts Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Statistics of the zero-mean Gaussian N(0, sigma^2) restricted to an
// interval [lo, hi). Either end may be infinite.
//
// Everything here is a pure function evaluated with a fixed expression
// order, so that an encoder and a decoder built from the same sources obtain
// bit-identical results.

#ifndef DPTS_GAUSSIAN_STATS_H_
#define DPTS_GAUSSIAN_STATS_H_

#include <limits>

namespace dpts {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo;
  double hi;

  // lo < hi, no NaN.
  bool valid() const { return lo < hi; }
  bool bounded() const { return lo > -kInf && hi < kInf; }
  bool operator==(const Interval&) const = default;
};

// Positive, finite standard deviation. Throws kNonPositiveSigma otherwise.
class Sigma {
 public:
  explicit Sigma(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Standard normal density, CDF and upper tail. The CDF and tail use erfc so
// that tail probabilities keep full relative precision.
double StdNormalPdf(double x);
double StdNormalCdf(double x);
double StdNormalUpperTail(double x);

// Phi(hi/sigma) - Phi(lo/sigma).
double IntervalProb(Interval iv, Sigma sigma);

// Conditional statistics of y ~ N(0, sigma^2) given y in [lo, hi).
struct TruncatedMoments {
  double log_prob;  // natural log of the interval probability
  double mean;      // E[y | y in iv]
  double variance;  // E[(y - mean)^2 | y in iv]
};

// Accurate everywhere, including intervals whose probability underflows
// double precision (the result is carried in log form and the conditional
// moments are integrated in coordinates local to the interval).
TruncatedMoments ComputeTruncatedMoments(Interval iv, Sigma sigma);

double LogIntervalProb(Interval iv, Sigma sigma);
double TruncatedMean(Interval iv, Sigma sigma);
// E[(y - center)^2 | y in iv]; minimized at center = TruncatedMean.
double TruncatedSecondMomentAbout(Interval iv, Sigma sigma, double center);

}  // namespace dpts

#endif  // DPTS_GAUSSIAN_STATS_H_
