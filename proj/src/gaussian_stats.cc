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

#include "dpts/gaussian_stats.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpts/common.h"

namespace dpts {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

// Closed forms are used only where their cancellation is bounded. Intervals
// narrower than kNarrow (in sigma units), or starting beyond kTailStart,
// are integrated numerically in coordinates local to the interval.
constexpr double kNarrow = 0.5;
constexpr double kTailStart = 5.0;
// Integration stops where the local density has decayed by exp(-kCutoff).
constexpr double kCutoff = 40.0;
// Bound on the exponent change across one quadrature panel.
constexpr double kPanelExponent = 6.0;

// 16-point Gauss-Legendre rule on [-1, 1]; nodes are +-kGaussNodes[i].
constexpr double kGaussNodes[8][2] = {
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037},
};

double XPdf(double x) {
  // x * phi(x), with the infinite ends contributing zero.
  if (std::isinf(x)) return 0.0;
  return x * StdNormalPdf(x);
}

// Probability of the standardized interval [a, b) with 0 <= a or a < 0 < b.
double StandardProb(double a, double b) {
  if (a >= 1.0) {
    return 0.5 * (std::erfc(a * kInvSqrt2) - std::erfc(b * kInvSqrt2));
  }
  return 0.5 * (std::erf(b * kInvSqrt2) - std::erf(a * kInvSqrt2));
}

// Moments of N(0,1) on [a, a + width), integrated in x = y - a where the
// density is phi(a) * exp(-a x - x^2 / 2).
TruncatedMoments LocalQuadrature(double a, double width) {
  const double reach = -a + std::sqrt(a * a + 2.0 * kCutoff);
  const double extent = std::min(width, reach);
  const double rate = std::fabs(a) + extent;
  const int panels =
      std::max(1, static_cast<int>(std::ceil(extent * rate / kPanelExponent)));
  const double h = extent / panels;
  const double half = 0.5 * h;

  double z = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (const auto& node : kGaussNodes) {
      for (const double side : {-1.0, 1.0}) {
        const double x = mid + side * half * node[0];
        const double g = half * node[1] * std::exp(-a * x - 0.5 * x * x);
        z += g;
        s1 += g * x;
        s2 += g * x * x;
      }
    }
  }
  const double m1 = s1 / z;
  const double var = std::max(0.0, s2 / z - m1 * m1);
  TruncatedMoments out;
  out.log_prob = -0.5 * a * a - kLogSqrt2Pi + std::log(z);
  out.mean = a + m1;
  out.variance = var;
  return out;
}

TruncatedMoments ClosedForm(double a, double b) {
  const double p = StandardProb(a, b);
  const double mean = (StdNormalPdf(a) - StdNormalPdf(b)) / p;
  const double second = 1.0 + (XPdf(a) - XPdf(b)) / p;
  TruncatedMoments out;
  out.log_prob = std::log(p);
  out.mean = mean;
  out.variance = std::max(0.0, second - mean * mean);
  return out;
}

// Standardized interval [a, b), a < b.
TruncatedMoments StandardMoments(double a, double b) {
  const bool flip = b <= 0.0;
  if (flip) {
    const double t = a;
    a = -b;
    b = -t;
  }
  const double width = b - a;
  TruncatedMoments m;
  if (a < 0.0) {
    m = width < kNarrow ? LocalQuadrature(a, width) : ClosedForm(a, b);
  } else if (a <= kTailStart && width >= kNarrow) {
    m = ClosedForm(a, b);
  } else {
    m = LocalQuadrature(a, width);
  }
  if (a == -b) m.mean = 0.0;
  if (flip) m.mean = -m.mean;
  return m;
}

}  // namespace

Sigma::Sigma(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kNonPositiveSigma,
                "sigma must be positive and finite, got " +
                    std::to_string(value));
  }
}

double StdNormalPdf(double x) {
  return std::exp(-0.5 * x * x - kLogSqrt2Pi);
}

double StdNormalCdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double StdNormalUpperTail(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double IntervalProb(Interval iv, Sigma sigma) {
  double a = iv.lo / sigma.value();
  double b = iv.hi / sigma.value();
  if (b <= 0.0) {
    const double t = a;
    a = -b;
    b = -t;
  }
  return StandardProb(a, b);
}

TruncatedMoments ComputeTruncatedMoments(Interval iv, Sigma sigma) {
  const double s = sigma.value();
  TruncatedMoments m = StandardMoments(iv.lo / s, iv.hi / s);
  m.mean *= s;
  m.variance *= s * s;
  return m;
}

double LogIntervalProb(Interval iv, Sigma sigma) {
  return ComputeTruncatedMoments(iv, sigma).log_prob;
}

double TruncatedMean(Interval iv, Sigma sigma) {
  return ComputeTruncatedMoments(iv, sigma).mean;
}

double TruncatedSecondMomentAbout(Interval iv, Sigma sigma, double center) {
  const TruncatedMoments m = ComputeTruncatedMoments(iv, sigma);
  const double d = m.mean - center;
  return m.variance + d * d;
}

}  // namespace dpts
