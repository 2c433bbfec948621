// Copyright 2026 The starqed Authors
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

// Weighted log-linear fits for acceptance curves and logical decays.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "starqed/analysis.h"

namespace starqed {

namespace {

struct Line {
    double intercept = 0.0;
    double slope = 0.0;
    double intercept_error = 0.0;
    double slope_error = 0.0;
    double r2 = 0.0;
};

// Weighted least squares y = c + m x. Parameter covariance is the residual
// variance times (X^T W X)^-1, with weights normalized to sum to n.
Line weighted_line(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& w) {
    const double n = static_cast<double>(x.size());
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    const double xm = sx / sw;
    const double ym = sy / sw;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += w[i] * (x[i] - xm) * (x[i] - xm);
        sxy += w[i] * (x[i] - xm) * (y[i] - ym);
        syy += w[i] * (y[i] - ym) * (y[i] - ym);
    }
    if (sxx <= 0) {
        throw std::invalid_argument("fit: abscissae are all equal");
    }
    Line l;
    l.slope = sxy / sxx;
    l.intercept = ym - l.slope * xm;
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - l.intercept - l.slope * x[i];
        ssr += w[i] * r * r;
    }
    l.r2 = syy > 0 ? 1.0 - ssr / syy : 1.0;
    if (x.size() > 2) {
        // Scale so that sum w = n; the covariance is then invariant to the
        // overall weight normalization.
        double scale = n / sw;
        double s2 = ssr * scale / (n - 2.0);
        double sxx_n = sxx * scale;
        double sw_n = n;
        l.slope_error = std::sqrt(s2 / sxx_n);
        l.intercept_error = std::sqrt(s2 * (1.0 / sw_n + xm * xm / sxx_n));
    }
    return l;
}

}  // namespace

AcceptanceCurve acceptance_fit(std::vector<AcceptancePoint> points, bool deterministic_encoding) {
    AcceptanceCurve c;
    c.points = std::move(points);
    c.deterministic_encoding = deterministic_encoding;
    std::vector<double> x, y, w;
    for (const auto& p : c.points) {
        double eta = p.eta.value();
        if (eta <= 0.0) {
            ++c.dropped;
            continue;
        }
        x.push_back(p.cycles);
        y.push_back(std::log(eta));
        w.push_back(eta);
    }
    if (x.size() < 2) {
        throw std::invalid_argument("acceptance_fit: need two points with eta > 0");
    }
    Line l = weighted_line(x, y, w);
    const double factor = deterministic_encoding ? 1.0 : 2.0;
    c.p_s = std::exp(l.slope);
    c.p_s_error = c.p_s * l.slope_error;
    c.p_l = factor * std::exp(l.intercept);
    c.p_l_error = c.p_l * l.intercept_error;
    c.r2 = l.r2;
    return c;
}

FitResult fit_decay(std::span<const DecayPoint> points, double t_cycle_us) {
    FitResult f;
    std::vector<double> x, y, w;
    for (const auto& p : points) {
        if (!(p.value > 0.0) || !(p.weight > 0.0)) {
            ++f.dropped;
            continue;
        }
        x.push_back(p.cycles);
        y.push_back(std::log(p.value));
        w.push_back(p.weight);
    }
    if (x.size() < 3) {
        throw std::invalid_argument("fit_decay: need three points with positive value and weight");
    }
    f.used = x.size();
    Line l = weighted_line(x, y, w);
    f.a = std::exp(l.intercept);
    f.a_error = f.a * l.intercept_error;
    f.b = -l.slope;
    f.b_error = l.slope_error;
    f.r2 = l.r2;
    f.epsilon = (1.0 - std::exp(-f.b)) / 2.0;
    f.epsilon_error = std::exp(-f.b) / 2.0 * f.b_error;
    f.degenerate = f.b <= 0.0;
    if (f.degenerate) {
        f.tau_us = std::numeric_limits<double>::infinity();
        f.tau_error_us = std::numeric_limits<double>::infinity();
    } else {
        f.tau_us = t_cycle_us / f.b;
        f.tau_error_us = t_cycle_us / (f.b * f.b) * f.b_error;
    }
    return f;
}

}  // namespace starqed
