/*
 * Copyright 2026 The WCT Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wct::oracle {

std::array<double, 4> Db2Lowpass() {
  const double s3 = std::sqrt(3.0);
  const double norm = 4.0 * std::sqrt(2.0);
  return {(1 + s3) / norm, (3 + s3) / norm, (3 - s3) / norm, (1 - s3) / norm};
}

std::array<double, 4> Db2Highpass() {
  const auto h = Db2Lowpass();
  return {h[3], -h[2], h[1], -h[0]};
}

Matrix AnalysisMatrix(int n) {
  const auto h = Db2Lowpass();
  const auto g = Db2Highpass();
  Matrix w(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < n / 2; ++k) {
    for (int m = 0; m < 4; ++m) {
      w[k][(2 * k + m) % n] += h[m];
      w[n / 2 + k][(2 * k + m) % n] += g[m];
    }
  }
  return w;
}

Matrix Multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix Transpose(const Matrix& a) {
  Matrix t(a[0].size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

namespace {

Matrix Block(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) {
  Matrix out(h, std::vector<double>(w));
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c) out[r][c] = m[r0 + r][c0 + c];
  return out;
}

}  // namespace

// Filtering each row of X is X * W_c^T; filtering each column is W_r * (.).
// In the product Y = W_r X W_c^T, the top rows are column-lowpass and the
// left columns are row-lowpass. "Horizontal" is lowpass along rows and
// highpass along columns, i.e. the bottom-left quadrant.
Level2d Dwt2d(const Matrix& x) {
  const std::size_t rows = x.size();
  const std::size_t cols = x[0].size();
  const Matrix y = Multiply(Multiply(AnalysisMatrix(static_cast<int>(rows)), x),
                            Transpose(AnalysisMatrix(static_cast<int>(cols))));
  const std::size_t hr = rows / 2;
  const std::size_t hc = cols / 2;
  return {Block(y, 0, 0, hr, hc), Block(y, hr, 0, hr, hc), Block(y, 0, hc, hr, hc),
          Block(y, hr, hc, hr, hc)};
}

std::vector<std::vector<int>> QuantizeMinMax(const Matrix& m, int levels) {
  double lo = m[0][0];
  double hi = m[0][0];
  for (const auto& row : m)
    for (const double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  std::vector<std::vector<int>> q(m.size(), std::vector<int>(m[0].size(), 0));
  if (hi == lo) return q;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[0].size(); ++c)
      q[r][c] = static_cast<int>(std::floor((m[r][c] - lo) / (hi - lo) * (levels - 1) + 0.5));
  return q;
}

Matrix Glcm(const std::vector<std::vector<int>>& q, int levels, int dr, int dc) {
  Matrix p(levels, std::vector<double>(levels, 0.0));
  const int rows = static_cast<int>(q.size());
  const int cols = static_cast<int>(q[0].size());
  double total = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int r2 = r + dr;
      const int c2 = c + dc;
      if (r2 < 0 || r2 >= rows || c2 < 0 || c2 >= cols) continue;
      p[q[r][c]][q[r2][c2]] += 1.0;
      p[q[r2][c2]][q[r][c]] += 1.0;
      total += 2.0;
    }
  }
  for (auto& row : p)
    for (double& v : row) v /= total;
  return p;
}

Matrix GlcmMeanOfAngles(const std::vector<std::vector<int>>& q, int levels, int d) {
  const int offsets[4][2] = {{0, d}, {-d, d}, {-d, 0}, {-d, -d}};
  Matrix mean(levels, std::vector<double>(levels, 0.0));
  for (const auto& o : offsets) {
    const Matrix p = Glcm(q, levels, o[0], o[1]);
    for (int i = 0; i < levels; ++i)
      for (int j = 0; j < levels; ++j) mean[i][j] += p[i][j] / 4.0;
  }
  return mean;
}

std::array<double, 9> Haralick(const Matrix& p) {
  const int n = static_cast<int>(p.size());
  double ent = 0, ene = 0, con = 0, sa = 0, var = 0, cor = 0, mp = 0, idm = 0, ct = 0;
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mx += i * p[i][j];
      my += j * p[i][j];
    }
  double vx = 0, vy = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      vx += (i - mx) * (i - mx) * p[i][j];
      vy += (j - my) * (j - my) * p[i][j];
    }
  const double mu = (mx + my) / 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = p[i][j];
      if (v > 0) ent -= v * std::log2(v);
      ene += v * v;
      con += (i - j) * (i - j) * v;
      var += (i - mu) * (i - mu) * v;
      cor += (i - mx) * (j - my) * v;
      mp = std::max(mp, v);
      idm += v / (1.0 + (i - j) * (i - j));
      ct += (i + j - mx - my) * (i + j - mx - my) * v;
    }
  }
  // Sum average through the explicit sum distribution p_{x+y}.
  std::vector<double> psum(2 * n - 1, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) psum[i + j] += p[i][j];
  for (int k = 0; k < 2 * n - 1; ++k) sa += k * psum[k];
  const double sd = std::sqrt(vx) * std::sqrt(vy);
  cor = sd > 1e-15 ? cor / sd : 0.0;
  return {ent, ene, con, sa, var, cor, mp, idm, ct};
}

std::vector<double> WctFeatures(const std::vector<std::vector<int>>& pixels, int levels) {
  Matrix x(pixels.size(), std::vector<double>(pixels[0].size()));
  for (std::size_t r = 0; r < pixels.size(); ++r)
    for (std::size_t c = 0; c < pixels[0].size(); ++c) x[r][c] = pixels[r][c];
  const Level2d l1 = Dwt2d(x);
  const Level2d l2 = Dwt2d(l1.approx);
  std::vector<double> out;
  for (const Matrix* band : {&l2.horizontal, &l2.vertical, &l2.diagonal}) {
    const auto f = Haralick(GlcmMeanOfAngles(QuantizeMinMax(*band, levels), levels, 1));
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

double MannWhitneyAuc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] == 1) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

std::array<std::size_t, 4> CountConfusion(const std::vector<int>& predictions,
                                          const std::vector<int>& labels) {
  std::array<std::size_t, 4> out{0, 0, 0, 0};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predictions[i] == 1;
    const bool t = labels[i] == 1;
    if (p && t) ++out[0];
    if (!p && !t) ++out[1];
    if (p && !t) ++out[2];
    if (!p && t) ++out[3];
  }
  return out;
}

double BruteForceMargin(const std::vector<std::array<double, 2>>& x,
                        const std::vector<int>& y) {
  // For a unit direction u, the best offset gives margin
  // (min_{y=+1} u.x - max_{y=-1} u.x) / 2.
  auto margin = [&](double theta) {
    const double ux = std::cos(theta);
    const double uy = std::sin(theta);
    double lo_pos = std::numeric_limits<double>::infinity();
    double hi_neg = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = ux * x[i][0] + uy * x[i][1];
      if (y[i] == 1) lo_pos = std::min(lo_pos, s);
      else hi_neg = std::max(hi_neg, s);
    }
    return (lo_pos - hi_neg) / 2.0;
  };
  const int kSteps = 36000;
  const double two_pi = 2.0 * std::acos(-1.0);
  double best_theta = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < kSteps; ++s) {
    const double t = two_pi * s / kSteps;
    const double m = margin(t);
    if (m > best) {
      best = m;
      best_theta = t;
    }
  }
  // The margin is concave in theta near its maximum; shrink a bracket.
  double step = two_pi / kSteps;
  for (int it = 0; it < 200; ++it) {
    for (const double t : {best_theta - step, best_theta + step}) {
      const double m = margin(t);
      if (m > best) {
        best = m;
        best_theta = t;
      }
    }
    step *= 0.7;
  }
  return best;
}

double CentralDifference(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> params, std::size_t k, double eps) {
  const double orig = params[k];
  params[k] = orig + eps;
  const double up = f(params);
  params[k] = orig - eps;
  const double down = f(params);
  return (up - down) / (2.0 * eps);
}

SubsetOptimum ExhaustiveSubsetSearch(
    std::size_t num_features, std::size_t max_size, double w, int d,
    const std::function<double(const std::vector<std::size_t>&)>& j) {
  SubsetOptimum out;
  out.best_j = -1.0;
  out.best_fitness = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << num_features); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < num_features; ++k)
      if (mask & (1u << k)) subset.push_back(k);
    if (subset.size() > max_size) continue;
    const double jv = j(subset);
    const double fit = jv - w * (static_cast<double>(subset.size()) - d);
    if (jv > out.best_j || (jv == out.best_j && subset.size() < out.best_by_j.size())) {
      out.best_j = jv;
      out.best_by_j = subset;
    }
    if (fit > out.best_fitness) {
      out.best_fitness = fit;
      out.best_by_fitness = subset;
    }
  }
  return out;
}

}  // namespace wct::oracle
