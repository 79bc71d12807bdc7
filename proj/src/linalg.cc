/*
 * Copyright 2026 The RLBL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rlbl/linalg.h"

#include <cmath>
#include <string>

#include "rlbl/errors.h"

namespace rlbl {
namespace {

void require(bool ok, const char* op, size_t a, size_t b) {
  if (!ok) {
    throw DimError(std::string(op) + ": " + std::to_string(a) + " vs " +
                   std::to_string(b));
  }
}

}  // namespace

Vec Vec::Unit(size_t dim, size_t axis) {
  Vec v(dim);
  v[axis] = 1.0;
  return v;
}

Mat Mat::Identity(size_t dim) {
  Mat m(dim, dim);
  for (size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Vec matvec(const Mat& m, const Vec& v) {
  require(m.cols() == v.size(), "matvec", m.cols(), v.size());
  Vec out(m.rows());
  for (size_t r = 0; r < m.rows(); ++r) {
    double acc = 0.0;
    for (size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

Vec matvec_transposed(const Mat& m, const Vec& v) {
  require(m.rows() == v.size(), "matvec_transposed", m.rows(), v.size());
  Vec out(m.cols());
  for (size_t r = 0; r < m.rows(); ++r) {
    const double vr = v[r];
    for (size_t c = 0; c < m.cols(); ++c) out[c] += m(r, c) * vr;
  }
  return out;
}

Mat matmul(const Mat& a, const Mat& b) {
  require(a.cols() == b.rows(), "matmul", a.cols(), b.rows());
  Mat out(a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t k = 0; k < a.cols(); ++k) {
      const double ark = a(r, k);
      for (size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

Mat transpose(const Mat& m) {
  Mat out(m.cols(), m.rows());
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  }
  return out;
}

Mat outer(const Vec& a, const Vec& b) {
  Mat out(a.size(), b.size());
  add_outer(1.0, a, b, out);
  return out;
}

double dot(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), "dot", a.size(), b.size());
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Vec axpy(double alpha, const Vec& x, const Vec& y) {
  Vec out = y;
  axpy_inplace(alpha, x, out);
  return out;
}

Mat axpy(double alpha, const Mat& x, const Mat& y) {
  Mat out = y;
  axpy_inplace(alpha, x, out);
  return out;
}

void axpy_inplace(double alpha, const Vec& x, Vec& y) {
  require(x.size() == y.size(), "axpy", x.size(), y.size());
  for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void axpy_inplace(double alpha, const Mat& x, Mat& y) {
  require(x.rows() == y.rows() && x.cols() == y.cols(), "axpy",
          x.rows() * x.cols(), y.rows() * y.cols());
  auto xs = x.values();
  auto ys = y.values();
  for (size_t i = 0; i < ys.size(); ++i) ys[i] += alpha * xs[i];
}

void add_outer(double alpha, const Vec& a, const Vec& b, Mat& m) {
  require(m.rows() == a.size() && m.cols() == b.size(), "add_outer",
          m.rows() * m.cols(), a.size() * b.size());
  for (size_t r = 0; r < a.size(); ++r) {
    const double ar = alpha * a[r];
    for (size_t c = 0; c < b.size(); ++c) m(r, c) += ar * b[c];
  }
}

Vec operator+(const Vec& a, const Vec& b) { return axpy(1.0, b, a); }
Vec operator-(const Vec& a, const Vec& b) { return axpy(-1.0, b, a); }

Vec operator*(double alpha, const Vec& v) {
  Vec out = v;
  for (double& x : out.values()) x *= alpha;
  return out;
}

Mat operator*(double alpha, const Mat& m) {
  Mat out = m;
  for (double& x : out.values()) x *= alpha;
  return out;
}

double squared_norm(std::span<const double> values) {
  double acc = 0.0;
  for (double x : values) acc += x * x;
  return acc;
}

bool all_finite(std::span<const double> values) {
  for (double x : values) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace rlbl
