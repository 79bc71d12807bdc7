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

#ifndef RLBL_LINALG_H_
#define RLBL_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

namespace rlbl {

// Dense real vector of runtime dimension.
class Vec {
 public:
  Vec() = default;
  explicit Vec(size_t dim, double fill = 0.0) : values_(dim, fill) {}
  explicit Vec(std::vector<double> values) : values_(std::move(values)) {}

  size_t size() const { return values_.size(); }
  double& operator[](size_t i) { return values_[i]; }
  double operator[](size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool operator==(const Vec&) const = default;

  static Vec Unit(size_t dim, size_t axis);

 private:
  std::vector<double> values_;
};

// Dense rows x cols real matrix, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  double& operator()(size_t r, size_t c) { return values_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool operator==(const Mat&) const = default;

  static Mat Identity(size_t dim);

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
};

// All operations throw DimError on shape mismatch.
Vec matvec(const Mat& m, const Vec& v);
// m^T v without materializing the transpose.
Vec matvec_transposed(const Mat& m, const Vec& v);
Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
Mat outer(const Vec& a, const Vec& b);
double dot(const Vec& a, const Vec& b);

// y + alpha * x.
Vec axpy(double alpha, const Vec& x, const Vec& y);
Mat axpy(double alpha, const Mat& x, const Mat& y);
// In-place y += alpha * x.
void axpy_inplace(double alpha, const Vec& x, Vec& y);
void axpy_inplace(double alpha, const Mat& x, Mat& y);
// In-place m += alpha * a b^T.
void add_outer(double alpha, const Vec& a, const Vec& b, Mat& m);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double alpha, const Vec& v);
Mat operator*(double alpha, const Mat& m);

double squared_norm(std::span<const double> values);
bool all_finite(std::span<const double> values);

}  // namespace rlbl

#endif  // RLBL_LINALG_H_
