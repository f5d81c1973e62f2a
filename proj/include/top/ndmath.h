// Copyright 2026 The TOP-RL Authors. All rights reserved.
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

// Dense row-major matrices and a platform-stable seeded random source.

#ifndef TOP_NDMATH_H_
#define TOP_NDMATH_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace top {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMajorMatrix>;
using ConstMatMap = Eigen::Map<const RowMajorMatrix>;

// Row-major matrix of doubles. Batches are stored one sample per row.
class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols, double fill = 0.0);
  Mat(size_t rows, size_t cols, std::vector<double> data);

  static Mat FromRow(std::span<const double> row);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  MatMap map() { return MatMap(data_.data(), rows_, cols_); }
  ConstMatMap map() const { return ConstMatMap(data_.data(), rows_, cols_); }

  bool AllFinite() const;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Horizontal concatenation [a | b]; row counts must agree.
Mat ConcatCols(const Mat& a, const Mat& b);

// Deterministic random source. The engine is mt19937_64, whose output
// sequence is fixed by the standard; the conversions to real-valued
// draws are done here so they do not depend on the standard library.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed);

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Standard normal via Box-Muller (one draw per call, no cached spare).
  double Normal();
  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }
  // Unbiased integer in [0, n).
  size_t UniformIndex(size_t n);

  // Independent stream derived from this rng's seed and a tag; does not
  // advance this rng.
  SeededRng Fork(uint64_t tag) const;

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
uint64_t MixSeed(uint64_t x);

}  // namespace top

#endif  // TOP_NDMATH_H_
