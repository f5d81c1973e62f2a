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

#include "top/ndmath.h"

#include <cmath>
#include <numbers>

#include "top/errors.h"

namespace top {

Mat::Mat(size_t rows, size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Mat::Mat(size_t rows, size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  TOP_CHECK(data_.size() == rows_ * cols_,
            "Mat: data length must equal rows * cols");
}

Mat Mat::FromRow(std::span<const double> row) {
  return Mat(1, row.size(), std::vector<double>(row.begin(), row.end()));
}

bool Mat::AllFinite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Mat ConcatCols(const Mat& a, const Mat& b) {
  TOP_CHECK(a.rows() == b.rows(), "ConcatCols: row counts differ");
  Mat out(a.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    auto ra = a.row(r);
    auto rb = b.row(r);
    std::copy(ra.begin(), ra.end(), dst.begin());
    std::copy(rb.begin(), rb.end(), dst.begin() + a.cols());
  }
  return out;
}

uint64_t MixSeed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(uint64_t seed) : seed_(seed), engine_(seed) {}

double SeededRng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::Normal() {
  // 1 - U lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

size_t SeededRng::UniformIndex(size_t n) {
  TOP_CHECK(n > 0, "UniformIndex: n must be positive");
  const uint64_t bound = static_cast<uint64_t>(n);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<size_t>(x % bound);
}

SeededRng SeededRng::Fork(uint64_t tag) const {
  return SeededRng(MixSeed(seed_ ^ MixSeed(tag)));
}

}  // namespace top
