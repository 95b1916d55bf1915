// Copyright 2026 The thermoqbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace thermoqbe {

/// Uniformly spaced closed interval [lo, hi] with n nodes.
class UniformAxis {
public:
    UniformAxis() = default;
    UniformAxis(double lo, double hi, std::size_t n);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return n_; }
    double step() const noexcept { return step_; }
    /// Weighted form so that mirrored nodes of a symmetric axis are exact negatives.
    double operator[](std::size_t i) const noexcept
    {
        const auto k = static_cast<double>(i);
        const auto m = static_cast<double>(n_ - 1);
        return (lo_ * (m - k) + hi_ * k) / m;
    }

    /// Index of the node closest to value (clamped to the axis).
    std::size_t nearest(double value) const noexcept;
    std::vector<double> nodes() const;

    /// Same interval with (n-1)*factor+1 nodes; every old node is kept.
    UniformAxis refined(std::size_t factor) const;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
    std::size_t n_ = 0;
    double step_ = 0.0;
};

/// Dense row-major field over two axes, indexed (i, j).
class Field2D {
public:
    Field2D() = default;
    Field2D(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    std::vector<double> column(std::size_t j) const;
    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool operator==(const Field2D&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Dense field over (p, x, t), t fastest.
class Field3D {
public:
    Field3D() = default;
    Field3D(std::size_t np, std::size_t nx, std::size_t nt, double fill = 0.0)
        : np_(np), nx_(nx), nt_(nt), data_(np * nx * nt, fill) {}

    std::size_t np() const noexcept { return np_; }
    std::size_t nx() const noexcept { return nx_; }
    std::size_t nt() const noexcept { return nt_; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return data_[(i * nx_ + j) * nt_ + k]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return data_[(i * nx_ + j) * nt_ + k]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }
    bool same_shape(const Field3D& o) const noexcept { return np_ == o.np_ && nx_ == o.nx_ && nt_ == o.nt_; }

    bool operator==(const Field3D&) const = default;

private:
    std::size_t np_ = 0;
    std::size_t nx_ = 0;
    std::size_t nt_ = 0;
    std::vector<double> data_;
};

} // namespace thermoqbe
