#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace unicl {

/// Row-major matrix of observations, n rows by d columns. Immutable by
/// convention once filled; cheap to copy, safe to share read-only.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t rows, std::size_t cols)
        : cols_(cols), data_(rows * cols, 0.0) {}
    Dataset(std::vector<double> data, std::size_t cols) : cols_(cols), data_(std::move(data)) {
        if (cols_ == 0 || data_.size() % cols_ != 0)
            throw std::invalid_argument("Dataset: data size is not a multiple of the column count");
    }

    std::size_t rows() const { return cols_ ? data_.size() / cols_ : 0; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    /// Copy of rows [begin, end).
    Dataset slice(std::size_t begin, std::size_t end) const {
        Dataset out(end - begin, cols_);
        std::copy(data_.begin() + static_cast<std::ptrdiff_t>(begin * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>(end * cols_), out.data_.begin());
        return out;
    }

    static Dataset concat(const Dataset& a, const Dataset& b) {
        if (a.cols() != b.cols())
            throw std::invalid_argument("Dataset::concat: column counts differ");
        std::vector<double> d;
        d.reserve(a.data_.size() + b.data_.size());
        d.insert(d.end(), a.data_.begin(), a.data_.end());
        d.insert(d.end(), b.data_.begin(), b.data_.end());
        return Dataset(std::move(d), a.cols());
    }

    const std::vector<double>& raw() const { return data_; }

private:
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace unicl
