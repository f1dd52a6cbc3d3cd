#ifndef DOUGHSLIT_ARRAY2D_HPP
#define DOUGHSLIT_ARRAY2D_HPP

#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace doughslit {

/**
 * Dense row-major 2D array. Row index runs along x, column index along y,
 * so element (i, j) lives at i * cols + j and one row is one x-slice.
 */
template <class T>
class Array2D {
public:
    using value_type = T;

    Array2D() = default;
    Array2D(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Array2D(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        assert(data_.size() == rows_ * cols_);
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<T> flat() noexcept { return data_; }
    std::span<const T> flat() const noexcept { return data_; }
    const std::vector<T>& storage() const noexcept { return data_; }

    friend bool operator==(const Array2D&, const Array2D&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Split along columns (the y axis). An odd center column goes to the left half.
template <class T>
std::pair<Array2D<T>, Array2D<T>> split_columns(const Array2D<T>& a) {
    const std::size_t left_cols = (a.cols() + 1) / 2;
    const std::size_t right_cols = a.cols() - left_cols;
    Array2D<T> left(a.rows(), left_cols), right(a.rows(), right_cols);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < left_cols; ++j) left(i, j) = a(i, j);
        for (std::size_t j = 0; j < right_cols; ++j) right(i, j) = a(i, left_cols + j);
    }
    return {std::move(left), std::move(right)};
}

template <class T>
Array2D<T> concat_columns(const Array2D<T>& left, const Array2D<T>& right) {
    assert(left.rows() == right.rows());
    Array2D<T> out(left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
    }
    return out;
}

}  // namespace doughslit

#endif  // DOUGHSLIT_ARRAY2D_HPP
