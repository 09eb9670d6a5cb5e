#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace linepack {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
// a += s * b
void axpy(double s, std::span<const double> b, std::span<double> a);
Vec scaled(std::span<const double> a, double s);
Vec normalized(std::span<const double> a);
Vec difference(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> a);

// Dense row-major matrix. Sizes here are small (tens), so no expression
// templates or blocking.
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows)
        , cols_(cols)
        , data_(rows * cols, fill)
    {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    // Rows of the result are the given vectors.
    static Matrix from_rows(std::span<const Vec> rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vec row_vec(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
    Vec col_vec(std::size_t c) const;

    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Vec operator*(std::span<const double> v) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;

    double max_abs() const;
    double frobenius() const;
    bool finite() const { return all_finite(data_); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace linepack
