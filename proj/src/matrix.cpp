#include "linepack/matrix.hpp"
#include "linepack/error.hpp"

#include <algorithm>
#include <cmath>

namespace linepack {

std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::InconsistentVerdict: return "InconsistentVerdict";
    case ErrorCode::DegenerateComplement: return "DegenerateComplement";
    case ErrorCode::NotScalable: return "NotScalable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NormError: return "NormError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

double dot(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "dot of vectors with different lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

void axpy(double s, std::span<const double> b, std::span<double> a)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "axpy of vectors with different lengths");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += s * b[i];
}

Vec scaled(std::span<const double> a, double s)
{
    Vec out(a.begin(), a.end());
    for (auto& v : out)
        v *= s;
    return out;
}

Vec normalized(std::span<const double> a)
{
    const double n = norm(a);
    return n > 0.0 ? scaled(a, 1.0 / n) : Vec(a.begin(), a.end());
}

Vec difference(std::span<const double> a, std::span<const double> b)
{
    Vec out(a.begin(), a.end());
    axpy(-1.0, b, out);
    return out;
}

bool all_finite(std::span<const double> a)
{
    return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows)
    {
        if (r.size() != cols_)
            throw Error(ErrorCode::ShapeError, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(std::span<const Vec> rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        if (rows[r].size() != cols)
            throw Error(ErrorCode::DimensionMismatch, "row length differs from column count");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Vec Matrix::col_vec(std::size_t c) const
{
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
        {
            const double a = (*this)(i, k);
            if (a == 0.0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

Vec Matrix::operator*(std::span<const double> v) const
{
    if (cols_ != v.size())
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = dot(row(i), v);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] -= rhs.data_[i];
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += rhs.data_[i];
    return out;
}

double Matrix::max_abs() const
{
    double m = 0.0;
    for (double v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

double Matrix::frobenius() const
{
    return norm(data_);
}

} // namespace linepack
