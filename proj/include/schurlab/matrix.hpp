#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace schurlab {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

/// Dense complex matrix, row-major.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<cplx> data);
    Mat(std::initializer_list<std::initializer_list<cplx>> rows);

    static Mat identity(std::size_t n);
    static Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
    static Mat constant(std::size_t rows, std::size_t cols, cplx value);
    static Mat diagonal(std::span<const cplx> d);
    static Mat diagonal(std::span<const double> d);
    static Mat from_columns(std::span<const Vec> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    Vec col(std::size_t j) const;
    void set_col(std::size_t j, std::span<const cplx> v);
    std::vector<Vec> columns() const;

    /// Columns [first, first + count).
    Mat col_block(std::size_t first, std::size_t count) const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

    Mat adjoint() const;
    Mat transpose() const;
    Mat conj() const;

    Mat& operator+=(const Mat& other);
    Mat& operator-=(const Mat& other);
    Mat& operator*=(cplx s);

    bool all_finite() const noexcept;

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator-(Mat a);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cplx s, Mat a);
Mat operator*(Mat a, cplx s);
Vec operator*(const Mat& a, std::span<const cplx> x);

double frobenius_norm(const Mat& a) noexcept;
double max_abs(const Mat& a) noexcept;
/// ||A - A*||_F
double hermitian_defect(const Mat& a);

double norm2(std::span<const cplx> v) noexcept;
/// <x, y> = sum conj(x_i) y_i
cplx dot(std::span<const cplx> x, std::span<const cplx> y) noexcept;

/// Columns of a, each stacked next to the columns of b.
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

}  // namespace schurlab
