#pragma once

#include "vertexcalc/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace vcalc {

// Dense exact matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::vector<Rational> operator*(const Matrix& a, const std::vector<Rational>& x);

std::size_t rank(Matrix m);
Rational determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);

struct LinearSolution {
    enum class Kind { unique, inconsistent, underdetermined } kind;
    std::vector<Rational> x;
};

// Solves A x = b by exact row reduction.
LinearSolution solve(Matrix a, std::vector<Rational> b);

} // namespace vcalc
