#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ptlab {

using Complex = std::complex<double>;

// Absolute tolerance for all floating comparisons. The built-in operators
// have exact entries (0, +-1, +-i, +-1/2) and dimensions never exceed 16,
// so nothing accumulates past this.
inline constexpr double kTol = 1e-12;

// Dense row-major complex matrix. Constructors reject non-finite entries.
class Matrix {
  public:
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }
    const std::vector<Complex>& entries() const { return entries_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(Complex factor) const;
    Matrix adjoint() const;

    bool is_hermitian(double tol = kTol) const;
    // M * M == I within tol.
    bool is_involutory(double tol = kTol) const;
    double max_abs_diff(const Matrix& o) const;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

// Normalized amplitude vector; squared norm must be within kTol of 1.
class StateVector {
  public:
    explicit StateVector(std::vector<Complex> amplitudes);

    std::size_t dim() const { return amplitudes_.size(); }
    const Complex& amplitude(std::size_t i) const { return amplitudes_[i]; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }

  private:
    std::vector<Complex> amplitudes_;
};

// Kronecker product, a-index major / b-index minor.
Matrix tensor(const Matrix& a, const Matrix& b);

// op * v; the result is not renormalized (eigen-equation checks compare raw
// vectors).
std::vector<Complex> apply(const Matrix& op, const std::vector<Complex>& v);
std::vector<Complex> apply(const Matrix& op, const StateVector& v);

// (I + outcome * obs) / 2 for a Hermitian involution obs and outcome +-1.
Matrix projector(const Matrix& obs, int outcome);

// <v|op|v>.
Complex expectation(const StateVector& v, const Matrix& op);

// Pauli matrices over a 2-dim factor with basis index 0 = (H or u),
// 1 = (V or d).
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

} // namespace ptlab
