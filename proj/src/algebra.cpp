#include "ptlab/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace ptlab {

namespace {

void require_finite(const std::vector<Complex>& values, const char* what) {
    for (const Complex& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("matrix: entry count does not match shape");
    }
    require_finite(entries_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = Complex(1.0, 0.0);
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) {
        throw std::invalid_argument("matrix multiply: dimension mismatch");
    }
    Matrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = at(r, k);
            if (a == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t c = 0; c < o.cols_; ++c) {
                out.at(r, c) += a * o.at(k, c);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw std::invalid_argument("matrix add: dimension mismatch");
    }
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out.entries_[i] = entries_[i] + o.entries_[i];
    }
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    return *this + o.scaled(Complex(-1.0, 0.0));
}

Matrix Matrix::scaled(Complex factor) const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out.entries_[i] = entries_[i] * factor;
    }
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out.at(c, r) = std::conj(at(r, c));
        }
    }
    return out;
}

bool Matrix::is_hermitian(double tol) const {
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool Matrix::is_involutory(double tol) const {
    if (rows_ != cols_) {
        return false;
    }
    return ((*this) * (*this)).max_abs_diff(identity(rows_)) <= tol;
}

double Matrix::max_abs_diff(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw std::invalid_argument("matrix compare: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        worst = std::max(worst, std::abs(entries_[i] - o.entries_[i]));
    }
    return worst;
}

StateVector::StateVector(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
    require_finite(amplitudes_, "state vector");
    double norm2 = 0.0;
    for (const Complex& a : amplitudes_) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kTol) {
        throw std::invalid_argument("state vector: squared norm is not 1");
    }
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex f = a.at(ar, ac);
            if (f == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out.at(ar * b.rows() + br, ac * b.cols() + bc) = f * b.at(br, bc);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> apply(const Matrix& op, const std::vector<Complex>& v) {
    if (op.cols() != v.size()) {
        throw std::invalid_argument("apply: dimension mismatch");
    }
    std::vector<Complex> out(op.rows(), Complex(0.0, 0.0));
    for (std::size_t r = 0; r < op.rows(); ++r) {
        Complex acc(0.0, 0.0);
        for (std::size_t c = 0; c < op.cols(); ++c) {
            acc += op.at(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

std::vector<Complex> apply(const Matrix& op, const StateVector& v) {
    return apply(op, v.amplitudes());
}

Matrix projector(const Matrix& obs, int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw std::invalid_argument("projector: outcome must be +1 or -1");
    }
    if (!obs.is_hermitian()) {
        throw std::invalid_argument("projector: observable is not Hermitian");
    }
    if (!obs.is_involutory()) {
        throw std::invalid_argument("projector: observable is not an involution");
    }
    return (Matrix::identity(obs.rows()) + obs.scaled(Complex(outcome, 0.0)))
        .scaled(Complex(0.5, 0.0));
}

Complex expectation(const StateVector& v, const Matrix& op) {
    const std::vector<Complex> w = apply(op, v);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += std::conj(v.amplitude(i)) * w[i];
    }
    return acc;
}

Matrix pauli_x() {
    return Matrix(2, 2, {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)});
}

Matrix pauli_y() {
    return Matrix(2, 2, {Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)});
}

Matrix pauli_z() {
    return Matrix(2, 2, {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)});
}

} // namespace ptlab
