#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace magnomech {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Sized for the 3x3 effective
// Hamiltonian and the 6x6 drift matrix; no large-n ambitions.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const {
        ComplexMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t k = 0; k < n_; ++k) {
                const Complex a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
            }
        }
        return out;
    }

    void add_to_diagonal(Complex c) {
        for (std::size_t i = 0; i < n_; ++i) (*this)(i, i) += c;
    }

    double max_abs_imag() const {
        double m = 0.0;
        for (const Complex& c : data_) m = std::max(m, std::abs(c.imag()));
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& c : data_) m = std::max(m, std::abs(c));
        return m;
    }

private:
    std::size_t n_;
    std::vector<Complex> data_;
};

} // namespace magnomech
