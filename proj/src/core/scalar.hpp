#pragma once

// Type-erased exact scalar over the four supported rings, plus the dense
// square matrix the determinant engines consume. Matrices declare their ring;
// all entries must live in it.

#include "core/arith.hpp"
#include "core/laurent.hpp"
#include "core/qpoly.hpp"

#include <string>
#include <variant>
#include <vector>

namespace detlab {

enum class Ring { Integer, Rational, QPolynomial, Multivariate };

std::string ring_name(Ring r);
Ring ring_from_name(const std::string& name);

class Scalar {
public:
    Scalar() : v_(BigInt(0)) {}
    Scalar(BigInt v) : v_(std::move(v)) {}
    Scalar(BigRat v) : v_(std::move(v)) {}
    Scalar(QPoly v) : v_(std::move(v)) {}
    Scalar(MultiLaurent v) : v_(std::move(v)) {}

    bool is_integer() const { return std::holds_alternative<BigInt>(v_); }
    bool is_rational() const { return std::holds_alternative<BigRat>(v_); }
    bool is_qpoly() const { return std::holds_alternative<QPoly>(v_); }
    bool is_multi() const { return std::holds_alternative<MultiLaurent>(v_); }

    const BigInt& as_integer() const;
    const BigRat& as_rational() const;
    const QPoly& as_qpoly() const;
    const MultiLaurent& as_multi() const;

    bool operator==(const Scalar& o) const;
    std::string to_string() const;

private:
    std::variant<BigInt, BigRat, QPoly, MultiLaurent> v_;
};

template <class T>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(size_t n, T fill = T()) : n_(n), e_(n * n, fill) {}

    size_t size() const { return n_; }
    T& at(size_t i, size_t j) { return e_[i * n_ + j]; }
    const T& at(size_t i, size_t j) const { return e_[i * n_ + j]; }

    Matrix transposed() const {
        Matrix t(n_);
        for (size_t i = 0; i < n_; ++i)
            for (size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool operator==(const Matrix& o) const { return n_ == o.n_ && e_ == o.e_; }

private:
    size_t n_ = 0;
    std::vector<T> e_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<BigRat>;
using QPolyMatrix = Matrix<QPoly>;
using MultiMatrix = Matrix<MultiLaurent>;

// A built family instance: the ring tag decides which payload is populated.
struct ExactMatrix {
    Ring ring = Ring::Integer;
    IntMatrix int_m;
    RatMatrix rat_m;
    QPolyMatrix qpoly_m;
    MultiMatrix multi_m;

    size_t size() const;
    Scalar entry(size_t i, size_t j) const;
    std::string render() const;    // aligned rows for the CLI
};

} // namespace detlab
