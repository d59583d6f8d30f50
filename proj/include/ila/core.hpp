#pragma once

// Dense types, error types and overflow-checked integer arithmetic shared by
// every solver component.

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ila {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealMatrix = Matrix<double>;
using RealVector = Vector<double>;
using IntMatrix = Matrix<std::int64_t>;
using IntVector = Vector<std::int64_t>;

/// Thrown when a matrix that must have full column rank does not
/// (numerically: some |r_ii| of its QR factor falls under the tolerance).
class RankDeficientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyBoxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotOrthonormalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("integer overflow in addition");
    return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_sub_overflow(a, b, &out))
        throw OverflowError("integer overflow in subtraction");
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("integer overflow in multiplication");
    return out;
}

/// Round half away from zero, then convert to a 64-bit integer.
template <typename Scalar>
std::int64_t round_to_int(Scalar value)
{
    // 2^62 leaves headroom for the +-1 steps taken by the enumerators.
    constexpr Scalar limit = Scalar(4611686018427387904.0L);
    const Scalar r = std::round(value);
    if (!(std::abs(r) < limit))
        throw OverflowError("value out of 64-bit integer range: " + std::to_string(double(value)));
    return static_cast<std::int64_t>(r);
}

/// Exact integer product with overflow detection.
inline IntMatrix multiply_checked(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply_checked: dimension mismatch");
    IntMatrix out(a.rows(), b.cols());
    for (Index j = 0; j < b.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            std::int64_t acc = 0;
            for (Index p = 0; p < a.cols(); ++p)
                acc = checked_add(acc, checked_mul(a(i, p), b(p, j)));
            out(i, j) = acc;
        }
    }
    return out;
}

inline IntVector multiply_checked(const IntMatrix& a, const IntVector& x)
{
    return multiply_checked(a, IntMatrix(x)).col(0);
}

} // namespace ila
