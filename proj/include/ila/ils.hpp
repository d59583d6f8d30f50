#pragma once

// Unconstrained integer least squares: min_x ||y - H x||^2 over integer x.

#include "ila/reduction.hpp"
#include "ila/search.hpp"

namespace ila {

template <typename Scalar>
struct IlsSolution {
    IntVector x;
    Scalar residual_sq;
};

/// Residual ||y - H x||^2 evaluated in floating point.
template <typename DerivedH, typename DerivedY>
typename DerivedH::Scalar residual_sq(const Eigen::MatrixBase<DerivedH>& h, const Eigen::MatrixBase<DerivedY>& y,
                                      const IntVector& x)
{
    using Scalar = typename DerivedH::Scalar;
    return (y - h * x.cast<Scalar>()).squaredNorm();
}

/// Map a reduced-space solution back: x = Z z.
inline IntVector recover(const IntMatrix& z, const IntVector& reduced) { return multiply_checked(z, reduced); }

template <typename DerivedH, typename DerivedY>
IlsSolution<typename DerivedH::Scalar> solve_ils(const Eigen::MatrixBase<DerivedH>& h,
                                                 const Eigen::MatrixBase<DerivedY>& y, SearchStats* stats = nullptr)
{
    using Scalar = typename DerivedH::Scalar;
    const auto rp = plll_reduce(h, y);
    const auto z = se_search(rp, std::numeric_limits<Scalar>::infinity(), stats);
    IlsSolution<Scalar> out;
    out.x = recover(rp.z, *z);
    out.residual_sq = residual_sq(h, y, out.x);
    return out;
}

} // namespace ila
