#pragma once

// Schnorr-Euchner depth-first enumeration over the reduced problem
// min_z ||y_hat - R z||^2. The same engine serves the box-constrained search
// (finite per-level bounds plus the gamma lower-bound table).

#include "ila/core.hpp"
#include "ila/reduction.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace ila {

struct SearchStats {
    std::uint64_t nodes = 0;          // candidate evaluations
    std::vector<double> beta_trace;   // every accepted improvement of beta
};

namespace detail {

// Zigzag cursor for a single level: emits the integers of [lower, upper] in
// order of nondecreasing distance to the center c.
struct LevelCursor {
    std::int64_t lower = std::numeric_limits<std::int64_t>::min();
    std::int64_t upper = std::numeric_limits<std::int64_t>::max();
    std::int64_t below = 0;
    std::int64_t above = 0;
    bool prefer_above = true;

    template <typename Scalar>
    std::int64_t start(Scalar c)
    {
        std::int64_t z0;
        if (c <= Scalar(lower))
            z0 = lower;
        else if (c >= Scalar(upper))
            z0 = upper;
        else
            z0 = std::clamp(round_to_int(c), lower, upper);
        below = z0 - 1;
        above = z0 + 1;
        prefer_above = c >= Scalar(z0);
        return z0;
    }

    std::optional<std::int64_t> next()
    {
        const bool has_below = below >= lower;
        const bool has_above = above <= upper;
        if (!has_below && !has_above)
            return std::nullopt;
        if (has_above && (!has_below || prefer_above)) {
            prefer_above = false;
            return above++;
        }
        prefer_above = true;
        return below--;
    }
};

// Per-level state of one search invocation.
template <typename Scalar>
struct SearchState {
    std::vector<LevelCursor> cursor;
    Vector<Scalar> center;   // conditional centers c_k
    Vector<Scalar> partial;  // partial[k] = sum_{i>k} r_ii^2 (z_i - c_i)^2
    IntVector z;
    IntVector best;
    Scalar beta;
    bool found = false;

    explicit SearchState(Index n, Scalar beta0)
        : cursor(std::size_t(n)), center(n), partial(n), z(n), best(n), beta(beta0)
    {
    }
};

template <typename Scalar>
Scalar conditional_center(const Matrix<Scalar>& r, const Vector<Scalar>& y_hat, const IntVector& z, Index k)
{
    Scalar s = y_hat(k);
    for (Index j = k + 1; j < r.cols(); ++j)
        s -= r(k, j) * Scalar(z(j));
    return s / r(k, k);
}

// Returns the minimizer of ||y_hat - R z||^2 with lower <= z <= upper found
// strictly inside beta0, pruning level k with beta - gamma(k).
template <typename Scalar>
std::optional<IntVector> enumerate(const Matrix<Scalar>& r, const Vector<Scalar>& y_hat, const IntVector* lower,
                                   const IntVector* upper, const Vector<Scalar>* gamma, Scalar beta0,
                                   SearchStats* stats)
{
    const Index n = r.cols();
    SearchState<Scalar> st(n, beta0);
    auto gamma_at = [&](Index k) { return gamma ? (*gamma)(k) : Scalar(0); };

    Index k = n - 1;
    if (lower)
        for (Index i = 0; i < n; ++i) {
            st.cursor[std::size_t(i)].lower = (*lower)(i);
            st.cursor[std::size_t(i)].upper = (*upper)(i);
        }
    st.partial(k) = 0;
    st.center(k) = y_hat(k) / r(k, k);
    st.z(k) = st.cursor[std::size_t(k)].start(st.center(k));

    std::uint64_t nodes = 0;
    for (;;) {
        ++nodes;
        const Scalar step = r(k, k) * (Scalar(st.z(k)) - st.center(k));
        const Scalar dist = st.partial(k) + step * step;
        bool ascend = true;
        if (dist < st.beta - gamma_at(k)) {
            if (k > 0) {
                --k;
                st.partial(k) = dist;
                st.center(k) = conditional_center(r, y_hat, st.z, k);
                st.z(k) = st.cursor[std::size_t(k)].start(st.center(k));
                ascend = false;
            } else {
                st.best = st.z;
                st.beta = dist;
                st.found = true;
                if (stats)
                    stats->beta_trace.push_back(double(dist));
            }
        }
        if (!ascend)
            continue;
        // Move up past every level whose candidates are exhausted.
        std::optional<std::int64_t> candidate;
        do {
            if (++k == n)
                break;
            candidate = st.cursor[std::size_t(k)].next();
        } while (!candidate);
        if (k == n)
            break;
        st.z(k) = *candidate;
    }
    if (stats)
        stats->nodes += nodes;
    if (!st.found)
        return std::nullopt;
    return st.best;
}

} // namespace detail

/// Global minimizer of ||y_hat - R z||^2 over all integer vectors z.
///
/// With beta0 = +infinity (the default) a minimizer always exists; with a
/// finite beta0 the result is empty when no integer point lies strictly
/// inside the initial ellipsoid.
template <typename Scalar>
std::optional<IntVector> se_search(const ReducedProblem<Scalar>& rp,
                                   Scalar beta0 = std::numeric_limits<Scalar>::infinity(),
                                   SearchStats* stats = nullptr)
{
    const Index n = rp.size();
    if (n == 1) {
        if (stats)
            ++stats->nodes;
        IntVector z(1);
        z(0) = round_to_int(rp.y_hat(0) / rp.r(0, 0));
        const Scalar d = rp.y_hat(0) - rp.r(0, 0) * Scalar(z(0));
        if (!(d * d < beta0))
            return std::nullopt;
        if (stats)
            stats->beta_trace.push_back(double(d * d));
        return z;
    }
    return detail::enumerate<Scalar>(rp.r, rp.y_hat, nullptr, nullptr, nullptr, beta0, stats);
}

} // namespace ila
