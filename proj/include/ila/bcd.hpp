#pragma once

// Integer low-rank approximation A ~ U V by block coordinate descent:
// alternately solve for every row of U with V fixed and every column of V with
// U fixed, each as an exact (optionally boxed) integer least squares problem.

#include "ila/box.hpp"
#include "ila/core.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ila {

/// ||A - U V||_F^2 in exact integer arithmetic. Throws OverflowError.
std::int64_t residual(const IntMatrix& a, const IntMatrix& u, const IntMatrix& v);

/// Optimal U for a V with orthonormal rows (V V^T = I): round(A V^T).
/// Throws NotOrthonormalError otherwise.
IntMatrix round_project_orthonormal(const IntMatrix& a, const IntMatrix& v);

/// Round (then clamp to `box`, if any) the real least-squares solution.
IntVector rounded_real_ls(const RealMatrix& h, const RealVector& y, const std::optional<BoxConstraint>& box = {});

enum class SubproblemMethod {
    integer_ls,       // exact ILS / ILSb per row or column
    rounded_real_ls,  // baseline: rounded real least squares
};

/// Outcome of one half-sweep.
struct FactorUpdate {
    IntMatrix factor;
    std::vector<std::uint64_t> nodes;  // search nodes per subproblem
};

/// Each row U(i,:) minimizes ||A(i,:) - u V|| over integer u (within `box`,
/// applied entrywise, when given). Throws RankDeficientError when rank(V) < k.
FactorUpdate update_u(const IntMatrix& a, const IntMatrix& v, const std::optional<Interval>& box,
                      SubproblemMethod method = SubproblemMethod::integer_ls);

/// Column-wise mirror of update_u.
FactorUpdate update_v(const IntMatrix& a, const IntMatrix& u, const std::optional<Interval>& box,
                      SubproblemMethod method = SubproblemMethod::integer_ls);

/// Row r of the result holds, per column of A, the r-th most frequent entry.
///
/// Values are ranked by frequency. Among the most frequent values of a column
/// the first row takes the one closest to the column's (lower) median; every
/// other tie goes to the smaller value. Columns with fewer than k distinct
/// values are padded with (most frequent value + r) for row r.
IntMatrix init_most_frequent(const IntMatrix& a, Index k);

/// rows x cols matrix with i.i.d. entries uniform over `range`.
IntMatrix init_random(Index rows, Index cols, Interval range, std::uint64_t seed);

struct InitMostFrequent {};
struct InitRandom {
    std::uint64_t seed = 0;
    std::optional<Interval> range;  // defaults to the initialized factor's box
};
struct InitExplicit {
    IntMatrix factor;
};
using Initializer = std::variant<InitMostFrequent, InitRandom, InitExplicit>;

enum class UpdateOrder {
    u_first,  // initialize V, update U then V
    v_first,  // initialize U, update V then U
};

struct FactorizationConfig {
    Index rank = 1;
    int max_sweeps = 100;
    std::optional<Interval> box_u;
    std::optional<Interval> box_v;
    Initializer init = InitMostFrequent{};
    UpdateOrder order = UpdateOrder::u_first;
    SubproblemMethod method = SubproblemMethod::integer_ls;
};

enum class FactorizationStatus { converged, max_sweeps, rank_deficient_failure };

std::string to_string(FactorizationStatus status);

struct FactorizationResult {
    IntMatrix u;
    IntMatrix v;
    std::vector<std::int64_t> residual_history;  // one entry per completed half-sweep
    FactorizationStatus status = FactorizationStatus::max_sweeps;
    int sweeps = 0;
    std::vector<std::vector<std::uint64_t>> nodes;  // per half-sweep, per subproblem
    std::int64_t final_residual = 0;                 // residual(A, u, v)
};

/// Alternate exact block updates until a full sweep leaves U and V unchanged,
/// the residual reaches zero, or max_sweeps is hit. A rank-deficient factor
/// stops the run with the last consistent iterate and status
/// rank_deficient_failure.
FactorizationResult bcd_factorize(const IntMatrix& a, const FactorizationConfig& config);

} // namespace ila
