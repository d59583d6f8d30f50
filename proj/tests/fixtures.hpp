#pragma once

// Fixed matrices shared by the unit tests and the acceptance binary.

#include "ila/bcd.hpp"

namespace fixtures {

using ila::IntMatrix;
using ila::RealMatrix;
using ila::RealVector;

inline IntMatrix make(ila::Index rows, ila::Index cols, std::initializer_list<std::int64_t> values)
{
    IntMatrix m(rows, cols);
    auto it = values.begin();
    for (ila::Index i = 0; i < rows; ++i)
        for (ila::Index j = 0; j < cols; ++j)
            m(i, j) = *it++;
    return m;
}

// 2x2 system whose rounded real solution is not the integer optimum.
inline RealMatrix rounding_h() { return make(2, 2, {8, 1, 9, 2}).cast<double>(); }
inline RealVector rounding_y()
{
    RealVector y(2);
    y << 16, 17;
    return y;
}

// Five customers by six items (bread, milk, diapers, eggs, chips, beer).
inline IntMatrix transactions()
{
    return make(5, 6, {2, 1, 3, 0, 2, 5,
                       2, 1, 1, 0, 2, 4,
                       0, 0, 4, 2, 0, 2,
                       4, 2, 2, 0, 4, 8,
                       0, 0, 2, 1, 0, 1});
}

// Two representative transactions and their weights.
inline IntMatrix transaction_weights() { return make(5, 2, {1, 1, 1, 0, 0, 2, 2, 0, 0, 1}); }
inline IntMatrix transaction_patterns() { return make(2, 6, {2, 1, 1, 0, 2, 4, 0, 0, 2, 1, 0, 1}); }

// Two most frequent entries per column of transactions().
inline IntMatrix transaction_v0() { return make(2, 6, {2, 1, 2, 0, 2, 4, 0, 0, 1, 1, 0, 1}); }

// Unconstrained and boxed (U in [0,2], V in [0,4]) local solutions.
inline IntMatrix transaction_u1() { return make(5, 2, {1, 1, 1, 0, 0, 3, 2, -1, 0, 1}); }
inline IntMatrix transaction_v1() { return transaction_v0(); }
inline IntMatrix transaction_u2() { return make(5, 2, {1, 1, 1, 0, 0, 2, 2, 0, 0, 1}); }
inline IntMatrix transaction_v2() { return make(2, 6, {2, 1, 1, 0, 2, 4, 0, 0, 2, 1, 0, 1}); }

// Rank-3 5x5 matrix with factors in [1,4].
inline IntMatrix rank3()
{
    return make(5, 5, {16, 9, 7, 12, 13,
                       20, 12, 8, 14, 14,
                       22, 12, 10, 17, 19,
                       22, 14, 10, 16, 17,
                       28, 17, 13, 21, 23});
}
inline IntMatrix rank3_u() { return make(5, 3, {2, 2, 1, 2, 2, 2, 3, 3, 1, 2, 3, 2, 3, 4, 2}); }
inline IntMatrix rank3_v() { return make(3, 5, {4, 1, 1, 3, 3, 2, 2, 2, 2, 3, 4, 3, 1, 2, 1}); }

// Two starting points and the local solutions reached from them in [1,4].
inline IntMatrix rank3_start_a() { return make(3, 5, {3, 2, 4, 3, 3, 2, 1, 3, 3, 4, 2, 2, 3, 4, 1}); }
inline IntMatrix rank3_u_a() { return make(5, 3, {1, 2, 1, 3, 1, 1, 2, 3, 1, 3, 1, 1, 4, 2, 1}); }
inline IntMatrix rank3_v_a() { return make(3, 5, {4, 3, 2, 3, 3, 4, 1, 2, 3, 3, 4, 3, 1, 3, 4}); }
inline IntMatrix rank3_start_b() { return make(3, 5, {2, 3, 2, 4, 1, 3, 2, 2, 1, 2, 2, 1, 4, 3, 3}); }
inline IntMatrix rank3_u_b() { return make(5, 3, {2, 2, 1, 1, 4, 1, 3, 3, 1, 2, 4, 1, 3, 4, 2}); }
inline IntMatrix rank3_v_b() { return make(3, 5, {3, 1, 1, 3, 3, 3, 2, 1, 2, 2, 4, 3, 3, 2, 3}); }

inline bool non_increasing(const std::vector<std::int64_t>& history)
{
    for (std::size_t i = 1; i < history.size(); ++i)
        if (history[i] > history[i - 1])
            return false;
    return true;
}

} // namespace fixtures
