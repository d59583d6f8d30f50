#pragma once

// Experiment drivers: residual distribution over random initial factors, and
// exact-ILS BCD against the rounded real least-squares baseline.

#include "ila/bcd.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace ila {

/// A = U V with U (m x rank) and V (rank x n) drawn uniformly from `box`.
IntMatrix random_low_rank(Index m, Index n, Index rank, Interval box, std::uint64_t seed);

/// Seed used for the random initial factor of trial `trial`.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

/// Configuration of a single boxed trial; replaying it through
/// bcd_factorize reproduces the trial exactly.
FactorizationConfig trial_config(Index rank, Interval box, std::uint64_t seed, int max_sweeps,
                                 SubproblemMethod method = SubproblemMethod::integer_ls);

struct TrialOutcome {
    FactorizationStatus status = FactorizationStatus::max_sweeps;
    std::int64_t residual = 0;
    int sweeps = 0;

    bool failed() const { return status == FactorizationStatus::rank_deficient_failure; }
};

TrialOutcome outcome_of(const FactorizationResult& result);

struct DistributionOptions {
    Index n = 5;
    Index rank = 3;
    Interval box{1, 4};
    int trials = 100;
    std::uint64_t seed = 1;
    int max_sweeps = 100;
    std::optional<IntMatrix> matrix;  // fixed A; otherwise random n x n of the given rank
};

struct DistributionTrial {
    int trial = 0;
    std::uint64_t seed = 0;
    TrialOutcome outcome;
};

struct DistributionReport {
    IntMatrix a;
    DistributionOptions options;
    std::vector<DistributionTrial> trials;

    int failures() const;
};

DistributionReport run_distribution_experiment(const DistributionOptions& options);
void write_distribution_csv(std::ostream& out, const DistributionReport& report);

struct CompareOptions {
    Index n = 20;
    std::optional<Index> rank;  // defaults to n / 5
    Interval box{1, 4};
    int trials = 20;
    std::uint64_t seed = 1;
    int max_sweeps = 100;
    bool clamp_baseline = false;  // baseline starts in the box but rounds without clamping by default
};

struct CompareTrial {
    int trial = 0;
    std::uint64_t seed = 0;
    TrialOutcome ilsb;
    TrialOutcome baseline;
};

struct MethodSummary {
    double mean_sweeps = 0;
    std::int64_t min_residual = 0;
    std::int64_t max_residual = 0;
    double average = 0;
    int failures = 0;
};

struct CompareReport {
    IntMatrix a;
    Index rank = 0;
    CompareOptions options;
    std::vector<CompareTrial> trials;
    MethodSummary ilsb;
    MethodSummary baseline;
    double percent_superior = 0;           // ILSb strictly below the baseline
    double percent_superior_or_equal = 0;
};

CompareReport run_compare_experiment(const CompareOptions& options);
void write_compare_csv(std::ostream& out, const CompareReport& report);

} // namespace ila
