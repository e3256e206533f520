#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gaussfact/modular.hpp"
#include "gaussfact/phase.hpp"

namespace gaussfact {

// Truncation order used throughout when none is given (15 summands).
inline constexpr int kDefaultTruncation = 14;
// Above this truncation the sequence needs more than 20 factorization pulses.
inline constexpr int kTruncationSoftLimit = 19;
// Discrimination line between factor-like and background totals.
inline constexpr double kDefaultThreshold = 0.70710678118654752440;

/**
 * Unreduced coefficient of the k-th factorization pulse phase: the signed
 * integer c such that the phase is pi * c / l before any reduction. The
 * sign alternates with k and the magnitude grows linearly, so this value is
 * only useful for display and small-k checks; schedule construction goes
 * through pulse_phase(), which never forms the full product.
 */
inline std::int64_t phase_coefficient(int k, std::uint64_t n)
{
    if (k < 1)
        throw std::domain_error("phase_coefficient: k must be >= 1");
    const auto magnitude = static_cast<unsigned __int128>(n) *
                           (2 * static_cast<std::uint64_t>(k) - 1);
    constexpr auto max_mag = static_cast<unsigned __int128>(INT64_MAX);
    if (magnitude > max_mag)
        throw std::overflow_error("phase_coefficient: coefficient exceeds 64 bits; "
                                  "use pulse_phase for reduced arithmetic");
    const auto value = static_cast<std::int64_t>(magnitude);
    return (k % 2 == 0) ? value : -value;
}

/**
 * Laser phase of the k-th factorization pulse for trial factor l, reduced
 * exactly: the numerator (-1)^k n (2k-1) is taken modulo 2l in integer
 * arithmetic and divided by l only symbolically. No floating-point modulo
 * of large arguments ever happens, which matters once n (2k-1) exceeds the
 * 53-bit mantissa.
 */
inline RationalAngle pulse_phase(int k, std::uint64_t n, std::uint64_t l)
{
    if (l == 0)
        throw std::domain_error("pulse_phase: l must be >= 1");
    if (l > (std::uint64_t{1} << 62))
        throw std::domain_error("pulse_phase: l too large to reduce mod 2l");
    if (k < 0)
        throw std::domain_error("pulse_phase: k must be >= 0");
    if (k == 0)
        return {0, l};
    const std::uint64_t two_l = 2 * l;
    const std::uint64_t odd = (2 * static_cast<std::uint64_t>(k) - 1) % two_l;
    std::uint64_t r = mulmod(n % two_l, odd, two_l);
    if (k % 2 == 1)
        r = (two_l - r) % two_l;
    return {r, l};
}

// Ideal interference signal after the sequence with m+1 pi-pulses:
// cos(2 pi ((m^2 n) mod l) / l), the residue computed in exact integers.
inline double interference_signal_ideal(std::uint64_t n, std::uint64_t l, std::uint64_t m)
{
    if (l == 0)
        throw std::domain_error("interference_signal_ideal: l must be >= 1");
    const std::uint64_t mr = m % l;
    const std::uint64_t r = mulmod(mulmod(mr, mr, l), n % l, l);
    if (r == 0)
        return 1.0;
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(l));
}

// Normalized truncated sum of the interference signals, m = 0..truncation.
// Equals exactly 1 when l divides n (every summand is 1).
inline double gauss_sum(std::uint64_t n, std::uint64_t l, int truncation)
{
    if (truncation < 0)
        throw std::domain_error("gauss_sum: truncation must be >= 0");
    double acc = 0.0;
    for (int m = 0; m <= truncation; ++m)
        acc += interference_signal_ideal(n, l, static_cast<std::uint64_t>(m));
    return acc / static_cast<double>(truncation + 1);
}

/// Trial-factor enumeration strategy: all primes up to floor(sqrt(n)), or a
/// contiguous integer range.
struct TrialSpec {
    enum class Kind { Primes, Range };
    Kind kind = Kind::Range;
    std::uint64_t l_min = 2;
    std::uint64_t l_max = 200;

    static TrialSpec primes() { return {Kind::Primes, 0, 0}; }
    static TrialSpec range(std::uint64_t lo, std::uint64_t hi) { return {Kind::Range, lo, hi}; }
};

inline std::vector<std::uint64_t> trial_factors(std::uint64_t n, const TrialSpec& strategy)
{
    if (n < 2)
        throw std::domain_error("trial_factors: n must be >= 2");
    if (strategy.kind == TrialSpec::Kind::Primes)
        return primes_up_to(integer_sqrt(n));
    if (strategy.l_min < 1 || strategy.l_min > strategy.l_max)
        throw std::domain_error("trial_factors: need 1 <= l_min <= l_max");
    std::vector<std::uint64_t> out;
    out.reserve(strategy.l_max - strategy.l_min + 1);
    for (std::uint64_t l = strategy.l_min; l <= strategy.l_max; ++l)
        out.push_back(l);
    return out;
}

/// One factoring instance: the number, the truncation order and the ordered
/// trial set.
struct FactoringProblem {
    std::uint64_t n = 0;
    int truncation = kDefaultTruncation;
    std::vector<std::uint64_t> trial_set;

    void validate() const
    {
        if (n < 2)
            throw std::domain_error("FactoringProblem: n must be >= 2");
        if (truncation < 0)
            throw std::domain_error("FactoringProblem: truncation must be >= 0");
        std::uint64_t prev = 0;
        for (const std::uint64_t l : trial_set) {
            if (l < 1)
                throw std::domain_error("FactoringProblem: trial factors must be >= 1");
            if (l <= prev)
                throw std::domain_error("FactoringProblem: trial set must be strictly increasing");
            prev = l;
        }
    }
};

/// Signals and total for one trial factor.
struct GaussSumResult {
    std::uint64_t l = 1;
    std::vector<double> signals;   // c_m for m = 0..truncation
    double total = 0.0;            // arithmetic mean of signals
    bool is_divisor = false;       // ground truth, n mod l == 0
    bool classified_factor = false;
};

inline GaussSumResult evaluate_trial(std::uint64_t n, std::uint64_t l, int truncation)
{
    if (l == 0)
        throw std::domain_error("evaluate_trial: l must be >= 1");
    if (truncation < 0)
        throw std::domain_error("evaluate_trial: truncation must be >= 0");
    GaussSumResult result;
    result.l = l;
    result.is_divisor = (n % l == 0);
    result.signals.reserve(static_cast<std::size_t>(truncation) + 1);
    double acc = 0.0;
    for (int m = 0; m <= truncation; ++m) {
        const double c = interference_signal_ideal(n, l, static_cast<std::uint64_t>(m));
        result.signals.push_back(c);
        acc += c;
    }
    result.total = acc / static_cast<double>(truncation + 1);
    return result;
}

struct Classification {
    std::vector<std::uint64_t> factors;
    std::vector<std::uint64_t> non_factors;
};

// Thresholds |total| and partitions the trial set. l = 1 is a divisor of
// everything, so it is dropped from both lists unless include_trivial is set.
inline Classification classify(std::vector<GaussSumResult>& results, double threshold,
                               bool include_trivial = false)
{
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::domain_error("classify: threshold must lie in (0, 1)");
    Classification out;
    for (auto& r : results) {
        r.classified_factor = std::abs(r.total) >= threshold;
        if (r.l == 1 && !include_trivial)
            continue;
        (r.classified_factor ? out.factors : out.non_factors).push_back(r.l);
    }
    return out;
}

// Visibility of the factorization pattern: the difference over the sum of
// the mean absolute totals at divisors and at non-divisors.
inline double contrast(const std::vector<GaussSumResult>& results)
{
    double div_sum = 0.0, other_sum = 0.0;
    std::size_t div_count = 0, other_count = 0;
    for (const auto& r : results) {
        if (r.is_divisor) {
            div_sum += std::abs(r.total);
            ++div_count;
        } else {
            other_sum += std::abs(r.total);
            ++other_count;
        }
    }
    if (div_count == 0 || other_count == 0)
        throw std::domain_error("contrast: need at least one divisor and one non-divisor "
                                "in the trial set");
    const double mean_div = div_sum / static_cast<double>(div_count);
    const double mean_other = other_sum / static_cast<double>(other_count);
    const double denom = mean_div + mean_other;
    if (!(denom > 0.0))
        throw std::domain_error("contrast: vanishing mean totals");
    return (mean_div - mean_other) / denom;
}

struct ContrastPoint {
    int truncation = 0;
    double visibility = 0.0;
};

using ContrastReport = std::vector<ContrastPoint>;

} // namespace gaussfact
