#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gaussfact/beam.hpp"
#include "gaussfact/errors.hpp"
#include "gaussfact/gauss_core.hpp"
#include "gaussfact/two_level.hpp"

namespace gaussfact {

enum class PhysicsMode { Ideal, Beam };

namespace detail {

/**
 * Runs fn(i) for i in [0, count) on up to max_threads workers. Work items
 * must be independent and write only to their own slot; results are then
 * identical for any thread count. The first exception wins and is rethrown
 * on the caller's thread.
 */
inline void parallel_for(std::size_t count, int max_threads,
                         const std::function<void(std::size_t)>& fn)
{
    std::size_t workers = max_threads > 0 ? static_cast<std::size_t>(max_threads)
                                          : std::thread::hardware_concurrency();
    if (workers == 0)
        workers = 1;
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(body);
    for (std::thread& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

inline std::string format_g12(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

} // namespace detail

/// Everything the run functions need to evaluate one signal.
struct RunEnvironment {
    PhysicsMode mode = PhysicsMode::Ideal;
    PhysicsConfig physics{};
    Timing timing{};
    JitterSpec jitter{};
    int threads = 1;
};

/// One interference signal under the selected model.
inline double signal_value(std::uint64_t n, std::uint64_t l, int m,
                           const RunEnvironment& env)
{
    if (env.mode == PhysicsMode::Beam)
        return ensemble_signal(n, l, m, env.physics, env.timing, env.jitter);
    if (env.jitter.enabled)
        return simulate_signal(n, l, static_cast<std::uint64_t>(m), env.timing,
                               env.jitter);
    return interference_signal_ideal(n, l, static_cast<std::uint64_t>(m));
}

/// Signals c_0..c_m for one trial factor under the selected model.
inline std::vector<double> signal_trace(std::uint64_t n, std::uint64_t l, int m_max,
                                        const RunEnvironment& env)
{
    if (m_max < 0)
        throw std::domain_error("signal_trace: m_max must be >= 0");
    std::vector<double> trace;
    trace.reserve(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m)
        trace.push_back(signal_value(n, l, m, env));
    return trace;
}

inline GaussSumResult evaluate_trial_modeled(std::uint64_t n, std::uint64_t l, int m_max,
                                             const RunEnvironment& env)
{
    GaussSumResult result;
    result.l = l;
    result.is_divisor = (n % l == 0);
    result.signals = signal_trace(n, l, m_max, env);
    double acc = 0.0;
    for (const double c : result.signals)
        acc += c;
    result.total = acc / static_cast<double>(result.signals.size());
    return result;
}

struct FactorScan {
    std::vector<GaussSumResult> results;  // ordered as the trial set
    Classification classification;
};

/// Evaluates every trial factor (in parallel when allowed) and thresholds
/// the totals. Result order follows the trial set regardless of threads.
inline FactorScan run_factorization(const FactoringProblem& problem, double threshold,
                                    const RunEnvironment& env,
                                    bool include_trivial = false)
{
    problem.validate();
    FactorScan scan;
    scan.results.resize(problem.trial_set.size());
    detail::parallel_for(problem.trial_set.size(), env.threads, [&](std::size_t i) {
        scan.results[i] =
            evaluate_trial_modeled(problem.n, problem.trial_set[i], problem.truncation, env);
    });
    scan.classification = classify(scan.results, threshold, include_trivial);
    return scan;
}

/**
 * Contrast of the factorization pattern for every truncation 1..m_max.
 * Signals are computed once per trial factor up to m_max; prefix means give
 * each truncation's totals.
 */
inline ContrastReport run_contrast_scan(std::uint64_t n, int m_max,
                                        const std::vector<std::uint64_t>& trial_set,
                                        const RunEnvironment& env)
{
    if (m_max < 1)
        throw std::domain_error("run_contrast_scan: m_max must be >= 1");
    if (trial_set.empty())
        throw std::domain_error("run_contrast_scan: empty trial set");

    std::vector<std::vector<double>> traces(trial_set.size());
    detail::parallel_for(trial_set.size(), env.threads, [&](std::size_t i) {
        traces[i] = signal_trace(n, trial_set[i], m_max, env);
    });

    bool any_divisor = false, any_other = false;
    for (const std::uint64_t l : trial_set)
        (n % l == 0 ? any_divisor : any_other) = true;
    if (!any_divisor || !any_other)
        throw std::domain_error("run_contrast_scan: need both divisors and "
                                "non-divisors in the trial set");

    ContrastReport report;
    report.reserve(static_cast<std::size_t>(m_max));
    std::vector<double> prefix(trial_set.size(), 0.0);
    for (std::size_t i = 0; i < trial_set.size(); ++i)
        prefix[i] = traces[i][0];
    for (int m_top = 1; m_top <= m_max; ++m_top) {
        double div_sum = 0.0, other_sum = 0.0;
        std::size_t div_count = 0, other_count = 0;
        for (std::size_t i = 0; i < trial_set.size(); ++i) {
            prefix[i] += traces[i][static_cast<std::size_t>(m_top)];
            const double total = prefix[i] / static_cast<double>(m_top + 1);
            if (n % trial_set[i] == 0) {
                div_sum += std::abs(total);
                ++div_count;
            } else {
                other_sum += std::abs(total);
                ++other_count;
            }
        }
        const double mean_div = div_sum / static_cast<double>(div_count);
        const double mean_other = other_sum / static_cast<double>(other_count);
        report.push_back({m_top, (mean_div - mean_other) / (mean_div + mean_other)});
    }
    return report;
}

struct AdaptationComparison {
    std::vector<std::uint64_t> factors;
    std::vector<double> adapted;  // mean c_m over factors, parabolic lengths
    std::vector<double> fixed;    // mean c_m over factors, fixed length
};

/// Beam-model traces averaged over the given divisors, with and without
/// pulse-length adaptation. Every listed factor must divide n.
inline AdaptationComparison run_adaptation_comparison(
    std::uint64_t n, const std::vector<std::uint64_t>& factors, int m_max,
    const RunEnvironment& env)
{
    if (factors.empty())
        throw std::domain_error("run_adaptation_comparison: empty factor list");
    for (const std::uint64_t l : factors)
        if (l == 0 || n % l != 0)
            throw std::domain_error("run_adaptation_comparison: " + std::to_string(l) +
                                    " does not divide " + std::to_string(n));

    RunEnvironment adapted_env = env;
    adapted_env.mode = PhysicsMode::Beam;
    adapted_env.physics.adaptation = Adaptation::Parabolic;
    RunEnvironment fixed_env = adapted_env;
    fixed_env.physics.adaptation = Adaptation::Off;

    std::vector<std::vector<double>> adapted_traces(factors.size());
    std::vector<std::vector<double>> fixed_traces(factors.size());
    detail::parallel_for(factors.size(), env.threads, [&](std::size_t i) {
        adapted_traces[i] = signal_trace(n, factors[i], m_max, adapted_env);
        fixed_traces[i] = signal_trace(n, factors[i], m_max, fixed_env);
    });

    AdaptationComparison out;
    out.factors = factors;
    out.adapted.resize(static_cast<std::size_t>(m_max) + 1, 0.0);
    out.fixed.resize(static_cast<std::size_t>(m_max) + 1, 0.0);
    for (std::size_t m = 0; m <= static_cast<std::size_t>(m_max); ++m) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
            out.adapted[m] += adapted_traces[i][m];
            out.fixed[m] += fixed_traces[i][m];
        }
        out.adapted[m] /= static_cast<double>(factors.size());
        out.fixed[m] /= static_cast<double>(factors.size());
    }
    return out;
}

// CSV layer: comma separators, header row, LF endings, 12 significant
// digits. Bytes depend only on the values.

inline std::string signal_csv(const std::vector<double>& trace)
{
    std::string out = "m,c_m\n";
    for (std::size_t m = 0; m < trace.size(); ++m)
        out += std::to_string(m) + ',' + detail::format_g12(trace[m]) + '\n';
    return out;
}

inline std::string factor_csv(const FactorScan& scan)
{
    std::string out = "l,total,abs_total,is_divisor,classified_factor\n";
    for (const GaussSumResult& r : scan.results) {
        out += std::to_string(r.l) + ',' + detail::format_g12(r.total) + ',' +
               detail::format_g12(std::abs(r.total)) + ',' +
               (r.is_divisor ? "1" : "0") + ',' + (r.classified_factor ? "1" : "0") +
               '\n';
    }
    return out;
}

inline std::string contrast_csv(const ContrastReport& report)
{
    std::string out = "M,V\n";
    for (const ContrastPoint& p : report)
        out += std::to_string(p.truncation) + ',' + detail::format_g12(p.visibility) +
               '\n';
    return out;
}

inline std::string adaptation_csv(const AdaptationComparison& cmp)
{
    std::string out = "m,c_adapted,c_fixed\n";
    for (std::size_t m = 0; m < cmp.adapted.size(); ++m)
        out += std::to_string(m) + ',' + detail::format_g12(cmp.adapted[m]) + ',' +
               detail::format_g12(cmp.fixed[m]) + '\n';
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot open for writing: " + path);
    file << content;
    if (!file)
        throw IoError("write failed: " + path);
}

} // namespace gaussfact
