#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussfact/experiment.hpp"
#include "gaussfact/manifest.hpp"
#include "gaussfact/schedule.hpp"

namespace gaussfact {

/// Bytes produced by one run, before anything touches the filesystem.
struct RunOutput {
    std::string primary;        // CSV or schedule text for out_path
    std::string summary;        // human-readable lines for stdout
    bool beam_overrun = false;  // interaction span exceeds the beam diameter
};

namespace detail {

inline std::vector<std::uint64_t> resolve_trial_set(const RunManifest& m)
{
    if (m.strategy == "primes")
        return trial_factors(m.n, TrialSpec::primes());
    if (m.strategy == "range")
        return trial_factors(m.n, TrialSpec::range(m.l_min, m.l_max));
    throw std::domain_error("unknown strategy '" + m.strategy + "'");
}

inline RunEnvironment environment_of(const RunManifest& m)
{
    RunEnvironment env;
    env.mode = m.mode;
    env.physics = m.physics;
    env.timing = m.timing;
    env.jitter = m.jitter;
    env.threads = m.threads;
    return env;
}

inline bool beam_overrun(const RunManifest& m)
{
    if (m.mode != PhysicsMode::Beam)
        return false;
    const double span_mm =
        m.physics.atom_speed_mps * 1e-3 * (m.m_max + 2) * m.timing.separation_us;
    return span_mm > m.physics.beam_diameter_mm;
}

} // namespace detail

/**
 * Computes the output bytes for a manifest. Pure with respect to the
 * filesystem, so replaying a stored manifest and comparing checksums is a
 * complete reproducibility check.
 */
inline RunOutput execute_run(const RunManifest& m)
{
    RunOutput out;
    const RunEnvironment env = detail::environment_of(m);
    out.beam_overrun = detail::beam_overrun(m);

    if (m.command == "signal") {
        out.primary = signal_csv(signal_trace(m.n, m.l, m.m_max, env));
        return out;
    }
    if (m.command == "factor") {
        FactoringProblem problem;
        problem.n = m.n;
        problem.truncation = m.m_max;
        problem.trial_set = detail::resolve_trial_set(m);
        const FactorScan scan =
            run_factorization(problem, m.threshold, env, m.include_trivial);
        out.primary = factor_csv(scan);
        std::string factors_line;
        for (const std::uint64_t l : scan.classification.factors)
            factors_line += ' ' + std::to_string(l);
        out.summary = "n: " + std::to_string(m.n) + "\ntrial factors: " +
                      std::to_string(scan.results.size()) +
                      "\nthreshold: " + detail::format_g12(m.threshold) +
                      "\nclaimed factors:" +
                      (factors_line.empty() ? " none" : factors_line) + '\n';
        return out;
    }
    if (m.command == "contrast") {
        out.primary =
            contrast_csv(run_contrast_scan(m.n, m.m_max, detail::resolve_trial_set(m), env));
        return out;
    }
    if (m.command == "adapt-compare") {
        const AdaptationComparison cmp =
            run_adaptation_comparison(m.n, m.factors, m.m_max, env);
        out.primary = adaptation_csv(cmp);
        return out;
    }
    if (m.command == "schedule") {
        out.primary = format_schedule(build_schedule(m.n, m.l, m.m_max, m.timing));
        return out;
    }
    if (m.command == "primes") {
        std::string csv = "l\n";
        for (const std::uint64_t p : trial_factors(m.n, TrialSpec::primes()))
            csv += std::to_string(p) + '\n';
        out.primary = csv;
        return out;
    }
    throw std::domain_error("unknown command '" + m.command + "'");
}

inline std::string manifest_path_for(const std::string& out_path)
{
    return out_path + ".manifest.json";
}

/// Writes the primary output and its manifest; records the checksum first so
/// the manifest always describes the bytes on disk.
inline void write_run(RunManifest& m, const RunOutput& out)
{
    if (m.out_path.empty())
        throw std::domain_error("write_run: empty output path");
    m.checksums.clear();
    m.checksums[m.out_path] = fnv1a64_hex(out.primary);
    write_text_file(m.out_path, out.primary);
    write_manifest(manifest_path_for(m.out_path), m);
}

/// Replays a manifest and reports whether the recomputed bytes match the
/// recorded checksums.
inline bool verify_manifest(const RunManifest& m, std::string* detail_out = nullptr)
{
    const RunOutput out = execute_run(m);
    const auto it = m.checksums.find(m.out_path);
    if (it == m.checksums.end()) {
        if (detail_out)
            *detail_out = "manifest records no checksum for " + m.out_path;
        return false;
    }
    const std::string actual = fnv1a64_hex(out.primary);
    if (actual != it->second) {
        if (detail_out)
            *detail_out = "checksum mismatch for " + m.out_path + ": recorded " +
                          it->second + ", recomputed " + actual;
        return false;
    }
    if (detail_out)
        *detail_out = "reproduced " + m.out_path + " (" + actual + ")";
    return true;
}

} // namespace gaussfact
