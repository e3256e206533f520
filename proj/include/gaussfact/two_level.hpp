#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "gaussfact/schedule.hpp"

namespace gaussfact {

/// Amplitudes of the two interferometer levels, ground first.
struct TwoLevelState {
    std::complex<double> amp_g{1.0, 0.0};
    std::complex<double> amp_e{0.0, 0.0};

    static TwoLevelState ground() { return {}; }

    double norm() const { return std::norm(amp_g) + std::norm(amp_e); }
    bool is_normalized(double tol = 1e-9) const { return std::abs(norm() - 1.0) <= tol; }
};

/// 2x2 rotation acting on (amp_g, amp_e).
struct PulseUnitary {
    std::complex<double> u_gg{1.0, 0.0};
    std::complex<double> u_ge{0.0, 0.0};
    std::complex<double> u_eg{0.0, 0.0};
    std::complex<double> u_ee{1.0, 0.0};

    TwoLevelState apply(const TwoLevelState& s) const
    {
        return {u_gg * s.amp_g + u_ge * s.amp_e, u_eg * s.amp_g + u_ee * s.amp_e};
    }

    std::complex<double> det() const { return u_gg * u_ee - u_ge * u_eg; }

    bool is_unitary(double tol = 1e-12) const
    {
        // Rows of U times columns of U-dagger against the identity.
        const double d00 = std::abs(std::norm(u_gg) + std::norm(u_ge) - 1.0);
        const double d11 = std::abs(std::norm(u_eg) + std::norm(u_ee) - 1.0);
        const double d01 =
            std::abs(u_gg * std::conj(u_eg) + u_ge * std::conj(u_ee));
        return d00 <= tol && d11 <= tol && d01 <= tol;
    }
};

/**
 * Resonant rotation of the given area about the in-plane axis set by the
 * laser phase:
 *   u_gg = u_ee = cos(theta/2)
 *   u_ge = -i e^{-i phi} sin(theta/2)
 *   u_eg = -i e^{+i phi} sin(theta/2)
 * The convention pairs with readout() below so that the canonical sequence
 * yields cos(2 pi (m^2 n mod l)/l); flipping either alone breaks the sign.
 */
inline PulseUnitary pulse_unitary(double area, double phase)
{
    const double c = std::cos(0.5 * area);
    const double s = std::sin(0.5 * area);
    const double cp = std::cos(phase);
    const double sp = std::sin(phase);
    PulseUnitary u;
    u.u_gg = {c, 0.0};
    u.u_ee = {c, 0.0};
    u.u_ge = {-s * sp, -s * cp};
    u.u_eg = {s * sp, -s * cp};
    return u;
}

/// Population inversion: +1 all excited, -1 all ground.
inline double readout(const TwoLevelState& state)
{
    if (!state.is_normalized())
        throw std::domain_error("readout: state not normalized");
    return std::norm(state.amp_e) - std::norm(state.amp_g);
}

/**
 * Applies the schedule's pulses in order; free evolution between pulses is
 * the identity in the rotating frame. Optional per-pulse overrides replace
 * the target area (beam model) or add to the laser phase (jitter); when
 * given, each span must cover every pulse.
 */
inline TwoLevelState evolve(TwoLevelState state, const PhaseSchedule& schedule,
                            std::span<const double> area_override = {},
                            std::span<const double> phase_offset = {})
{
    if (!state.is_normalized())
        throw std::domain_error("evolve: state not normalized");
    if (!area_override.empty() && area_override.size() != schedule.pulses.size())
        throw std::domain_error("evolve: area override size mismatch");
    if (!phase_offset.empty() && phase_offset.size() != schedule.pulses.size())
        throw std::domain_error("evolve: phase offset size mismatch");
    for (std::size_t j = 0; j < schedule.pulses.size(); ++j) {
        const PulseSpec& p = schedule.pulses[j];
        const double area = area_override.empty() ? p.area_target : area_override[j];
        const double phase =
            phase_offset.empty() ? p.phase_rad : p.phase_rad + phase_offset[j];
        state = pulse_unitary(area, phase).apply(state);
    }
    return state;
}

namespace detail {

// SplitMix64 step; full-period 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline double to_unit_open(std::uint64_t x)
{
    // (0, 1]: 53-bit mantissa, never zero, safe under log().
    return (static_cast<double>(x >> 11) + 1.0) * 0x1p-53;
}

// Standard normal keyed by (seed, l, m, k): counter-based, so the draw for a
// pulse does not depend on evaluation order.
inline double keyed_normal(std::uint64_t seed, std::uint64_t l, std::uint64_t m,
                           std::uint64_t k)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ l);
    h = splitmix64(h ^ m);
    h = splitmix64(h ^ k);
    const double u1 = to_unit_open(splitmix64(h));
    const double u2 = to_unit_open(splitmix64(h + 1));
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace detail

/// Per-pulse Gaussian phase noise; off by default so runs are deterministic.
struct JitterSpec {
    bool enabled = false;
    double sigma_rad = 1e-3;
    std::uint64_t seed = 0;
};

inline std::vector<double> jitter_offsets(const PhaseSchedule& schedule,
                                          const JitterSpec& jitter)
{
    std::vector<double> offsets(schedule.pulses.size(), 0.0);
    if (!jitter.enabled)
        return offsets;
    for (std::size_t j = 0; j < offsets.size(); ++j)
        offsets[j] = jitter.sigma_rad *
                     detail::keyed_normal(jitter.seed, schedule.l,
                                          static_cast<std::uint64_t>(schedule.m), j);
    return offsets;
}

/**
 * Interference signal from the dynamics: canonical schedule, evolution from
 * pure ground, population readout. With jitter disabled this must equal
 * interference_signal_ideal(n, l, m); the agreement is the simulator's
 * correctness anchor.
 */
inline double simulate_signal(std::uint64_t n, std::uint64_t l, std::uint64_t m,
                              const Timing& timing = {}, const JitterSpec& jitter = {})
{
    if (m > 1'000'000)
        throw std::domain_error("simulate_signal: m too large to materialize a schedule");
    const PhaseSchedule schedule = build_schedule(n, l, static_cast<int>(m), timing);
    if (!jitter.enabled)
        return readout(evolve(TwoLevelState::ground(), schedule));
    const std::vector<double> offsets = jitter_offsets(schedule, jitter);
    return readout(evolve(TwoLevelState::ground(), schedule, {}, offsets));
}

} // namespace gaussfact
