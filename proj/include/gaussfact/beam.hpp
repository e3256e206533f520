#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussfact/errors.hpp"
#include "gaussfact/quadrature.hpp"
#include "gaussfact/two_level.hpp"

namespace gaussfact {

enum class Adaptation { Off, Parabolic };
enum class EnsembleScheme { Quadrature, MonteCarlo };

/**
 * Interaction-region model: Gaussian beam with 1/e^2 diameter
 * beam_diameter_mm, atoms crossing at atom_speed_mps, cloud of the given
 * diameter. Pulse lengths are calibrated to pi at beam center (tau_center)
 * and at the radius where tau_edge produces pi; tau_fixed is the
 * non-adapted length used when adaptation is off.
 */
struct PhysicsConfig {
    double beam_diameter_mm = 30.0;
    double atom_speed_mps = 4.4;
    double cloud_diameter_mm = 5.0;
    double tau_center_us = 20.0;
    double tau_edge_us = 26.0;
    double tau_fixed_us = 23.0;
    Adaptation adaptation = Adaptation::Parabolic;
    int ensemble_samples = 64;
    EnsembleScheme ensemble_scheme = EnsembleScheme::Quadrature;
    std::uint64_t ensemble_seed = 12345;

    // Cloud diameter and atom speed may be zero: both zero out a physical
    // effect rather than leaving the model undefined.
    void validate() const
    {
        if (!(beam_diameter_mm > 0.0))
            throw std::domain_error("PhysicsConfig: beam_diameter_mm must be > 0");
        if (!(atom_speed_mps >= 0.0))
            throw std::domain_error("PhysicsConfig: atom_speed_mps must be >= 0");
        if (!(cloud_diameter_mm >= 0.0))
            throw std::domain_error("PhysicsConfig: cloud_diameter_mm must be >= 0");
        if (!(tau_center_us > 0.0) || !(tau_edge_us > 0.0) || !(tau_fixed_us > 0.0))
            throw std::domain_error("PhysicsConfig: pulse lengths must be > 0");
        if (!(tau_center_us < tau_edge_us))
            throw std::domain_error("PhysicsConfig: tau_center_us must be < tau_edge_us");
        if (ensemble_samples < 1)
            throw std::domain_error("PhysicsConfig: ensemble_samples must be >= 1");
    }

    double waist_mm() const { return 0.5 * beam_diameter_mm; }

    // Peak Rabi frequency fixed by the center calibration: Omega0 * tau_center = pi.
    double peak_rabi_rad_per_us() const { return std::numbers::pi / tau_center_us; }

    // Radius where a tau_edge pulse has area pi.
    double edge_radius_mm() const
    {
        return waist_mm() * std::sqrt(0.5 * std::log(tau_edge_us / tau_center_us));
    }
};

/// Rabi frequency (rad/us) at radial distance r from the beam axis.
inline double rabi_at_position(double r_mm, const PhysicsConfig& config)
{
    const double w = config.waist_mm();
    return config.peak_rabi_rad_per_us() * std::exp(-2.0 * r_mm * r_mm / (w * w));
}

/// Pi-pulse length (us) programmed at longitudinal position x: the parabola
/// through the two calibration points, or tau_fixed when adaptation is off.
inline double adapted_pulse_length(double x_mm, const PhysicsConfig& config)
{
    if (config.adaptation == Adaptation::Off)
        return config.tau_fixed_us;
    const double x_edge = config.edge_radius_mm();
    const double u = x_mm / x_edge;
    return config.tau_center_us + (config.tau_edge_us - config.tau_center_us) * u * u;
}

/// Area (rad) of a nominal pi-pulse centered at longitudinal position x with
/// total radial offset r; the length is set from x (the coordinate the
/// experiment can track), the intensity from r.
inline double pulse_area(double x_mm, double r_mm, const PhysicsConfig& config)
{
    return rabi_at_position(r_mm, config) * adapted_pulse_length(x_mm, config);
}

inline double pulse_area(double x_mm, const PhysicsConfig& config)
{
    return pulse_area(x_mm, x_mm, config);
}

/// Per-pulse geometry for one atom crossing the beam.
struct Trajectory {
    std::vector<double> x_mm;       // longitudinal position at each pulse center
    std::vector<double> radial_mm;  // sqrt(x^2 + offset^2)
    double span_mm = 0.0;           // interaction span v * (m + 2) * T
    bool exceeds_beam = false;      // span larger than the beam diameter
};

/**
 * Positions of the atom at each pulse center, with the sequence centered on
 * the beam axis: x_j = v (t_j - t_mid). The transverse cloud offset enters
 * the radial distance in quadrature. The span uses the inter-pulse budget
 * (m + 2) * T, the conventional budget for the interaction window.
 */
inline Trajectory trajectory_positions(const PhaseSchedule& schedule,
                                       double entry_offset_mm,
                                       const PhysicsConfig& config)
{
    config.validate();
    const double v_mm_per_us = config.atom_speed_mps * 1e-3;
    const double t_mid = schedule.midpoint_us();
    Trajectory traj;
    traj.x_mm.reserve(schedule.pulses.size());
    traj.radial_mm.reserve(schedule.pulses.size());
    for (const PulseSpec& p : schedule.pulses) {
        const double x = v_mm_per_us * (p.center_time_us() - t_mid);
        traj.x_mm.push_back(x);
        traj.radial_mm.push_back(std::hypot(x, entry_offset_mm));
    }
    traj.span_mm = v_mm_per_us * (schedule.m + 2) * schedule.inter_pulse_time_us;
    traj.exceeds_beam = traj.span_mm > config.beam_diameter_mm;
    return traj;
}

/// Realized area of every pulse along one trajectory; pi/2 pulses scale by
/// their nominal fraction of pi.
inline std::vector<double> pulse_areas_for_trajectory(const PhaseSchedule& schedule,
                                                      double entry_offset_mm,
                                                      const PhysicsConfig& config)
{
    const Trajectory traj = trajectory_positions(schedule, entry_offset_mm, config);
    std::vector<double> areas;
    areas.reserve(schedule.pulses.size());
    for (std::size_t j = 0; j < schedule.pulses.size(); ++j) {
        const double fraction = schedule.pulses[j].area_target / std::numbers::pi;
        areas.push_back(fraction * pulse_area(traj.x_mm[j], traj.radial_mm[j], config));
    }
    return areas;
}

namespace detail {

// Uniform draw in [0, 1) with the full 53-bit mantissa; fixed draw order
// keeps Monte Carlo runs bit-identical for a given seed.
inline double unit_from_engine(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

} // namespace detail

/**
 * Cloud-averaged interference signal. Entry offsets are radii of a
 * uniform-density disc of cloud_diameter: with u the squared fractional
 * radius, the disc average is the integral over u in [0, 1] of the signal at
 * offset R sqrt(u), evaluated either by Gauss-Legendre quadrature
 * (deterministic default) or by seeded Monte Carlo. Summation order is
 * fixed, so identical inputs give bit-identical results.
 */
inline double ensemble_signal(std::uint64_t n, std::uint64_t l, int m,
                              const PhysicsConfig& config, const Timing& timing = {},
                              const JitterSpec& jitter = {})
{
    config.validate();
    const PhaseSchedule schedule = build_schedule(n, l, m, timing);
    const std::vector<double> offsets_phase = jitter_offsets(schedule, jitter);
    const double cloud_radius = 0.5 * config.cloud_diameter_mm;

    auto signal_at_offset = [&](double offset_mm) {
        const std::vector<double> areas =
            pulse_areas_for_trajectory(schedule, offset_mm, config);
        return readout(evolve(TwoLevelState::ground(), schedule, areas, offsets_phase));
    };

    if (cloud_radius == 0.0)
        return signal_at_offset(0.0);

    if (config.ensemble_scheme == EnsembleScheme::Quadrature) {
        const auto nodes = gauss_legendre_unit(config.ensemble_samples);
        double acc = 0.0;
        for (const QuadratureNode& node : nodes)
            acc += node.w * signal_at_offset(cloud_radius * std::sqrt(node.x));
        return acc;
    }

    std::mt19937_64 rng(config.ensemble_seed);
    double acc = 0.0;
    for (int i = 0; i < config.ensemble_samples; ++i)
        acc += signal_at_offset(cloud_radius * std::sqrt(detail::unit_from_engine(rng)));
    return acc / config.ensemble_samples;
}

namespace detail {

inline std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

inline double config_number(const std::string& value, const std::string& key)
{
    std::size_t used = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::domain_error("physics config: bad number for " + key);
    }
    if (used != value.size())
        throw std::domain_error("physics config: bad number for " + key);
    return parsed;
}

} // namespace detail

/**
 * Plain-text key=value configuration; '#' starts a comment, unknown keys are
 * rejected. Every key defaults to the PhysicsConfig initializer, so a file
 * only lists overrides.
 */
inline PhysicsConfig parse_physics_config(std::istream& in)
{
    PhysicsConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("physics config line " + std::to_string(line_no) +
                                    ": expected key=value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key == "beam_diameter_mm")
            config.beam_diameter_mm = detail::config_number(value, key);
        else if (key == "atom_speed_mps")
            config.atom_speed_mps = detail::config_number(value, key);
        else if (key == "cloud_diameter_mm")
            config.cloud_diameter_mm = detail::config_number(value, key);
        else if (key == "tau_center_us")
            config.tau_center_us = detail::config_number(value, key);
        else if (key == "tau_edge_us")
            config.tau_edge_us = detail::config_number(value, key);
        else if (key == "tau_fixed_us")
            config.tau_fixed_us = detail::config_number(value, key);
        else if (key == "adaptation") {
            if (value == "off")
                config.adaptation = Adaptation::Off;
            else if (value == "parabolic")
                config.adaptation = Adaptation::Parabolic;
            else
                throw std::domain_error("physics config: adaptation must be "
                                        "'off' or 'parabolic'");
        } else if (key == "ensemble_samples")
            config.ensemble_samples =
                static_cast<int>(detail::config_number(value, key));
        else if (key == "ensemble_scheme") {
            if (value == "quadrature")
                config.ensemble_scheme = EnsembleScheme::Quadrature;
            else if (value == "montecarlo")
                config.ensemble_scheme = EnsembleScheme::MonteCarlo;
            else
                throw std::domain_error("physics config: ensemble_scheme must be "
                                        "'quadrature' or 'montecarlo'");
        } else if (key == "ensemble_seed")
            config.ensemble_seed =
                static_cast<std::uint64_t>(detail::config_number(value, key));
        else
            throw std::domain_error("physics config: unknown key '" + key + "'");
    }
    config.validate();
    return config;
}

inline PhysicsConfig load_physics_config(const std::string& path)
{
    std::ifstream file(path);
    if (!file)
        throw IoError("cannot open physics config: " + path);
    return parse_physics_config(file);
}

} // namespace gaussfact
