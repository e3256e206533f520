#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussfact/errors.hpp"
#include "gaussfact/gauss_core.hpp"
#include "gaussfact/phase.hpp"

namespace gaussfact {

/// Pulse timing in microseconds. The half-pi duration defaults to half the
/// pi duration; both are independent knobs because hardware calibrates them
/// separately.
struct Timing {
    double separation_us = 100.0;
    double pi_us = 23.0;
    double half_pi_us = 11.5;

    void validate() const
    {
        if (!(separation_us > 0.0) || !(pi_us > 0.0) || !(half_pi_us > 0.0))
            throw std::domain_error("Timing: all durations must be > 0");
    }
};

/// One timed, phased pulse. The rational phase is authoritative; phase_rad
/// mirrors it for code that only needs a double.
struct PulseSpec {
    enum class Role { Initial, Factor, Final };

    Role role = Role::Factor;
    int k = 0;               // index within the pi train; ignored for the pi/2 roles
    double area_target = 0.0;  // radians
    RationalAngle phase{0, 1};
    double phase_rad = 0.0;
    double start_time_us = 0.0;
    double duration_us = 0.0;

    double center_time_us() const { return start_time_us + 0.5 * duration_us; }
};

/**
 * The full interferometer sequence: a pi/2 pulse, m+1 pi-pulses carrying the
 * factorization phases, and a closing pi/2 pulse, all separated by the same
 * inter-pulse time.
 */
struct PhaseSchedule {
    std::uint64_t n = 0;
    std::uint64_t l = 1;
    int m = 0;
    double inter_pulse_time_us = 100.0;
    std::vector<PulseSpec> pulses;

    double start_us() const { return pulses.empty() ? 0.0 : pulses.front().start_time_us; }
    double end_us() const
    {
        return pulses.empty() ? 0.0
                              : pulses.back().start_time_us + pulses.back().duration_us;
    }
    double midpoint_us() const { return 0.5 * (start_us() + end_us()); }

    void validate() const
    {
        if (m < 0)
            throw std::domain_error("PhaseSchedule: m must be >= 0");
        if (pulses.size() != static_cast<std::size_t>(m) + 3)
            throw std::domain_error("PhaseSchedule: expected m + 3 pulses");
        const RationalAngle minus_half_pi = RationalAngle::wrap(-1, 2);
        for (std::size_t j = 0; j < pulses.size(); ++j) {
            const PulseSpec& p = pulses[j];
            if (!(p.duration_us > 0.0))
                throw std::domain_error("PhaseSchedule: pulse duration must be > 0");
            if (p.phase.num >= 2 * p.phase.den)
                throw std::domain_error("PhaseSchedule: phase not reduced mod 2pi");
            if (std::abs(p.phase_rad - p.phase.radians()) > 1e-12)
                throw std::domain_error("PhaseSchedule: floating phase mirror out of sync");
            const bool endpoint = (j == 0 || j + 1 == pulses.size());
            if (endpoint) {
                if (p.role != (j == 0 ? PulseSpec::Role::Initial : PulseSpec::Role::Final))
                    throw std::domain_error("PhaseSchedule: endpoint role mismatch");
                if (!same_angle(p.phase, minus_half_pi))
                    throw std::domain_error("PhaseSchedule: pi/2 pulses must sit at -90 deg");
            } else if (p.role != PulseSpec::Role::Factor) {
                throw std::domain_error("PhaseSchedule: interior pulses must be pi-pulses");
            }
            if (j > 0) {
                const PulseSpec& q = pulses[j - 1];
                const double expected = q.start_time_us + q.duration_us + inter_pulse_time_us;
                if (std::abs(p.start_time_us - expected) > 1e-9)
                    throw std::domain_error("PhaseSchedule: start times must step by "
                                            "duration + T");
                if (!(p.start_time_us > q.start_time_us))
                    throw std::domain_error("PhaseSchedule: start times must increase");
            }
        }
    }
};

/**
 * Canonical sequence for testing whether l divides n with m+1 factorization
 * pulses. The pi/2 endpoints sit at -90 deg; pi-pulse k carries
 * pulse_phase(k, n, l). Consecutive starts differ by the pulse duration plus
 * the separation.
 */
inline PhaseSchedule build_schedule(std::uint64_t n, std::uint64_t l, int m,
                                    const Timing& timing = {})
{
    if (n < 1)
        throw std::domain_error("build_schedule: n must be >= 1");
    if (m < 0)
        throw std::domain_error("build_schedule: m must be >= 0");
    timing.validate();

    PhaseSchedule schedule;
    schedule.n = n;
    schedule.l = l;
    schedule.m = m;
    schedule.inter_pulse_time_us = timing.separation_us;
    schedule.pulses.reserve(static_cast<std::size_t>(m) + 3);

    const RationalAngle minus_half_pi = RationalAngle::wrap(-1, 2);
    double start = 0.0;
    auto push = [&](PulseSpec::Role role, int k, double area, RationalAngle phase,
                    double duration) {
        PulseSpec p;
        p.role = role;
        p.k = k;
        p.area_target = area;
        p.phase = phase;
        p.phase_rad = phase.radians();
        p.start_time_us = start;
        p.duration_us = duration;
        schedule.pulses.push_back(p);
        start += duration + timing.separation_us;
    };

    push(PulseSpec::Role::Initial, -1, std::numbers::pi / 2, minus_half_pi,
         timing.half_pi_us);
    for (int k = 0; k <= m; ++k)
        push(PulseSpec::Role::Factor, k, std::numbers::pi, pulse_phase(k, n, l),
             timing.pi_us);
    push(PulseSpec::Role::Final, -1, std::numbers::pi / 2, minus_half_pi,
         timing.half_pi_us);
    return schedule;
}

namespace detail {

// Exact phase in micro-degrees, rounded half-even from the rational value
// and wrapped back into [0, 360) in case rounding lands on the boundary.
inline std::uint64_t phase_microdegrees(const RationalAngle& a)
{
    const auto num = static_cast<unsigned __int128>(a.num) * 180'000'000u;
    const auto den = static_cast<unsigned __int128>(a.den);
    unsigned __int128 q = num / den;
    const unsigned __int128 r = num % den;
    if (2 * r > den || (2 * r == den && (q & 1)))
        ++q;
    return static_cast<std::uint64_t>(q % 360'000'000u);
}

inline std::string format_microdegrees(std::uint64_t micro)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu.%06llu",
                  static_cast<unsigned long long>(micro / 1'000'000u),
                  static_cast<unsigned long long>(micro % 1'000'000u));
    return buf;
}

inline std::string format_us(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

inline std::string format_area_over_pi(double area)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", area / std::numbers::pi);
    return buf;
}

} // namespace detail

/**
 * Line-oriented export: a comment header carrying the run parameters, a
 * column header, then one `k,start_us,duration_us,area_over_pi,phase_deg`
 * line per pulse with phase_deg in [0, 360) rounded half-even to six
 * decimals. Byte output is deterministic for fixed inputs.
 */
inline std::string format_schedule(const PhaseSchedule& schedule)
{
    std::string out;
    out += "# N=" + std::to_string(schedule.n) + " l=" + std::to_string(schedule.l) +
           " m=" + std::to_string(schedule.m) +
           " T_us=" + detail::format_us(schedule.inter_pulse_time_us) + "\n";
    out += "k,start_us,duration_us,area_over_pi,phase_deg\n";
    for (const PulseSpec& p : schedule.pulses) {
        switch (p.role) {
        case PulseSpec::Role::Initial: out += "initial"; break;
        case PulseSpec::Role::Final: out += "final"; break;
        case PulseSpec::Role::Factor: out += std::to_string(p.k); break;
        }
        out += ',' + detail::format_us(p.start_time_us);
        out += ',' + detail::format_us(p.duration_us);
        out += ',' + detail::format_area_over_pi(p.area_target);
        out += ',' + detail::format_microdegrees(detail::phase_microdegrees(p.phase));
        out += '\n';
    }
    return out;
}

inline void write_schedule(const std::string& path, const PhaseSchedule& schedule)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot open for writing: " + path);
    file << format_schedule(schedule);
    if (!file)
        throw IoError("write failed: " + path);
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string current;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

// Parses a fixed-point decimal with at most six fractional digits into
// micro-degrees, so the round trip preserves exact bytes.
inline std::uint64_t parse_microdegrees(const std::string& text)
{
    const auto dot = text.find('.');
    const std::string whole = (dot == std::string::npos) ? text : text.substr(0, dot);
    std::string frac = (dot == std::string::npos) ? "" : text.substr(dot + 1);
    if (whole.empty() || frac.size() > 6)
        throw std::domain_error("schedule parse: bad phase field '" + text + "'");
    frac.resize(6, '0');
    std::uint64_t micro = 0;
    for (const char c : whole + frac) {
        if (c < '0' || c > '9')
            throw std::domain_error("schedule parse: bad phase field '" + text + "'");
        micro = micro * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return micro;
}

inline double parse_double(const std::string& text, const char* what)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::domain_error(std::string("schedule parse: bad ") + what + " '" + text +
                                "'");
    }
    if (used != text.size())
        throw std::domain_error(std::string("schedule parse: bad ") + what + " '" + text +
                                "'");
    return value;
}

inline std::uint64_t parse_u64_token(const std::string& header, const char* key)
{
    const std::string needle = std::string(key) + "=";
    const auto pos = header.find(needle);
    if (pos == std::string::npos)
        throw std::domain_error(std::string("schedule parse: header lacks ") + key);
    std::uint64_t value = 0;
    std::size_t i = pos + needle.size();
    if (i >= header.size() || header[i] < '0' || header[i] > '9')
        throw std::domain_error(std::string("schedule parse: bad header value for ") + key);
    for (; i < header.size() && header[i] >= '0' && header[i] <= '9'; ++i)
        value = value * 10 + static_cast<std::uint64_t>(header[i] - '0');
    return value;
}

} // namespace detail

/// Inverse of format_schedule. Phases come back as exact micro-degree
/// rationals, so re-exporting a parsed schedule reproduces the bytes.
inline PhaseSchedule parse_schedule(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header) || header.rfind("# N=", 0) != 0)
        throw std::domain_error("schedule parse: missing parameter header");
    PhaseSchedule schedule;
    schedule.n = detail::parse_u64_token(header, "N");
    schedule.l = detail::parse_u64_token(header, "l");
    schedule.m = static_cast<int>(detail::parse_u64_token(header, "m"));
    const auto t_pos = header.find("T_us=");
    if (t_pos == std::string::npos)
        throw std::domain_error("schedule parse: header lacks T_us");
    schedule.inter_pulse_time_us =
        detail::parse_double(header.substr(t_pos + 5), "T_us");

    std::string columns;
    if (!std::getline(in, columns) || columns != "k,start_us,duration_us,area_over_pi,phase_deg")
        throw std::domain_error("schedule parse: missing column header");

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 5)
            throw std::domain_error("schedule parse: expected 5 fields, got line '" + line +
                                    "'");
        PulseSpec p;
        if (fields[0] == "initial") {
            p.role = PulseSpec::Role::Initial;
            p.k = -1;
        } else if (fields[0] == "final") {
            p.role = PulseSpec::Role::Final;
            p.k = -1;
        } else {
            p.role = PulseSpec::Role::Factor;
            p.k = static_cast<int>(detail::parse_u64_token("k=" + fields[0], "k"));
        }
        p.start_time_us = detail::parse_double(fields[1], "start_us");
        p.duration_us = detail::parse_double(fields[2], "duration_us");
        p.area_target = detail::parse_double(fields[3], "area_over_pi") * std::numbers::pi;
        const std::uint64_t micro = detail::parse_microdegrees(fields[4]);
        p.phase = RationalAngle::wrap(static_cast<std::int64_t>(micro), 180'000'000u);
        p.phase_rad = p.phase.radians();
        schedule.pulses.push_back(p);
    }
    return schedule;
}

inline PhaseSchedule read_schedule(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot open for reading: " + path);
    return parse_schedule(file);
}

} // namespace gaussfact
