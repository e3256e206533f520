#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaussfact/beam.hpp"
#include "gaussfact/errors.hpp"
#include "gaussfact/experiment.hpp"
#include "gaussfact/gauss_core.hpp"
#include "gaussfact/schedule.hpp"
#include "gaussfact/two_level.hpp"

namespace gaussfact {

// FNV-1a, 64-bit; cheap stable fingerprint for output files.
inline std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

inline std::string fnv1a64_hex(const std::string& bytes)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

/**
 * Full resolved description of one CLI run: command, every input that
 * influences the output, the output path and the checksum of what was
 * written. Replaying the manifest must reproduce the bytes.
 */
struct RunManifest {
    std::string command;  // signal | factor | contrast | adapt-compare | schedule
    std::uint64_t n = 0;
    std::uint64_t l = 0;          // signal / schedule runs
    int m_max = kDefaultTruncation;
    std::string strategy = "range";  // factor / contrast runs: primes | range
    std::uint64_t l_min = 2;
    std::uint64_t l_max = 200;
    double threshold = kDefaultThreshold;
    bool include_trivial = false;
    std::vector<std::uint64_t> factors;  // adapt-compare averaging set
    PhysicsMode mode = PhysicsMode::Ideal;
    PhysicsConfig physics{};
    Timing timing{};
    JitterSpec jitter{};
    int threads = 1;
    std::string out_path;
    std::map<std::string, std::string> checksums;  // path -> fnv1a64 hex
};

namespace detail {

inline nlohmann::json physics_to_json(const PhysicsConfig& c)
{
    return {
        {"beam_diameter_mm", c.beam_diameter_mm},
        {"atom_speed_mps", c.atom_speed_mps},
        {"cloud_diameter_mm", c.cloud_diameter_mm},
        {"tau_center_us", c.tau_center_us},
        {"tau_edge_us", c.tau_edge_us},
        {"tau_fixed_us", c.tau_fixed_us},
        {"adaptation", c.adaptation == Adaptation::Parabolic ? "parabolic" : "off"},
        {"ensemble_samples", c.ensemble_samples},
        {"ensemble_scheme",
         c.ensemble_scheme == EnsembleScheme::Quadrature ? "quadrature" : "montecarlo"},
        {"ensemble_seed", c.ensemble_seed},
    };
}

inline PhysicsConfig physics_from_json(const nlohmann::json& j)
{
    PhysicsConfig c;
    c.beam_diameter_mm = j.at("beam_diameter_mm").get<double>();
    c.atom_speed_mps = j.at("atom_speed_mps").get<double>();
    c.cloud_diameter_mm = j.at("cloud_diameter_mm").get<double>();
    c.tau_center_us = j.at("tau_center_us").get<double>();
    c.tau_edge_us = j.at("tau_edge_us").get<double>();
    c.tau_fixed_us = j.at("tau_fixed_us").get<double>();
    c.adaptation = j.at("adaptation").get<std::string>() == "parabolic"
                       ? Adaptation::Parabolic
                       : Adaptation::Off;
    c.ensemble_samples = j.at("ensemble_samples").get<int>();
    c.ensemble_scheme = j.at("ensemble_scheme").get<std::string>() == "quadrature"
                            ? EnsembleScheme::Quadrature
                            : EnsembleScheme::MonteCarlo;
    c.ensemble_seed = j.at("ensemble_seed").get<std::uint64_t>();
    return c;
}

} // namespace detail

inline nlohmann::json manifest_to_json(const RunManifest& m)
{
    return {
        {"command", m.command},
        {"n", m.n},
        {"l", m.l},
        {"m_max", m.m_max},
        {"strategy", m.strategy},
        {"l_min", m.l_min},
        {"l_max", m.l_max},
        {"threshold", m.threshold},
        {"include_trivial", m.include_trivial},
        {"factors", m.factors},
        {"physics_mode", m.mode == PhysicsMode::Beam ? "beam" : "ideal"},
        {"physics", detail::physics_to_json(m.physics)},
        {"timing",
         {{"separation_us", m.timing.separation_us},
          {"pi_us", m.timing.pi_us},
          {"half_pi_us", m.timing.half_pi_us}}},
        {"jitter",
         {{"enabled", m.jitter.enabled},
          {"sigma_rad", m.jitter.sigma_rad},
          {"seed", m.jitter.seed}}},
        {"threads", m.threads},
        {"out_path", m.out_path},
        {"checksums", m.checksums},
    };
}

inline RunManifest manifest_from_json(const nlohmann::json& j)
{
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.n = j.at("n").get<std::uint64_t>();
    m.l = j.at("l").get<std::uint64_t>();
    m.m_max = j.at("m_max").get<int>();
    m.strategy = j.at("strategy").get<std::string>();
    m.l_min = j.at("l_min").get<std::uint64_t>();
    m.l_max = j.at("l_max").get<std::uint64_t>();
    m.threshold = j.at("threshold").get<double>();
    m.include_trivial = j.at("include_trivial").get<bool>();
    m.factors = j.at("factors").get<std::vector<std::uint64_t>>();
    m.mode = j.at("physics_mode").get<std::string>() == "beam" ? PhysicsMode::Beam
                                                               : PhysicsMode::Ideal;
    m.physics = detail::physics_from_json(j.at("physics"));
    m.timing.separation_us = j.at("timing").at("separation_us").get<double>();
    m.timing.pi_us = j.at("timing").at("pi_us").get<double>();
    m.timing.half_pi_us = j.at("timing").at("half_pi_us").get<double>();
    m.jitter.enabled = j.at("jitter").at("enabled").get<bool>();
    m.jitter.sigma_rad = j.at("jitter").at("sigma_rad").get<double>();
    m.jitter.seed = j.at("jitter").at("seed").get<std::uint64_t>();
    m.threads = j.at("threads").get<int>();
    m.out_path = j.at("out_path").get<std::string>();
    m.checksums = j.at("checksums").get<std::map<std::string, std::string>>();
    return m;
}

inline void write_manifest(const std::string& path, const RunManifest& m)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot open for writing: " + path);
    file << manifest_to_json(m).dump(2) << '\n';
    if (!file)
        throw IoError("write failed: " + path);
}

inline RunManifest read_manifest(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot open manifest: " + path);
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::domain_error(std::string("manifest parse: ") + e.what());
    }
    return manifest_from_json(j);
}

} // namespace gaussfact
