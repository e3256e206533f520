// Command-line driver: factoring runs, signal traces, contrast scans,
// adaptation comparisons, schedule export and manifest replay.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaussfact.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

struct CommonArgs {
    gaussfact::RunManifest manifest;
    std::string config_path;
    bool jitter_enabled = false;
    std::string physics_name = "ideal";
    std::string out_path;
};

void add_physics_options(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--physics", args.physics_name, "Signal model")
        ->check(CLI::IsMember({"ideal", "beam"}))
        ->capture_default_str();
    cmd->add_option("--config", args.config_path,
                    "Physics configuration file (key=value lines)")
        ->envname("GAUSSFACT_CONFIG");
    cmd->add_flag("--jitter", args.jitter_enabled, "Enable per-pulse phase jitter");
    cmd->add_option("--jitter-sigma", args.manifest.jitter.sigma_rad,
                    "Jitter standard deviation in radians")
        ->capture_default_str();
    cmd->add_option("--seed", args.manifest.jitter.seed, "Jitter seed")
        ->capture_default_str();
}

void add_timing_options(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--separation-us", args.manifest.timing.separation_us,
                    "Inter-pulse separation T in microseconds")
        ->capture_default_str();
    cmd->add_option("--tau-pi-us", args.manifest.timing.pi_us,
                    "Pi-pulse duration in microseconds")
        ->capture_default_str();
    cmd->add_option("--tau-half-us", args.manifest.timing.half_pi_us,
                    "Pi/2-pulse duration in microseconds")
        ->capture_default_str();
}

void add_output_options(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--out", args.out_path,
                    "Output path; a manifest is written alongside");
    cmd->add_option("--threads", args.manifest.threads,
                    "Worker threads for the trial sweep (0 = hardware)")
        ->capture_default_str();
}

void resolve_common(CommonArgs& args)
{
    args.manifest.mode = args.physics_name == "beam" ? gaussfact::PhysicsMode::Beam
                                                     : gaussfact::PhysicsMode::Ideal;
    if (!args.config_path.empty())
        args.manifest.physics = gaussfact::load_physics_config(args.config_path);
    args.manifest.jitter.enabled = args.jitter_enabled;
    args.manifest.out_path = args.out_path;
    args.manifest.timing.validate();
    if (args.manifest.m_max > gaussfact::kTruncationSoftLimit)
        std::fprintf(stderr,
                     "warning: truncation %d implies %d factorization pulses; the "
                     "sequence is calibrated for at most %d\n",
                     args.manifest.m_max, args.manifest.m_max + 1,
                     gaussfact::kTruncationSoftLimit + 1);
}

int emit(gaussfact::RunManifest& manifest)
{
    const gaussfact::RunOutput out = gaussfact::execute_run(manifest);
    if (out.beam_overrun)
        std::fprintf(stderr,
                     "warning: interaction span %.3f mm exceeds the %.3f mm beam\n",
                     manifest.physics.atom_speed_mps * 1e-3 * (manifest.m_max + 2) *
                         manifest.timing.separation_us,
                     manifest.physics.beam_diameter_mm);
    if (manifest.out_path.empty()) {
        std::fputs(out.primary.c_str(), stdout);
    } else {
        gaussfact::write_run(manifest, out);
        std::fprintf(stderr, "wrote %s and %s\n", manifest.out_path.c_str(),
                     gaussfact::manifest_path_for(manifest.out_path).c_str());
    }
    if (!out.summary.empty())
        std::fputs(out.summary.c_str(), stdout);
    return kExitOk;
}

int run_rerun(const std::string& manifest_path, bool rewrite)
{
    gaussfact::RunManifest manifest = gaussfact::read_manifest(manifest_path);
    std::string detail;
    const bool ok = gaussfact::verify_manifest(manifest, &detail);
    std::printf("%s\n", detail.c_str());
    if (!ok)
        return kExitDomain;
    if (rewrite)
        gaussfact::write_run(manifest, gaussfact::execute_run(manifest));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Integer factorization via truncated Gauss sums, evaluated on a "
                 "simulated Ramsey pulse sequence"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string rerun_path;
    bool rerun_write = false;

    CLI::App* signal = app.add_subcommand(
        "signal", "Interference signals c_m for one trial factor");
    signal->add_option("--n", args.manifest.n, "Number to factor")->required();
    signal->add_option("--l", args.manifest.l, "Trial factor")->required();
    signal->add_option("--m-max", args.manifest.m_max, "Largest summation index m")
        ->capture_default_str();
    add_physics_options(signal, args);
    add_timing_options(signal, args);
    add_output_options(signal, args);

    CLI::App* factor = app.add_subcommand(
        "factor", "Gauss-sum totals over a trial set with classification");
    factor->add_option("--n", args.manifest.n, "Number to factor")->required();
    factor->add_option("--m-max", args.manifest.m_max, "Truncation order M")
        ->capture_default_str();
    factor->add_option("--strategy", args.manifest.strategy,
                       "Trial set: primes up to sqrt(n), or an integer range")
        ->check(CLI::IsMember({"primes", "range"}))
        ->capture_default_str();
    factor->add_option("--l-min", args.manifest.l_min, "Range start")
        ->capture_default_str();
    factor->add_option("--l-max", args.manifest.l_max, "Range end")
        ->capture_default_str();
    factor->add_option("--threshold", args.manifest.threshold,
                       "Classification threshold on |total|")
        ->capture_default_str();
    factor->add_flag("--include-trivial", args.manifest.include_trivial,
                     "Report l = 1 instead of dropping it");
    add_physics_options(factor, args);
    add_timing_options(factor, args);
    add_output_options(factor, args);

    CLI::App* contrast = app.add_subcommand(
        "contrast", "Factorization-pattern contrast V for each truncation");
    contrast->add_option("--n", args.manifest.n, "Number to factor")->required();
    contrast->add_option("--m-max", args.manifest.m_max, "Largest truncation order")
        ->capture_default_str();
    contrast->add_option("--strategy", args.manifest.strategy,
                         "Trial set: primes or range")
        ->check(CLI::IsMember({"primes", "range"}))
        ->capture_default_str();
    contrast->add_option("--l-min", args.manifest.l_min, "Range start")
        ->capture_default_str();
    contrast->add_option("--l-max", args.manifest.l_max, "Range end")
        ->capture_default_str();
    add_physics_options(contrast, args);
    add_timing_options(contrast, args);
    add_output_options(contrast, args);

    CLI::App* adapt = app.add_subcommand(
        "adapt-compare", "Factor-averaged beam-model traces with and without "
                         "pulse-length adaptation");
    adapt->add_option("--n", args.manifest.n, "Number to factor")->required();
    adapt->add_option("--m-max", args.manifest.m_max, "Largest summation index m")
        ->capture_default_str();
    adapt->add_option("--factors", args.manifest.factors,
                      "Divisors to average over (default 3 7 151 for n=263193)");
    add_physics_options(adapt, args);
    add_timing_options(adapt, args);
    add_output_options(adapt, args);

    CLI::App* schedule = app.add_subcommand(
        "schedule", "Export the pulse schedule for one (n, l, m)");
    schedule->add_option("--n", args.manifest.n, "Number to factor")->required();
    schedule->add_option("--l", args.manifest.l, "Trial factor")->required();
    schedule->add_option("--m-max", args.manifest.m_max, "Summation index m")
        ->capture_default_str();
    add_timing_options(schedule, args);
    add_output_options(schedule, args);

    CLI::App* primes = app.add_subcommand(
        "primes", "Trial primes up to floor(sqrt(n))");
    primes->add_option("--n", args.manifest.n, "Number to factor")->required();
    add_output_options(primes, args);

    CLI::App* rerun = app.add_subcommand(
        "rerun", "Replay a manifest and verify its recorded checksums");
    rerun->add_option("manifest", rerun_path, "Path to a .manifest.json")->required();
    rerun->add_flag("--write", rerun_write, "Rewrite the outputs after verifying");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rerun->parsed())
            return run_rerun(rerun_path, rerun_write);

        args.manifest.command = app.get_subcommands().front()->get_name();
        resolve_common(args);
        if (adapt->parsed() && args.manifest.factors.empty()) {
            if (args.manifest.n != 263193)
                throw std::domain_error(
                    "adapt-compare: --factors is required for this n");
            args.manifest.factors = {3, 7, 151};
        }
        if (adapt->parsed())
            args.manifest.mode = gaussfact::PhysicsMode::Beam;
        return emit(args.manifest);
    } catch (const gaussfact::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    }
}
