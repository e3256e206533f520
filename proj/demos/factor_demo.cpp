// Minimal library walkthrough: factor one number, then look at the signal
// trace behind a factor peak under the beam model.

#include <cstdio>

#include "gaussfact.hpp"

int main()
{
    using namespace gaussfact;

    FactoringProblem problem;
    problem.n = 263193;
    problem.truncation = kDefaultTruncation;
    problem.trial_set = trial_factors(problem.n, TrialSpec::range(2, 200));

    RunEnvironment ideal;
    ideal.threads = 0;  // use all cores
    const FactorScan scan = run_factorization(problem, kDefaultThreshold, ideal);

    std::printf("n = %llu, trial factors %llu..%llu, M = %d\n",
                static_cast<unsigned long long>(problem.n), 2ull, 200ull,
                problem.truncation);
    std::printf("claimed factors:");
    for (const auto l : scan.classification.factors)
        std::printf(" %llu", static_cast<unsigned long long>(l));
    std::printf("\n\n");

    RunEnvironment beam;
    beam.mode = PhysicsMode::Beam;
    beam.physics.adaptation = Adaptation::Off;
    std::printf("beam-model trace at l = 151 (fixed pulse length):\n");
    const auto trace = signal_trace(problem.n, 151, problem.truncation, beam);
    for (std::size_t m = 0; m < trace.size(); ++m)
        std::printf("  c_%-2zu = %+.6f\n", m, trace[m]);
    return 0;
}
