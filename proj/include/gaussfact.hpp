#pragma once

// Umbrella header: factoring via truncated Gauss sums plus the Ramsey
// pulse-sequence machinery that realizes them.

#include "gaussfact/beam.hpp"
#include "gaussfact/errors.hpp"
#include "gaussfact/experiment.hpp"
#include "gaussfact/gauss_core.hpp"
#include "gaussfact/manifest.hpp"
#include "gaussfact/modular.hpp"
#include "gaussfact/phase.hpp"
#include "gaussfact/quadrature.hpp"
#include "gaussfact/runner.hpp"
#include "gaussfact/schedule.hpp"
#include "gaussfact/two_level.hpp"
