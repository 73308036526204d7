#pragma once

// Steady-state entanglement and Barnett-shift nonreciprocity of a cavity
// magnomechanical system with an intracavity parametric amplifier.

#include "magnomech/config.hpp"
#include "magnomech/entanglement.hpp"
#include "magnomech/errors.hpp"
#include "magnomech/lyapunov.hpp"
#include "magnomech/matrices.hpp"
#include "magnomech/params.hpp"
#include "magnomech/pipeline.hpp"
#include "magnomech/presets.hpp"
#include "magnomech/steady_state.hpp"
#include "magnomech/sweep.hpp"
#include "magnomech/symplectic.hpp"
#include "magnomech/table.hpp"
#include "magnomech/units.hpp"
#include "magnomech/version.hpp"
#include "magnomech/worker_pool.hpp"
