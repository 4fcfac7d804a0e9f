#pragma once

// Umbrella header: the whole laboratory in one include.

#include "drplab/drp_engine.hpp"
#include "drplab/drp_system.hpp"
#include "drplab/errors.hpp"
#include "drplab/ilc.hpp"
#include "drplab/linearization.hpp"
#include "drplab/ltv_analysis.hpp"
#include "drplab/pass_operator.hpp"
#include "drplab/picard.hpp"
#include "drplab/rng.hpp"
#include "drplab/sequences.hpp"
#include "drplab/signal.hpp"
#include "drplab/systems.hpp"
#include "drplab/time_grid.hpp"
#include "drplab/types.hpp"
