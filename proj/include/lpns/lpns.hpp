#pragma once

#include "lpns/error.hpp"
#include "lpns/grid.hpp"
#include "lpns/field.hpp"
#include "lpns/fft.hpp"
#include "lpns/spectral.hpp"
#include "lpns/cutoff.hpp"
#include "lpns/littlewood_paley.hpp"
#include "lpns/paraproduct.hpp"
#include "lpns/flow.hpp"
#include "lpns/solver.hpp"
#include "lpns/initial_data.hpp"
#include "lpns/monitor.hpp"
#include "lpns/ensemble.hpp"
#include "lpns/inequality_lab.hpp"
#include "lpns/norm_spec.hpp"
#include "lpns/afld.hpp"
#include "lpns/run_config.hpp"
#include "lpns/commands.hpp"
