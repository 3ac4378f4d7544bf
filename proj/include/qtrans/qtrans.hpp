#pragma once

// Umbrella header: analytic transduction / distribution models, the
// quantum-state oracles, the Monte Carlo engine, and the file-format glue.

#include "qtrans/channel.hpp"
#include "qtrans/config_io.hpp"
#include "qtrans/detector.hpp"
#include "qtrans/errors.hpp"
#include "qtrans/fock.hpp"
#include "qtrans/herald.hpp"
#include "qtrans/montecarlo.hpp"
#include "qtrans/qubits.hpp"
#include "qtrans/report_io.hpp"
#include "qtrans/rng.hpp"
#include "qtrans/strategies.hpp"
#include "qtrans/sweep.hpp"
#include "qtrans/transducer.hpp"
