#pragma once

// Core library. The formats and command-line layer (document.hpp,
// dimacs.hpp, report.hpp, cli.hpp) is included separately.

#include "fairdiv/cnf.hpp"
#include "fairdiv/eef_reduction.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/leximin.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/po_reduction.hpp"
#include "fairdiv/polarity.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/reduction_map.hpp"
#include "fairdiv/search.hpp"
#include "fairdiv/utility.hpp"
#include "fairdiv/weights.hpp"
