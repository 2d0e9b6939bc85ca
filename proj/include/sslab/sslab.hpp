#pragma once

// Umbrella header.

#include "sslab/bench.hpp"
#include "sslab/color_coding.hpp"
#include "sslab/core.hpp"
#include "sslab/instance.hpp"
#include "sslab/prefix_restricted.hpp"
#include "sslab/solver.hpp"
#include "sslab/submult.hpp"
#include "sslab/sumset.hpp"
#include "sslab/types.hpp"
#include "sslab/unbounded.hpp"
#include "sslab/util.hpp"
