#pragma once

// Umbrella header.

#include "topkit/errors.hpp"
#include "topkit/ingest.hpp"
#include "topkit/metrics.hpp"
#include "topkit/perf.hpp"
#include "topkit/svg.hpp"
#include "topkit/table.hpp"
