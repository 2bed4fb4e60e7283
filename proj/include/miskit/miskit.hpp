#pragma once

#include "miskit/bench.hpp"
#include "miskit/capacity.hpp"
#include "miskit/decode.hpp"
#include "miskit/exact.hpp"
#include "miskit/features.hpp"
#include "miskit/gcn.hpp"
#include "miskit/graph.hpp"
#include "miskit/io.hpp"
#include "miskit/pipelines.hpp"
#include "miskit/qubo.hpp"
#include "miskit/rng.hpp"
