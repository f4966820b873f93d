#pragma once

// Umbrella header: spectral seriation, classical MDS, exponential-kernel
// eigentheory, the cut-point voting model, and the roll-call pipeline.

#include "seriate/format.hpp"
#include "seriate/kernel.hpp"
#include "seriate/matrix.hpp"
#include "seriate/mds.hpp"
#include "seriate/pipeline.hpp"
#include "seriate/rollcall.hpp"
#include "seriate/roots.hpp"
#include "seriate/spectral.hpp"
#include "seriate/voting.hpp"
