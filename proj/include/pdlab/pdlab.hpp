#pragma once
// Umbrella header for the p-Dirichlet laboratory.

#include "pdlab/blending.hpp"
#include "pdlab/certify.hpp"
#include "pdlab/core.hpp"
#include "pdlab/energy.hpp"
#include "pdlab/fixtures.hpp"
#include "pdlab/graph.hpp"
#include "pdlab/partition.hpp"
#include "pdlab/scale.hpp"
#include "pdlab/solver.hpp"
#include "pdlab/suite.hpp"
#include "pdlab/whitney.hpp"
