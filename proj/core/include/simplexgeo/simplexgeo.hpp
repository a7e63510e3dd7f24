#pragma once

#include "simplexgeo/connections.hpp"
#include "simplexgeo/error.hpp"
#include "simplexgeo/flows.hpp"
#include "simplexgeo/hamiltonian.hpp"
#include "simplexgeo/metrics.hpp"
#include "simplexgeo/sequence.hpp"
#include "simplexgeo/transforms.hpp"
