#pragma once

#include "gravprobe/models/finite_well.hpp"
#include "gravprobe/models/free_particle.hpp"
#include "gravprobe/models/harmonic.hpp"
#include "gravprobe/models/infinite_well.hpp"
