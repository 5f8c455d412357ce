#pragma once

#include "topopools/complex.hpp"
#include "topopools/errors.hpp"
#include "topopools/ksa.hpp"
#include "topopools/maps.hpp"
#include "topopools/pool_tasks.hpp"
#include "topopools/serialize.hpp"
#include "topopools/solvability.hpp"
#include "topopools/subdivision.hpp"
#include "topopools/vertex.hpp"
