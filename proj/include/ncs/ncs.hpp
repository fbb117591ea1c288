// ncs.hpp - umbrella header.
#pragma once

#include "ncs/codes.hpp"
#include "ncs/energy.hpp"
#include "ncs/errors.hpp"
#include "ncs/galois.hpp"
#include "ncs/json_io.hpp"
#include "ncs/matrix.hpp"
#include "ncs/repair.hpp"
#include "ncs/simulate.hpp"
#include "ncs/storage.hpp"
#include "ncs/topology.hpp"
