#pragma once

#include "surfmmp/adjunction.hpp"
#include "surfmmp/cone.hpp"
#include "surfmmp/discrepancy.hpp"
#include "surfmmp/errors.hpp"
#include "surfmmp/exact_linalg.hpp"
#include "surfmmp/lattice.hpp"
#include "surfmmp/mmp.hpp"
#include "surfmmp/rational.hpp"
#include "surfmmp/riemann_roch.hpp"
