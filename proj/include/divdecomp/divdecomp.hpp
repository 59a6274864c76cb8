#pragma once

// Umbrella header: arithmetic sieves and summatories, the error-term
// decomposition engine, zeta/Dirichlet/Mellin verification, growth scans,
// report I/O.

#include "divdecomp/constants.hpp"
#include "divdecomp/decompose.hpp"
#include "divdecomp/dirichlet.hpp"
#include "divdecomp/growth.hpp"
#include "divdecomp/int128.hpp"
#include "divdecomp/io.hpp"
#include "divdecomp/kahan.hpp"
#include "divdecomp/mellin.hpp"
#include "divdecomp/seeds.hpp"
#include "divdecomp/sieve.hpp"
#include "divdecomp/summatory.hpp"
#include "divdecomp/zeta.hpp"
