#ifndef WDVV_WDVV_HPP
#define WDVV_WDVV_HPP

// Umbrella header: the whole library.

#include "core.hpp"
#include "driver.hpp"
#include "equivalence.hpp"
#include "families.hpp"
#include "legendre.hpp"
#include "linalg.hpp"
#include "sampling.hpp"
#include "specfn.hpp"

#endif
