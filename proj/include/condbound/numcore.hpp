#ifndef CONDBOUND_NUMCORE_HPP
#define CONDBOUND_NUMCORE_HPP

#include "condbound/numcore/bigint.hpp"
#include "condbound/numcore/char_poly.hpp"
#include "condbound/numcore/eigen.hpp"
#include "condbound/numcore/errors.hpp"
#include "condbound/numcore/exact_solve.hpp"
#include "condbound/numcore/ext_real.hpp"
#include "condbound/numcore/matrix.hpp"
#include "condbound/numcore/poly_roots.hpp"
#include "condbound/numcore/polynomial.hpp"

#endif  // CONDBOUND_NUMCORE_HPP
