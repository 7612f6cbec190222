#pragma once

// Exact computation of the first cohomology of sl(2) acting on n-ary
// differential operators between weighted-density modules on the line:
// dimensions, explicit cocycle bases, the aff(1)-relative variant, and an
// independent truncated brute-force cross-check.

#include "densicohom/cohomology.hpp"
#include "densicohom/errors.hpp"
#include "densicohom/exactlin.hpp"
#include "densicohom/json_io.hpp"
#include "densicohom/multiindex.hpp"
#include "densicohom/oracle.hpp"
#include "densicohom/params.hpp"
#include "densicohom/poly.hpp"
#include "densicohom/rational.hpp"
#include "densicohom/symcalc.hpp"
