#ifndef ITERFRAC_ITERFRAC_HPP
#define ITERFRAC_ITERFRAC_HPP

#include "iterfrac/errors.hpp"
#include "iterfrac/scalar.hpp"
#include "iterfrac/series.hpp"
#include "iterfrac/bell.hpp"
#include "iterfrac/qcalc.hpp"
#include "iterfrac/triangle.hpp"
#include "iterfrac/iterate.hpp"
#include "iterfrac/itlog.hpp"
#include "iterfrac/oracles.hpp"
#include "iterfrac/json_io.hpp"
#include "iterfrac/validate.hpp"

#endif  // ITERFRAC_ITERFRAC_HPP
