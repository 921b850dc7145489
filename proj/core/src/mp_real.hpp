#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "purity/eigensolve.hpp"

namespace purity::detail {

using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kExtendedDigits>,
                                             boost::multiprecision::et_off>;

}  // namespace purity::detail
