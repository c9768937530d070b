#ifndef CUSPBASE_CUSPBASE_HPP
#define CUSPBASE_CUSPBASE_HPP

#include <cuspbase/basis.hpp>
#include <cuspbase/catalog.hpp>
#include <cuspbase/catalog_io.hpp>
#include <cuspbase/dimensions.hpp>
#include <cuspbase/eisenstein.hpp>
#include <cuspbase/errors.hpp>
#include <cuspbase/eta.hpp>
#include <cuspbase/exponent.hpp>
#include <cuspbase/expr.hpp>
#include <cuspbase/qseries.hpp>
#include <cuspbase/rational.hpp>
#include <cuspbase/structure.hpp>
#include <cuspbase/verify.hpp>
#include <cuspbase/weierstrass.hpp>

#endif
