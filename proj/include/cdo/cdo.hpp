#ifndef CDO_CDO_HPP
#define CDO_CDO_HPP

#include "cdo/core.hpp"
#include "cdo/domains.hpp"
#include "cdo/harness.hpp"
#include "cdo/io.hpp"
#include "cdo/randomgen.hpp"
#include "cdo/rules.hpp"
#include "cdo/scoring.hpp"
#include "cdo/solver.hpp"
#include "cdo/translate.hpp"

#endif  // CDO_CDO_HPP
