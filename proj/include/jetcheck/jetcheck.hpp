#pragma once

#include "jetcheck/errors.hpp"
#include "jetcheck/experiments.hpp"
#include "jetcheck/fredholm.hpp"
#include "jetcheck/jets.hpp"
#include "jetcheck/json_io.hpp"
#include "jetcheck/matrix.hpp"
#include "jetcheck/minimal.hpp"
#include "jetcheck/multiindex.hpp"
#include "jetcheck/polynomial.hpp"
#include "jetcheck/rational.hpp"
#include "jetcheck/rng.hpp"
#include "jetcheck/strata.hpp"
#include "jetcheck/suite.hpp"
#include "jetcheck/version.hpp"
