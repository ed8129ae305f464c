#pragma once

#include "wallislab/borwein.hpp"
#include "wallislab/decimal.hpp"
#include "wallislab/inequalities.hpp"
#include "wallislab/interval.hpp"
#include "wallislab/pi.hpp"
#include "wallislab/pi_scalar.hpp"
#include "wallislab/quadrature.hpp"
#include "wallislab/rational.hpp"
#include "wallislab/report.hpp"
#include "wallislab/sequences.hpp"
#include "wallislab/version.hpp"
