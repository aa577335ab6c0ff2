#pragma once

// Two-sample covariance equality testing with modified Pillai trace
// statistics, their null CLT corrections, the limiting-spectrum reference
// oracle, and a Monte Carlo size/power harness.

#include "betatest/asymptotics.hpp"
#include "betatest/covariance.hpp"
#include "betatest/csv.hpp"
#include "betatest/design.hpp"
#include "betatest/errors.hpp"
#include "betatest/esd.hpp"
#include "betatest/experiment.hpp"
#include "betatest/gof.hpp"
#include "betatest/kurtosis.hpp"
#include "betatest/math.hpp"
#include "betatest/models.hpp"
#include "betatest/parallel.hpp"
#include "betatest/pillai.hpp"
#include "betatest/report_json.hpp"
#include "betatest/rng.hpp"
#include "betatest/version.hpp"
