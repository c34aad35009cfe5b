#pragma once

#include "lnorm/error.hpp"
#include "lnorm/graycode.hpp"
#include "lnorm/matrix.hpp"
#include "lnorm/oracle.hpp"
#include "lnorm/preprocess.hpp"
#include "lnorm/scheduler.hpp"
#include "lnorm/solver.hpp"
#include "lnorm/work_range.hpp"
