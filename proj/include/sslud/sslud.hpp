#pragma once

#include "sslud/analysis.hpp"
#include "sslud/baselines.hpp"
#include "sslud/distribution.hpp"
#include "sslud/error.hpp"
#include "sslud/estimation.hpp"
#include "sslud/numerics.hpp"
#include "sslud/sample.hpp"
#include "sslud/simstudy.hpp"
#include "sslud/table.hpp"
