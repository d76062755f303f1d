#pragma once

#include "dmt/errors.hpp"
#include "dmt/femto_access.hpp"
#include "dmt/io.hpp"
#include "dmt/network_dmt.hpp"
#include "dmt/outage_mc.hpp"
#include "dmt/philox.hpp"
#include "dmt/piecewise_linear.hpp"
#include "dmt/rational.hpp"
