#pragma once

#include "vortexsr/classical.hpp"
#include "vortexsr/common.hpp"
#include "vortexsr/electron_state.hpp"
#include "vortexsr/flux_report.hpp"
#include "vortexsr/laguerre_oracle.hpp"
#include "vortexsr/quantum_flux.hpp"
#include "vortexsr/special_functions.hpp"
#include "vortexsr/transition.hpp"
#include "vortexsr/version.hpp"
