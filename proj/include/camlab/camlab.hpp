#pragma once

#include "camlab/errors.hpp"
#include "camlab/sphere.hpp"
#include "camlab/polynomial.hpp"
#include "camlab/quadrature.hpp"
#include "camlab/reduction.hpp"
#include "camlab/moment.hpp"
#include "camlab/displaceability.hpp"
#include "camlab/profile.hpp"
#include "camlab/quasi_state.hpp"
#include "camlab/config.hpp"
#include "camlab/report.hpp"
#include "camlab/commands.hpp"
