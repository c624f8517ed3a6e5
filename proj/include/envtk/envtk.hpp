// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "envtk/blackwell.hpp"
#include "envtk/envelope.hpp"
#include "envtk/errors.hpp"
#include "envtk/grid_fn.hpp"
#include "envtk/info_market.hpp"
#include "envtk/payment.hpp"
#include "envtk/rng.hpp"
#include "envtk/screening.hpp"
#include "envtk/serialize.hpp"
#include "envtk/simplex.hpp"
#include "envtk/tolerance.hpp"
