#pragma once

#include "magnomech/config.hpp"
#include "magnomech/matrix.hpp"
#include "magnomech/params.hpp"
#include "magnomech/polyroots.hpp"
#include "magnomech/presets.hpp"
#include "magnomech/spectrum.hpp"
#include "magnomech/stability.hpp"
#include "magnomech/steadystate.hpp"
#include "magnomech/sweep.hpp"
