#pragma once

#include "digitlab/analytic.hpp"
#include "digitlab/catalog.hpp"
#include "digitlab/digit_core.hpp"
#include "digitlab/genfun.hpp"
#include "digitlab/laurent_poly.hpp"
#include "digitlab/natural.hpp"
#include "digitlab/truncated_series.hpp"
