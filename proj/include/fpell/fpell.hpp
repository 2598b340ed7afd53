#pragma once

/// Umbrella header.

#include "fpell/catalog.hpp"
#include "fpell/commands.hpp"
#include "fpell/error.hpp"
#include "fpell/expr.hpp"
#include "fpell/field.hpp"
#include "fpell/homalg.hpp"
#include "fpell/parse.hpp"
#include "fpell/presentation.hpp"
#include "fpell/quotient.hpp"
#include "fpell/random.hpp"
#include "fpell/report.hpp"
#include "fpell/resolution.hpp"
#include "fpell/series.hpp"
#include "fpell/spectral.hpp"
#include "fpell/structure.hpp"
#include "fpell/tri.hpp"
