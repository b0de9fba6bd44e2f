#pragma once

#include "nscolor/color.hpp"
#include "nscolor/corrections.hpp"
#include "nscolor/dataset.hpp"
#include "nscolor/ellipse.hpp"
#include "nscolor/errors.hpp"
#include "nscolor/formulas.hpp"
#include "nscolor/io.hpp"
#include "nscolor/optimize.hpp"
#include "nscolor/serialize.hpp"
#include "nscolor/simplex.hpp"
#include "nscolor/stats.hpp"
#include "nscolor/svg.hpp"
