#pragma once

// Umbrella header: the whole toolkit.

#include "cardinal/c2.hpp"
#include "cardinal/domino.hpp"
#include "cardinal/interpretation.hpp"
#include "cardinal/model_finder.hpp"
#include "cardinal/parse.hpp"
#include "cardinal/reductions.hpp"
#include "cardinal/surface.hpp"
#include "cardinal/syntax.hpp"
#include "cardinal/torus.hpp"
