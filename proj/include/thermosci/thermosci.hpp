#pragma once

#include "thermosci/bounds.hpp"
#include "thermosci/contour.hpp"
#include "thermosci/cycle_sim.hpp"
#include "thermosci/error.hpp"
#include "thermosci/info_core.hpp"
#include "thermosci/strategies.hpp"
#include "thermosci/toy_model.hpp"
