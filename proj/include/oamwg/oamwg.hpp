#pragma once

#include "oamwg/cascade.hpp"
#include "oamwg/constants.hpp"
#include "oamwg/errors.hpp"
#include "oamwg/excitation.hpp"
#include "oamwg/modes.hpp"
#include "oamwg/oam.hpp"
#include "oamwg/specfun.hpp"
