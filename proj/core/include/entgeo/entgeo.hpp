#pragma once

#include "entgeo/convexgeo.hpp"
#include "entgeo/entdetect.hpp"
#include "entgeo/infochannel.hpp"
#include "entgeo/io.hpp"
#include "entgeo/qstate.hpp"
#include "entgeo/rng.hpp"
#include "entgeo/types.hpp"
