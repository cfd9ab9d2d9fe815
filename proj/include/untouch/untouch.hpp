#pragma once

#include "gf.hpp"
#include "plane.hpp"
#include "conics.hpp"
#include "verify.hpp"
#include "constructions.hpp"
#include "search.hpp"
#include "json_io.hpp"
