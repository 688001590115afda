#pragma once

#include "skolem/constructions.hpp"
#include "skolem/error.hpp"
#include "skolem/json_io.hpp"
#include "skolem/modnt.hpp"
#include "skolem/search.hpp"
#include "skolem/starters.hpp"
