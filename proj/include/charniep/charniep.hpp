#pragma once

// Everything except the YAML group-file reader (group_file.hpp), which
// needs yaml-cpp.

#include "charniep/core.hpp"
#include "charniep/linalg.hpp"
#include "charniep/group.hpp"
#include "charniep/catalog.hpp"
#include "charniep/character_table.hpp"
#include "charniep/perron.hpp"
#include "charniep/geometry.hpp"
#include "charniep/extremal.hpp"
#include "charniep/format.hpp"
#include "charniep/verify.hpp"
