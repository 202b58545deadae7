#pragma once

#include "protoalg/algebra.hpp"
#include "protoalg/check.hpp"
#include "protoalg/constructions.hpp"
#include "protoalg/dsl.hpp"
#include "protoalg/error.hpp"
#include "protoalg/group_bridge.hpp"
#include "protoalg/search.hpp"
#include "protoalg/sections.hpp"
#include "protoalg/structures.hpp"
#include "protoalg/suites.hpp"
#include "protoalg/term.hpp"
#include "protoalg/verification.hpp"
