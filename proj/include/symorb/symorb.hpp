#pragma once

#include "abelian.hpp"
#include "action.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "orbits.hpp"
#include "report.hpp"
#include "selftest.hpp"
#include "slice.hpp"
#include "spec_io.hpp"
#include "subgroup.hpp"
