#pragma once

#include <nilcdga/acceptance_suite.hpp>
#include <nilcdga/check.hpp>
#include <nilcdga/cohomology.hpp>
#include <nilcdga/coordinate_model.hpp>
#include <nilcdga/dsl.hpp>
#include <nilcdga/exterior.hpp>
#include <nilcdga/group_action.hpp>
#include <nilcdga/lattice_bundle.hpp>
#include <nilcdga/massey.hpp>
#include <nilcdga/matrix.hpp>
#include <nilcdga/presets.hpp>
#include <nilcdga/report_json.hpp>
#include <nilcdga/scalar.hpp>
