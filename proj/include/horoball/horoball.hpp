#pragma once

#include "horoball/error.hpp"
#include "horoball/experiment.hpp"
#include "horoball/geometry.hpp"
#include "horoball/io.hpp"
#include "horoball/model.hpp"
#include "horoball/objective.hpp"
#include "horoball/oracle.hpp"
#include "horoball/reference.hpp"
#include "horoball/solver.hpp"
#include "horoball/space.hpp"
