#pragma once

// Umbrella header for the whole library.

#include "cogcat/bignat.hpp"
#include "cogcat/category.hpp"
#include "cogcat/dsl.hpp"
#include "cogcat/dynamics.hpp"
#include "cogcat/evaluator.hpp"
#include "cogcat/ga.hpp"
#include "cogcat/generator.hpp"
#include "cogcat/refinement.hpp"
#include "cogcat/solver.hpp"
#include "cogcat/turing.hpp"
