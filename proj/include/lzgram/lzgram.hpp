#pragma once

#include "bisection.hpp"
#include "cnf.hpp"
#include "common.hpp"
#include "grammar.hpp"
#include "lz77.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "rand_access.hpp"
#include "refine.hpp"
#include "tape_sim.hpp"
