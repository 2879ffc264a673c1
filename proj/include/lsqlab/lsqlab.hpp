#pragma once

#include "lsqlab/arith.hpp"
#include "lsqlab/checkpoint.hpp"
#include "lsqlab/csv.hpp"
#include "lsqlab/errors.hpp"
#include "lsqlab/lattice.hpp"
#include "lsqlab/records.hpp"
#include "lsqlab/semigroup.hpp"
#include "lsqlab/survey.hpp"
