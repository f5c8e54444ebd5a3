#pragma once

#include "pss/rational.hpp"
#include "pss/exact_linalg.hpp"
#include "pss/polynomial.hpp"
#include "pss/relations.hpp"
#include "pss/fock.hpp"
#include "pss/verification.hpp"
