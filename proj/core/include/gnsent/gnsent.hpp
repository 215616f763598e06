#pragma once

#include "gnsent/algebra.hpp"
#include "gnsent/decomposition.hpp"
#include "gnsent/entropy.hpp"
#include "gnsent/error.hpp"
#include "gnsent/gns.hpp"
#include "gnsent/modular.hpp"
#include "gnsent/random.hpp"
#include "gnsent/states.hpp"
