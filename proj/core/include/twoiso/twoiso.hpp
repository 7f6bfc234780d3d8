#pragma once

#include "twoiso/analysis.hpp"
#include "twoiso/errors.hpp"
#include "twoiso/function_spaces.hpp"
#include "twoiso/json_io.hpp"
#include "twoiso/operator.hpp"
#include "twoiso/random.hpp"
#include "twoiso/weighted_space.hpp"
