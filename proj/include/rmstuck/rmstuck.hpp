#pragma once

#include "rmstuck/bit_vector.hpp"
#include "rmstuck/codec.hpp"
#include "rmstuck/errors.hpp"
#include "rmstuck/harness.hpp"
#include "rmstuck/io.hpp"
#include "rmstuck/labeling.hpp"
#include "rmstuck/mask_set.hpp"
#include "rmstuck/reed_muller.hpp"
