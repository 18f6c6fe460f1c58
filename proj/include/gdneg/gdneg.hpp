// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gdneg/bloch.hpp"
#include "gdneg/commands.hpp"
#include "gdneg/error.hpp"
#include "gdneg/families.hpp"
#include "gdneg/io.hpp"
#include "gdneg/matrix.hpp"
#include "gdneg/measures.hpp"
#include "gdneg/sampling.hpp"
#include "gdneg/spectrum.hpp"
#include "gdneg/state.hpp"
#include "gdneg/su_generators.hpp"
