#pragma once

#include "apolarity.hpp"
#include "decomp.hpp"
#include "flatten.hpp"
#include "highest_weight.hpp"
#include "tables.hpp"
#include "tensorspace.hpp"
