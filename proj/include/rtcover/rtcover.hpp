#pragma once

// Umbrella header for the whole toolkit.

#include "rtcover/array.hpp"
#include "rtcover/bounds.hpp"
#include "rtcover/code.hpp"
#include "rtcover/constructions.hpp"
#include "rtcover/errors.hpp"
#include "rtcover/field.hpp"
#include "rtcover/metric.hpp"
#include "rtcover/numeric.hpp"
#include "rtcover/poset.hpp"
#include "rtcover/search.hpp"
