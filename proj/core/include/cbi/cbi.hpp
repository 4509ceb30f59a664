// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CBI_CBI_HPP
#define CBI_CBI_HPP

#include "cbi/error.hpp"
#include "cbi/hfix.hpp"
#include "cbi/model.hpp"
#include "cbi/oracle.hpp"
#include "cbi/planner.hpp"
#include "cbi/solver.hpp"

#endif  // CBI_CBI_HPP
