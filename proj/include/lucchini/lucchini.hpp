#pragma once

// Everything except the CLI front end (which needs CLI11).

#include "lucchini/catalog.hpp"
#include "lucchini/config.hpp"
#include "lucchini/errors.hpp"
#include "lucchini/group.hpp"
#include "lucchini/order_expr.hpp"
#include "lucchini/perm.hpp"
#include "lucchini/tower.hpp"
#include "lucchini/verify.hpp"
#include "lucchini/wreath.hpp"
