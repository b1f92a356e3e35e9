#pragma once

#include "cayley/abelian.hpp"
#include "cayley/brute_iso.hpp"
#include "cayley/budget.hpp"
#include "cayley/canonization.hpp"
#include "cayley/catalog.hpp"
#include "cayley/central.hpp"
#include "cayley/decomposition.hpp"
#include "cayley/element_set.hpp"
#include "cayley/error.hpp"
#include "cayley/generation.hpp"
#include "cayley/group_ops.hpp"
#include "cayley/perm.hpp"
#include "cayley/permgroup.hpp"
#include "cayley/table.hpp"
#include "cayley/wl.hpp"
