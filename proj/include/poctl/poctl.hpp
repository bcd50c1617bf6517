#pragma once

// Convenience header pulling in the whole library.

#include "poctl/checker.hpp"
#include "poctl/dot.hpp"
#include "poctl/enf.hpp"
#include "poctl/errors.hpp"
#include "poctl/formula.hpp"
#include "poctl/fuzzy.hpp"
#include "poctl/kripke.hpp"
#include "poctl/oracle.hpp"
#include "poctl/parser.hpp"
#include "poctl/possibility.hpp"
