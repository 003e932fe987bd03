#pragma once

#include "biased.hpp"
#include "boolean_function.hpp"
#include "bounds.hpp"
#include "entropy.hpp"
#include "formula.hpp"
#include "lex.hpp"
#include "lipschitz.hpp"
#include "niho.hpp"
#include "profile.hpp"
#include "rational.hpp"
#include "search.hpp"
#include "spectrum.hpp"
