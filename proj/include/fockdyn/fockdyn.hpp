#pragma once

// Umbrella header.

#include "approx.hpp"
#include "basis.hpp"
#include "classify.hpp"
#include "combinatorics.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "multi_index.hpp"
#include "orbit.hpp"
#include "polynomial.hpp"
#include "projection.hpp"
#include "relations.hpp"
#include "spectral.hpp"
#include "symbol.hpp"
#include "truncation.hpp"
