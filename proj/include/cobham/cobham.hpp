#pragma once

// Umbrella header for the whole library.

#include "cobham/circularity.hpp"
#include "cobham/errors.hpp"
#include "cobham/io.hpp"
#include "cobham/matrix.hpp"
#include "cobham/periodic.hpp"
#include "cobham/polynomial.hpp"
#include "cobham/relations.hpp"
#include "cobham/returns.hpp"
#include "cobham/spectrum.hpp"
#include "cobham/substitution.hpp"
#include "cobham/words.hpp"
