#pragma once

// Everything: exact matrices, quivers, representation categories, complexes,
// derived categories, induced derived functors and the text formats.
#include "qha/scalar.hpp"
#include "qha/matrix.hpp"
#include "qha/rng.hpp"
#include "qha/quiver.hpp"
#include "qha/category.hpp"
#include "qha/rep.hpp"
#include "qha/random.hpp"
#include "qha/functor.hpp"
#include "qha/complex.hpp"
#include "qha/derived.hpp"
#include "qha/induced.hpp"
#include "qha/text_io.hpp"
