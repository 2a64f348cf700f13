#pragma once

#include "sympack/acs.hpp"
#include "sympack/forms.hpp"
#include "sympack/homology.hpp"
#include "sympack/involution.hpp"
#include "sympack/packing.hpp"
#include "sympack/projective.hpp"
#include "sympack/pullback.hpp"
#include "sympack/radial.hpp"
#include "sympack/verify.hpp"
