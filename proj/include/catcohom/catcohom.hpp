#pragma once

#include "catcohom/error.hpp"
#include "catcohom/int_matrix.hpp"
#include "catcohom/smith.hpp"
#include "catcohom/homology.hpp"
#include "catcohom/fincat.hpp"
#include "catcohom/nerve.hpp"
#include "catcohom/diagram.hpp"
#include "catcohom/cohomology.hpp"
#include "catcohom/kan.hpp"
#include "catcohom/criteria.hpp"
#include "catcohom/text_format.hpp"
