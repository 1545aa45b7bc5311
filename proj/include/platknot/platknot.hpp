#pragma once

#include "platknot/error.hpp"
#include "platknot/text.hpp"
#include "platknot/group.hpp"
#include "platknot/automorphism.hpp"
#include "platknot/extension.hpp"
#include "platknot/rubik.hpp"
#include "platknot/diagram.hpp"
#include "platknot/braid.hpp"
#include "platknot/hurwitz.hpp"
#include "platknot/coloring.hpp"
#include "platknot/orbits.hpp"
#include "platknot/density.hpp"
#include "platknot/alphabet.hpp"
#include "platknot/gadget.hpp"
#include "platknot/gadget_search.hpp"
#include "platknot/zsat.hpp"
#include "platknot/compile.hpp"
