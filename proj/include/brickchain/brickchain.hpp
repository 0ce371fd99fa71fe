#pragma once

#include "brickchain/errors.hpp"
#include "brickchain/linalg.hpp"
#include "brickchain/quiver.hpp"
#include "brickchain/io.hpp"
#include "brickchain/hom.hpp"
#include "brickchain/endotop.hpp"
#include "brickchain/torsion.hpp"
#include "brickchain/filtration.hpp"
#include "brickchain/lattice.hpp"
#include "brickchain/fixtures.hpp"
