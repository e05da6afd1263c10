#pragma once

// Umbrella header pulling in the whole library.

#include "kernmap/cauchy.hpp"
#include "kernmap/config.hpp"
#include "kernmap/context.hpp"
#include "kernmap/curve.hpp"
#include "kernmap/geometry.hpp"
#include "kernmap/green.hpp"
#include "kernmap/harmonic.hpp"
#include "kernmap/interp.hpp"
#include "kernmap/io.hpp"
#include "kernmap/oracle.hpp"
#include "kernmap/path.hpp"
#include "kernmap/quadrature.hpp"
#include "kernmap/spectral.hpp"
#include "kernmap/szego.hpp"
#include "kernmap/types.hpp"
#include "kernmap/verify.hpp"
#include "kernmap/zerofind.hpp"
