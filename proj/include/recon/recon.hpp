#pragma once

#include "recon/errors.hpp"
#include "recon/graph.hpp"
#include "recon/cotree.hpp"
#include "recon/chordal.hpp"
#include "recon/dp.hpp"
#include "recon/witness.hpp"
#include "recon/oracle.hpp"
#include "recon/io.hpp"
