#pragma once

#include "knotbound/alexander.hpp"
#include "knotbound/bound_engine.hpp"
#include "knotbound/error.hpp"
#include "knotbound/f2_matrix.hpp"
#include "knotbound/grid.hpp"
#include "knotbound/grid_homology.hpp"
#include "knotbound/hfk_table.hpp"
#include "knotbound/laurent_poly.hpp"
#include "knotbound/manifest.hpp"
#include "knotbound/max_flow.hpp"
#include "knotbound/pd_code.hpp"
#include "knotbound/session.hpp"
#include "knotbound/torsion_bounds.hpp"
#include "knotbound/twist.hpp"
