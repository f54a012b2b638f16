#pragma once

#include "carto/core_geo.hpp"
#include "carto/projections.hpp"
#include "carto/projection_string.hpp"
#include "carto/distortion.hpp"
#include "carto/conic_design.hpp"
#include "carto/project_polyline.hpp"
#include "carto/geodesic_lines.hpp"
#include "carto/graticule.hpp"
#include "carto/gazetteer.hpp"
#include "carto/svg_render.hpp"
