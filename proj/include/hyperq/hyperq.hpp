#pragma once

#include "hyperq/core.hpp"
#include "hyperq/quadform.hpp"
#include "hyperq/dynamics.hpp"
#include "hyperq/spectral.hpp"
#include "hyperq/graphcut.hpp"
#include "hyperq/oracle.hpp"
#include "hyperq/synthesis.hpp"
#include "hyperq/geometry.hpp"
#include "hyperq/io.hpp"
#include "hyperq/report.hpp"
