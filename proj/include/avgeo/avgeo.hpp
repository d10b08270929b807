#pragma once

// Umbrella header for the avgeo library.

#include "avgeo/affspace.hpp"
#include "avgeo/algebroids.hpp"
#include "avgeo/avbrackets.hpp"
#include "avgeo/avbundle.hpp"
#include "avgeo/chart.hpp"
#include "avgeo/engine.hpp"
#include "avgeo/frame_algebroid.hpp"
#include "avgeo/linalg.hpp"
#include "avgeo/mechanics.hpp"
#include "avgeo/poly.hpp"
#include "avgeo/rational.hpp"
#include "avgeo/report.hpp"
#include "avgeo/tensor.hpp"
#include "avgeo/verification.hpp"
