#pragma once

// Umbrella header: the exact Z_k-graded Grassmann / Biedenharn-Macfarlane
// q-oscillator engine.

#include "qgrass/berezin.hpp"
#include "qgrass/cli.hpp"
#include "qgrass/cyclotomic.hpp"
#include "qgrass/error.hpp"
#include "qgrass/eval.hpp"
#include "qgrass/expr.hpp"
#include "qgrass/grassmann.hpp"
#include "qgrass/matrix.hpp"
#include "qgrass/oscillator.hpp"
#include "qgrass/polynomial.hpp"
#include "qgrass/radical.hpp"
#include "qgrass/rational.hpp"
#include "qgrass/report.hpp"
#include "qgrass/representatives.hpp"
