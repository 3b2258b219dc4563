#pragma once

#include "staircase/blocks.hpp"
#include "staircase/compress.hpp"
#include "staircase/consimilarity.hpp"
#include "staircase/errors.hpp"
#include "staircase/io.hpp"
#include "staircase/matrix.hpp"
#include "staircase/mixed_equivalence.hpp"
#include "staircase/report.hpp"
#include "staircase/svd.hpp"
#include "staircase/testgen.hpp"
