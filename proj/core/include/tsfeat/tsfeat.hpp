#pragma once

#include "tsfeat/baselines.hpp"
#include "tsfeat/catalog.hpp"
#include "tsfeat/experiment.hpp"
#include "tsfeat/feature_matrix.hpp"
#include "tsfeat/feature_value.hpp"
#include "tsfeat/features.hpp"
#include "tsfeat/lda.hpp"
#include "tsfeat/selection.hpp"
#include "tsfeat/timeseries.hpp"
#include "tsfeat/transforms.hpp"
#include "tsfeat/ucr.hpp"
