#ifndef DOUGHSLIT_ANALYSIS_HPP
#define DOUGHSLIT_ANALYSIS_HPP

#include "doughslit/analysis/graph.hpp"
#include "doughslit/analysis/histogram.hpp"
#include "doughslit/analysis/moments.hpp"
#include "doughslit/analysis/peaks.hpp"
#include "doughslit/analysis/similarity.hpp"

#endif  // DOUGHSLIT_ANALYSIS_HPP
