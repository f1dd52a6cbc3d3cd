#ifndef DOUGHSLIT_DOUGH_HPP
#define DOUGHSLIT_DOUGH_HPP

#include "doughslit/dough/config.hpp"
#include "doughslit/dough/model.hpp"
#include "doughslit/dough/rng.hpp"
#include "doughslit/dough/simulate.hpp"

#endif  // DOUGHSLIT_DOUGH_HPP
