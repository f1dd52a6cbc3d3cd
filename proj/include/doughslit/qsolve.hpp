#ifndef DOUGHSLIT_QSOLVE_HPP
#define DOUGHSLIT_QSOLVE_HPP

#include "doughslit/qsolve/field.hpp"
#include "doughslit/qsolve/packet.hpp"
#include "doughslit/qsolve/potential.hpp"
#include "doughslit/qsolve/screen.hpp"
#include "doughslit/qsolve/solver.hpp"

#endif  // DOUGHSLIT_QSOLVE_HPP
