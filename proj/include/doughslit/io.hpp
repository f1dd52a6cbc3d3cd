#ifndef DOUGHSLIT_IO_HPP
#define DOUGHSLIT_IO_HPP

#include "doughslit/io/binary.hpp"
#include "doughslit/io/csv.hpp"
#include "doughslit/io/dataset.hpp"
#include "doughslit/io/image.hpp"
#include "doughslit/io/keyvalue.hpp"
#include "doughslit/io/sim_config.hpp"

#endif  // DOUGHSLIT_IO_HPP
