#pragma once

#include "qtor/torep.hpp"

namespace qtor::detail {

void init_tables(LoopModule& M);
void finish_interior(LoopModule& M);

}  // namespace qtor::detail
