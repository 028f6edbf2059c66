#pragma once

#include "epm/simd_backend.hpp"

namespace epm {

const BatchOps& scalar_batch_ops();
const BatchOps& avx2_batch_ops();  // falls back to scalar off x86

}  // namespace epm
