#pragma once

#include "mla/error.hpp"
#include "mla/shape.hpp"
#include "mla/tensor.hpp"
#include "mla/linalg.hpp"
#include "mla/structure.hpp"
#include "mla/gen_inverse.hpp"
#include "mla/weighted_drazin.hpp"
#include "mla/solvers.hpp"
#include "mla/poisson.hpp"
#include "mla/identities.hpp"
#include "mla/io.hpp"
