#pragma once

#include "onmf/clustering.hpp"
#include "onmf/config.hpp"
#include "onmf/errors.hpp"
#include "onmf/init.hpp"
#include "onmf/io.hpp"
#include "onmf/matrix.hpp"
#include "onmf/normalize.hpp"
#include "onmf/objectives.hpp"
#include "onmf/solver.hpp"
#include "onmf/solvers_au.hpp"
#include "onmf/solvers_mu.hpp"
#include "onmf/trace.hpp"
