#pragma once

#include "gwig/cli.hpp"
#include "gwig/closed_forms.hpp"
#include "gwig/config.hpp"
#include "gwig/delta_fields.hpp"
#include "gwig/grids.hpp"
#include "gwig/io.hpp"
#include "gwig/linalg.hpp"
#include "gwig/operators.hpp"
#include "gwig/verifier.hpp"
#include "gwig/weyl_core.hpp"
