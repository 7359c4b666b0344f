#pragma once

#include "splitgap/field.hpp"
#include "splitgap/exactla.hpp"
#include "splitgap/lattice.hpp"
#include "splitgap/binform.hpp"
#include "splitgap/planeform.hpp"
#include "splitgap/param.hpp"
#include "splitgap/splitting.hpp"
#include "splitgap/fatpoints.hpp"
#include "splitgap/conjscan.hpp"
#include "splitgap/io.hpp"
#include "splitgap/cli.hpp"
