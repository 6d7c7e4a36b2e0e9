#pragma once

#include "qga/amalgam.hpp"
#include "qga/descent.hpp"
#include "qga/error.hpp"
#include "qga/generators.hpp"
#include "qga/group.hpp"
#include "qga/op.hpp"
#include "qga/quasigroup.hpp"
#include "qga/rewriter.hpp"
#include "qga/rng.hpp"
#include "qga/sub_amalgam.hpp"
#include "qga/sweeps.hpp"
#include "qga/term.hpp"
