#pragma once

// Umbrella header.

#include "catext/error.hpp"
#include "catext/integer.hpp"
#include "catext/matrix.hpp"
#include "catext/snf.hpp"
#include "catext/lattice.hpp"
#include "catext/abgrp.hpp"
#include "catext/fincat.hpp"
#include "catext/cobar.hpp"
#include "catext/extension.hpp"
#include "catext/padic.hpp"
#include "catext/adams.hpp"
#include "catext/psu.hpp"
#include "catext/json_io.hpp"
#include "catext/cli.hpp"
