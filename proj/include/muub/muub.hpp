#pragma once

// Umbrella header for the muub library: construction, search and
// certification of mutually unbiased unitary bases on prime-dimensional
// operator spaces.

#include "muub/core.hpp"
#include "muub/weyl.hpp"
#include "muub/verify.hpp"
#include "muub/search.hpp"
#include "muub/choi.hpp"
#include "muub/monoid.hpp"
#include "muub/reference.hpp"
#include "muub/io.hpp"
