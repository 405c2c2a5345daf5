#pragma once

#include "abundancy/arith.hpp"
#include "abundancy/constants.hpp"
#include "abundancy/factorization.hpp"
#include "abundancy/harmonic.hpp"
#include "abundancy/interval.hpp"
#include "abundancy/outlaw.hpp"
#include "abundancy/primes.hpp"
#include "abundancy/ratio.hpp"
#include "abundancy/robin.hpp"
#include "abundancy/sa_cache.hpp"
#include "abundancy/scan.hpp"
#include "abundancy/superabundant.hpp"
