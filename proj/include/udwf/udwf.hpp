#pragma once

#include "udwf/errors.hpp"
#include "udwf/special.hpp"
#include "udwf/wightman.hpp"
#include "udwf/rates.hpp"
#include "udwf/qubit.hpp"
#include "udwf/oracle.hpp"
#include "udwf/sweep.hpp"
#include "udwf/verify.hpp"
