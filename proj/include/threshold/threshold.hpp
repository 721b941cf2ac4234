#pragma once

#include "threshold/cotree.hpp"
#include "threshold/diagonalize.hpp"
#include "threshold/errors.hpp"
#include "threshold/generators.hpp"
#include "threshold/io.hpp"
#include "threshold/oracle.hpp"
#include "threshold/recurrences.hpp"
#include "threshold/scalar.hpp"
#include "threshold/search.hpp"
#include "threshold/verify.hpp"
