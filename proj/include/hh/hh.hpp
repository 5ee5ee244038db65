#pragma once

#include "hh/error.hpp"
#include "hh/numeric.hpp"
#include "hh/field.hpp"
#include "hh/eisenstein.hpp"
#include "hh/charsum.hpp"
#include "hh/hypergeometric.hpp"
#include "hh/elliptic.hpp"
#include "hh/class_number.hpp"
#include "hh/hecke.hpp"
#include "hh/modularity.hpp"
#include "hh/parallel.hpp"
#include "hh/verify.hpp"
