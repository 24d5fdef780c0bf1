#ifndef SEPPATH_SEPPATH_HPP
#define SEPPATH_SEPPATH_HPP

#include "seppath/constructions.hpp"
#include "seppath/decomposition.hpp"
#include "seppath/exact.hpp"
#include "seppath/generators.hpp"
#include "seppath/graph.hpp"
#include "seppath/strategies.hpp"
#include "seppath/verification.hpp"

#endif  // SEPPATH_SEPPATH_HPP
