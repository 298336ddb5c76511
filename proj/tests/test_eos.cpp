#include <doctest.h>

#include "axeuler/analysis.hpp"
