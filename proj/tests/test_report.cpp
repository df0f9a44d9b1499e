#include "heckemod/report.hpp"
#include "doctest.h"
