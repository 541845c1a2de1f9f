#ifndef STEKLOV_STEKLOV_HPP
#define STEKLOV_STEKLOV_HPP

#include "steklov/analysis.hpp"
#include "steklov/boundary.hpp"
#include "steklov/catalog.hpp"
#include "steklov/error.hpp"
#include "steklov/expression.hpp"
#include "steklov/geometry.hpp"
#include "steklov/io.hpp"
#include "steklov/parallel.hpp"
#include "steklov/properties.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/reference_tables.hpp"
#include "steklov/solvers.hpp"
#include "steklov/spectrum.hpp"
#include "steklov/tables.hpp"

#endif  // STEKLOV_STEKLOV_HPP
