#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "lattice.hpp"
#include "poly1.hpp"
#include "poly2.hpp"
#include "field.hpp"
#include "parse.hpp"
#include "polytope.hpp"
#include "fan.hpp"
#include "compactify.hpp"
#include "ode.hpp"
#include "quadrature.hpp"
#include "trig.hpp"
#include "infinity.hpp"
#include "io.hpp"
#include "portrait.hpp"
