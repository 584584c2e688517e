#pragma once

// Numerical laboratory for metric spectral triples on noncommutative
// solenoids and quantum tori: exact arithmetic for the groups (p^-n Z)^d,
// Clifford generators, twisted group algebra compressions, truncated Dirac
// operators, Lipschitz seminorms, Connes distances and Fejer/convergence
// diagnostics.

#include "solenoid/ball.hpp"
#include "solenoid/clifford.hpp"
#include "solenoid/common.hpp"
#include "solenoid/convergence.hpp"
#include "solenoid/dirac.hpp"
#include "solenoid/distance.hpp"
#include "solenoid/fejer.hpp"
#include "solenoid/norms.hpp"
#include "solenoid/padic.hpp"
#include "solenoid/serialize.hpp"
#include "solenoid/state.hpp"
#include "solenoid/twisted.hpp"
