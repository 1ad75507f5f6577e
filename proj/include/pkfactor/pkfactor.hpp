#ifndef PKFACTOR_PKFACTOR_HPP
#define PKFACTOR_PKFACTOR_HPP

// Umbrella header: factoring univariate polynomials modulo p^k (k <= 4),
// root finding over F_p[x]/<phi^ell>, lift enumeration, and the
// brute-force oracle used to verify all of it.

#include "pkfactor/factor.hpp"
#include "pkfactor/hensel.hpp"
#include "pkfactor/k4_solver.hpp"
#include "pkfactor/oracle.hpp"
#include "pkfactor/parse.hpp"
#include "pkfactor/reduction.hpp"
#include "pkfactor/rep_roots.hpp"
#include "pkfactor/residue_field.hpp"
#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

#endif  // PKFACTOR_PKFACTOR_HPP
