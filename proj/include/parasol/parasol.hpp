#pragma once

#include "parasol/interval.hpp"
#include "parasol/imatrix.hpp"
#include "parasol/mesh.hpp"
#include "parasol/quadrature.hpp"
#include "parasol/poly2.hpp"
#include "parasol/hermite.hpp"
#include "parasol/problem.hpp"
#include "parasol/spacetime_poly.hpp"
#include "parasol/coefficient_field.hpp"
#include "parasol/tensor_basis.hpp"
#include "parasol/verified_linalg.hpp"
#include "parasol/constants.hpp"
#include "parasol/reference_solver.hpp"
#include "parasol/verifier.hpp"
