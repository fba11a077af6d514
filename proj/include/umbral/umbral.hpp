#ifndef UMBRAL_UMBRAL_HPP
#define UMBRAL_UMBRAL_HPP

#include "coefficient_field.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "evaluator.hpp"
#include "oracle.hpp"
#include "render.hpp"
#include "sympoly.hpp"
#include "umbral_engine.hpp"

#endif
