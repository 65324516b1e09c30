#pragma once

#include "crnmss/classify.hpp"
#include "crnmss/defone.hpp"
#include "crnmss/dynamics.hpp"
#include "crnmss/error.hpp"
#include "crnmss/fourier_motzkin.hpp"
#include "crnmss/linalg.hpp"
#include "crnmss/lp.hpp"
#include "crnmss/model.hpp"
#include "crnmss/parser.hpp"
#include "crnmss/poly.hpp"
#include "crnmss/rational.hpp"
#include "crnmss/report.hpp"
#include "crnmss/structure.hpp"
#include "crnmss/verdict.hpp"
