#pragma once

#include "ktame/error.hpp"
#include "ktame/exactnum.hpp"
#include "ktame/localdata.hpp"
#include "ktame/tatecoh.hpp"
#include "ktame/kummer.hpp"
#include "ktame/ktable.hpp"
#include "ktame/genus.hpp"
#include "ktame/classify.hpp"
#include "ktame/quadforms.hpp"
